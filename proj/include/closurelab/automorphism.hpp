#pragma once

#include <functional>
#include <vector>

#include "closurelab/element_set.hpp"
#include "closurelab/structure.hpp"

namespace closurelab {

// image[i] is the image of element i; always a bijection on {0..N-1}.
using Permutation = std::vector<int>;

struct AutomorphismLimits {
    // Full group enumeration is refused above this universe size.
    int max_universe = 24;
};

// Orbits of the pointwise stabilizer of `base`; blocks partition the
// universe and are ordered by least element. Every element of `base`
// sits in a singleton block.
struct OrbitPartition {
    ElemSet base;
    std::vector<ElemSet> blocks;

    const ElemSet& block_of(int element) const;
    std::size_t max_block_size() const;
};

// Definition check, independent of the search: bijectivity plus
// preservation of every relation tuple-set and every constant.
bool is_automorphism(const Structure& s, const Permutation& p);

// Enumerates every automorphism of s fixing `fixed` pointwise (and all
// constants), invoking fn for each; fn returning false stops the search.
void for_each_stabilizer(const Structure& s, const ElemSet& fixed,
                         const std::function<bool(const Permutation&)>& fn,
                         const AutomorphismLimits& limits = {});

// The full pointwise stabilizer, identity included.
std::vector<Permutation> stabilizer_group(const Structure& s, const ElemSet& fixed,
                                          const AutomorphismLimits& limits = {});

// Orbit partition of the universe under the stabilizer of `fixed`. Uses a
// union-find over the automorphisms as they are found, so the group is
// never materialized.
OrbitPartition orbits(const Structure& s, const ElemSet& fixed,
                      const AutomorphismLimits& limits = {});

// True iff the only automorphism is the identity.
bool is_rigid(const Structure& s, const AutomorphismLimits& limits = {});

}  // namespace closurelab
