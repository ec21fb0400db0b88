#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "closurelab/closure.hpp"

namespace closurelab {

struct AlgebraicSetReport {
    ElemSet base;    // A
    ElemSet target;  // B
    bool is_invariant = false;
    // The A-orbits contained in target; fills the target iff invariant.
    std::vector<ElemSet> orbit_decomposition;
    std::optional<int> deg_alg_u;  // max orbit size inside target; 0 for ∅
    // Syntactic witness (formula, parameter tuple) when delta mode found one.
    std::optional<std::pair<ParamFormula, std::vector<int>>> witness;
};

// Semantic mode (delta empty): B is A-algebraic iff it is a union of
// A-orbits (on a finite structure every A-invariant set is the solution
// set of a formula over A). Syntactic mode: additionally searches delta
// instances whose solution set is exactly B.
AlgebraicSetReport is_A_algebraic(const Structure& s, const ElemSet& a, const ElemSet& b,
                                  const std::vector<ParamFormula>& delta = {},
                                  const AutomorphismLimits& limits = {});

// All A-invariant subsets with at most max_size elements, ascending by
// size then lexicographically (∅ always included).
std::vector<ElemSet> enumerate_algebraic_sets(const Structure& s, const ElemSet& a,
                                              int max_size,
                                              const AutomorphismLimits& limits = {});

// Least n such that b is a union of A-invariant sets of size <= n; equals
// the maximum cardinality of an A-orbit inside b. nullopt when b is not
// A-invariant; 0 for the empty set.
std::optional<int> deg_alg_u(const Structure& s, const ElemSet& a, const ElemSet& b,
                             const AutomorphismLimits& limits = {});

// Max cardinality over A-orbits of size <= scope_bound (0 if none qualify).
int DEG_alg_u(const Structure& s, const ElemSet& a, int scope_bound,
              const AutomorphismLimits& limits = {});

}  // namespace closurelab
