#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "closurelab/closure.hpp"
#include "closurelab/pregeometry.hpp"

namespace closurelab {

// True iff the iterated operators over d1 and d2 agree on every subset of
// the enumerated domain (acl-equivalence; acl_n-equivalence for bounded n).
bool operators_equivalent(const Structure& s, const std::vector<ParamFormula>& d1,
                          const std::vector<ParamFormula>& d2, Bound n,
                          int subset_cap = 14);

// Materializes the transitive-closure calculus up to `depth` rule
// applications: each application plugs formulas from the accumulated set
// into the parameter slots of a root formula from `delta`, binding the
// slots existentially. Depth 0 returns delta; the output always contains
// the input. Throws when the total output exceeds node_cap AST nodes.
std::vector<ParamFormula> compose_delta(const std::vector<ParamFormula>& delta, int depth,
                                        std::size_t node_cap = 10000);

// All conjunctions of at most max_conjuncts distinct literals (a delta
// member or its negation), parameters merged by name, deduplicated
// syntactically. Single positive literals are the original formulas.
std::vector<ParamFormula> boolean_closure(const std::vector<ParamFormula>& delta,
                                          int max_conjuncts, std::size_t node_cap = 10000);

struct LatticeOptions {
    int subset_cap = 14;
    bool adjoin_unbounded_acl = false;
    std::size_t max_elements = 64;
    std::size_t family_cap = 4096;
};

// Solution sets of every instance of the transitive-closure calculus over
// delta with leaf parameters in base: instance sets of delta itself, plus
// every set of the form U{ sol(psi, p) : p in S1 x ... x Sm } for psi in
// delta and S1..Sm already in the family. Cardinalities are not filtered;
// callers apply their own bound.
std::set<ElemSet> composed_instance_sets(const Structure& s,
                                         const std::vector<ParamFormula>& delta,
                                         const ElemSet& base,
                                         std::size_t family_cap = 4096);

// Greatest lower bound via the common-witnessed-set fixpoint. Both
// operands must be regular on the enumerated domain (throws otherwise).
ClosureOperator meet(const Structure& s, const ClosureOperator& op1,
                     const ClosureOperator& op2, const LatticeOptions& opts = {});

// Least upper bound: the fixpoint of alternating closures. Unbounded
// joins are always regular; at a finite bound the result is returned only
// when every element it adds is witnessed by a composed instance within
// the bound, else nullopt ("not representable", no join in SL_acl_n).
std::optional<ClosureOperator> join(const Structure& s, const ClosureOperator& op1,
                                    const ClosureOperator& op2,
                                    const LatticeOptions& opts = {});

enum class PosetMode { Semilattice, Lattice };

struct OperatorPoset {
    std::vector<ClosureOperator> elements;
    std::vector<std::string> names;             // display name per element
    std::vector<std::vector<ElemSet>> profiles;  // element x domain values
    SubsetDomain domain;
    std::vector<std::vector<char>> leq;
    std::vector<std::vector<int>> meet_table;  // glb index, -1 if absent
    std::vector<std::vector<int>> join_table;  // lub index, -1 if absent
    std::vector<std::pair<int, int>> hasse_edges;  // (lower, upper) covering pairs
    std::optional<int> least;
    std::optional<int> greatest;
    std::optional<bool> distributive;  // lattice mode only

    bool is_leq(int i, int j) const { return leq[static_cast<std::size_t>(i)]
                                                [static_cast<std::size_t>(j)] != 0; }
};

// Closes the seeds under meet (and join in lattice mode, where
// representable), always adjoining the bottom operator acl^{x = y}.
// Elements are identified extensionally over the enumerated domain; a
// user-provided seed name wins over synthetic names on merge. Non-regular
// seeds are rejected with the failing property named.
OperatorPoset build_poset(const Structure& s,
                          const std::vector<std::pair<std::string, std::vector<ParamFormula>>>& seeds,
                          PosetMode mode, Bound n, const LatticeOptions& opts = {});

struct LatticeStats {
    int height = 0;  // maximum chain cardinality (element count)
    int width = 0;   // maximum antichain cardinality
    std::optional<int> least;
    std::optional<int> greatest;
    std::optional<bool> distributive;
};

LatticeStats lattice_stats(const OperatorPoset& p);

// Deterministic DOT digraph: one node per operator (name plus a summary of
// its provenance), one edge per covering pair, bottom at the source rank.
std::string export_hasse_dot(const OperatorPoset& p);

}  // namespace closurelab
