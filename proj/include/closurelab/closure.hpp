#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "closurelab/automorphism.hpp"
#include "closurelab/element_set.hpp"
#include "closurelab/eval.hpp"
#include "closurelab/formula.hpp"
#include "closurelab/structure.hpp"

namespace closurelab {

// Solution-count bound: acl_n for bounded n, acl for unbounded.
// n = 1 is dcl. A solution set qualifies when it is nonempty and,
// for bounded n, has at most n elements.
struct Bound {
    std::optional<int> n;

    static Bound unbounded() { return Bound{}; }
    static Bound at(int k) { return Bound{k}; }

    bool is_unbounded() const { return !n.has_value(); }
    bool admits(std::size_t cardinality) const {
        return cardinality >= 1 && (!n || cardinality <= static_cast<std::size_t>(*n));
    }
    std::string label() const { return n ? std::to_string(*n) : "unbounded"; }
    bool operator==(const Bound&) const = default;
    // b1 <= b2 iff every b1-admissible cardinality is b2-admissible.
    bool leq(const Bound& other) const {
        return other.is_unbounded() || (!is_unbounded() && *n <= *other.n);
    }
};

// Union of the A-orbits of cardinality within `bound`, together with A
// itself (so bound 0 gives back A). Unbounded gives the whole universe.
ElemSet acl_semantic(const Structure& s, const ElemSet& a, Bound bound,
                     const AutomorphismLimits& limits = {});

// Fixed points of the pointwise stabilizer of a.
ElemSet dcl_semantic(const Structure& s, const ElemSet& a,
                     const AutomorphismLimits& limits = {});

// One step of the Delta-closure: the union of solution sets sol(phi, p)
// over phi in delta and parameter tuples p drawn from `base` (repetition
// allowed) whose cardinality the bound admits. Formulas with parameters
// contribute no instances over an empty base; zero-parameter formulas
// always contribute their one instance.
ElemSet delta_step(const Structure& s, const std::vector<ParamFormula>& delta,
                   const ElemSet& base, Bound bound, const EvalLimits& limits = {});

// iterate = false: one step. iterate = true: accumulate steps
// (X1 = step(A), X_{k+1} = X_k ∪ step(X_k)) until fixpoint, or for
// exactly max_rounds rounds when max_rounds >= 0.
ElemSet delta_closure(const Structure& s, const std::vector<ParamFormula>& delta,
                      const ElemSet& a, Bound bound, bool iterate,
                      int max_rounds = -1, const EvalLimits& limits = {});

ElemSet acl_delta(const Structure& s, const std::vector<ParamFormula>& delta,
                  const ElemSet& a, Bound bound, bool iterate,
                  const EvalLimits& limits = {});

// Least n with acl_n(a) = acl(a); equals the maximum A-orbit cardinality
// on a finite structure (never less than 1).
int deg_acl_of_set(const Structure& s, const ElemSet& a,
                   const AutomorphismLimits& limits = {});

struct DegreeReport {
    std::vector<std::pair<ElemSet, int>> per_set;  // enumerated A -> deg_acl(A)
    int structure_degree = 0;
    ElemSet witness;            // a maximizing A
    int stabilization_index = 0;
    bool exhaustive = true;     // false when the subset enumeration was sampled
};

// Max of deg_acl(A) over all A with |A| <= max_subset_size; exhaustive for
// N <= 14, otherwise a deterministic seeded sample per subset size.
DegreeReport deg_acl_of_structure(const Structure& s, int max_subset_size,
                                  const AutomorphismLimits& limits = {});

// Least n such that every A with n <= |A| <= N has only singleton
// A-orbits ("within-model" acl-dcl-difference). Singleton orbits persist
// under supersets, so testing each size once suffices. nullopt means no
// such n <= N, which cannot happen on a well-formed structure.
std::optional<int> acl_dcl_difference(const Structure& s,
                                      const AutomorphismLimits& limits = {});

struct ClosureChain {
    std::vector<ElemSet> sets;  // acl_0(a) = a, acl_1(a), ..., up to stabilization
    int stabilization_index = 0;
};

ClosureChain closure_chain(const Structure& s, const ElemSet& a,
                           const AutomorphismLimits& limits = {});

// A named, deterministic closure operator. Semantic operators close via
// orbits; delta operators via formula witnesses; meet/join nodes combine
// two operators (common-witnessed-set fixpoint and alternating closure).
struct ClosureOperator {
    enum class Kind { Semantic, Delta, Meet, Join };

    std::string name;
    Kind kind = Kind::Delta;
    Bound bound;
    std::vector<ParamFormula> delta;
    bool iterate = false;
    std::shared_ptr<const ClosureOperator> left, right;

    static ClosureOperator semantic(std::string name, Bound bound);
    static ClosureOperator with_delta(std::string name, std::vector<ParamFormula> delta,
                                      Bound bound, bool iterate);
    // acl^{x ~ y}: the identity closure, least element of every semilattice.
    static ClosureOperator bottom(Bound bound);

    ElemSet close(const Structure& s, const ElemSet& a) const;
    std::string summary() const;  // short description for labels/reports
};

// The reflexivity witness "x = y" as a ParamFormula named `id`.
ParamFormula identity_formula();

// Enumerates every instance (phi, params, solution set) with params drawn
// from base (repetition allowed), in deterministic order. No bound filter.
void for_each_delta_instance(
    const Structure& s, const std::vector<ParamFormula>& delta, const ElemSet& base,
    const std::function<void(const ParamFormula&, const std::vector<int>&, const ElemSet&)>& fn,
    const EvalLimits& limits = {});

// Witnessed-set family of an operator over a base set, used by the meet
// construction. Semantic operators keep their family implicit (every
// base-invariant set within bound) and are applied as a filter.
struct WitnessFamily {
    bool semantic = false;
    Bound bound;
    std::set<ElemSet> sets;
};

WitnessFamily witness_family(const Structure& s, const ClosureOperator& op,
                             const ElemSet& base);

// W(op1, base) ∩ W(op2, base) as an explicit family; nullopt when both
// sides are implicit (two semantic operators), in which case the common
// family is every base-invariant set within the smaller bound.
std::optional<std::set<ElemSet>> common_witnessed_sets(const Structure& s,
                                                       const ClosureOperator& op1,
                                                       const ClosureOperator& op2,
                                                       const ElemSet& base);

}  // namespace closurelab
