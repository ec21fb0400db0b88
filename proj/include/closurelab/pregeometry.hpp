#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "closurelab/closure.hpp"

namespace closurelab {

// The subsets an exhaustive check ranges over: all of them when
// N <= subset_cap, otherwise everything of size <= 3 plus a seeded
// deterministic sample (and `sampled` is set).
struct SubsetDomain {
    std::vector<ElemSet> sets;  // ordered by size, then lexicographically
    bool sampled = false;
};

SubsetDomain enumerate_domain(int universe_size, int subset_cap = 14);

struct AxiomCheckOptions {
    int subset_cap = 14;
};

struct AxiomReport {
    enum class Axiom { Reflexivity, Transitivity, FiniteCharacter, Exchange, EsProperty };

    struct Counterexample {
        ElemSet x;
        std::optional<int> a;
        std::optional<int> b;
        std::string note;
    };

    Axiom axiom;
    bool holds = true;
    std::optional<Counterexample> counterexample;
    long subsets_checked = 0;
    bool sampled = false;
    // Finite character only: the largest minimal witness size encountered.
    std::optional<int> max_min_witness;
};

std::string axiom_name(AxiomReport::Axiom axiom);

// One report per axiom, in the order reflexivity, transitivity,
// finite character, exchange, ES-property. Counterexamples re-validate by
// direct evaluation of the operator.
std::vector<AxiomReport> check_axioms(const Structure& s, const ClosureOperator& op,
                                      const AxiomCheckOptions& opts = {});

// Quotient of a regular operator by its closure-of-singleton classes.
struct GeometryQuotient {
    std::vector<ElemSet> points;        // cl({a}) for a outside cl(∅), deduplicated
    // Point-index sets -> point-index sets, for every subset of points.
    std::map<ElemSet, ElemSet> closure_map;
    bool es_holds = false;              // re-verified, not assumed
};

// Requires op to pass reflexivity and transitivity on the enumerated
// domain; throws std::runtime_error naming the failing axiom otherwise.
GeometryQuotient canonical_geometry(const Structure& s, const ClosureOperator& op,
                                    const AxiomCheckOptions& opts = {});

struct RegularityReport {
    bool acl_reflexive = false;
    bool acl_transitive = false;
    std::optional<int> reflexivity_failure;       // an element with no witness
    std::optional<ElemSet> transitivity_failure;  // an A where one step applied twice grows
};

// Prop-style regularity of a Delta set at bound n: reflexive iff every
// element a is witnessed by some phi(a, a..a) within bound; transitive iff
// the one-step operator applied twice adds nothing, over the enumerated
// domain.
RegularityReport check_regular_delta(const Structure& s, const std::vector<ParamFormula>& delta,
                                     Bound n, const AxiomCheckOptions& opts = {});

}  // namespace closurelab
