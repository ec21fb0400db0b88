#include "closurelab/pregeometry.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace closurelab {

SubsetDomain enumerate_domain(int universe_size, int subset_cap) {
    SubsetDomain domain;
    if (universe_size <= subset_cap) {
        domain.sets = subsets_up_to(universe_size, universe_size);
        return domain;
    }
    domain.sampled = true;
    domain.sets = subsets_up_to(universe_size, 3);
    std::mt19937 rng(0x5EEDu);
    std::set<ElemSet> extra;
    for (int draw = 0; draw < 400 && static_cast<int>(extra.size()) < 100; ++draw) {
        int size = 4 + static_cast<int>(rng() % static_cast<unsigned>(
                                            std::max(1, universe_size - 3)));
        ElemSet a;
        while (static_cast<int>(a.size()) < size) {
            a.insert(static_cast<int>(rng() % static_cast<unsigned>(universe_size)));
        }
        extra.insert(a);
    }
    domain.sets.insert(domain.sets.end(), extra.begin(), extra.end());
    return domain;
}

std::string axiom_name(AxiomReport::Axiom axiom) {
    switch (axiom) {
        case AxiomReport::Axiom::Reflexivity:
            return "reflexivity";
        case AxiomReport::Axiom::Transitivity:
            return "transitivity";
        case AxiomReport::Axiom::FiniteCharacter:
            return "finite-character";
        case AxiomReport::Axiom::Exchange:
            return "exchange";
        case AxiomReport::Axiom::EsProperty:
            return "es-property";
    }
    return "?";
}

namespace {

class ClosureCache {
public:
    ClosureCache(const Structure& s, const ClosureOperator& op) : s_(s), op_(op) {}

    const ElemSet& of(const ElemSet& x) {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(x, op_.close(s_, x)).first->second;
    }

private:
    const Structure& s_;
    const ClosureOperator& op_;
    std::map<ElemSet, ElemSet> cache_;
};

// Witness-size bound for the finite character check: the widest parameter
// tuple a Delta instance can use; semantic operators get the trivial bound N.
int witness_size_bound(const Structure& s, const ClosureOperator& op) {
    switch (op.kind) {
        case ClosureOperator::Kind::Semantic:
            return s.size;
        case ClosureOperator::Kind::Delta: {
            int w = 0;
            for (const auto& pf : op.delta) {
                w = std::max(w, static_cast<int>(pf.param_vars.size()));
            }
            return w;
        }
        case ClosureOperator::Kind::Meet:
        case ClosureOperator::Kind::Join:
            return std::max(witness_size_bound(s, *op.left), witness_size_bound(s, *op.right));
    }
    return s.size;
}

}  // namespace

std::vector<AxiomReport> check_axioms(const Structure& s, const ClosureOperator& op,
                                      const AxiomCheckOptions& opts) {
    SubsetDomain domain = enumerate_domain(s.size, opts.subset_cap);
    ClosureCache cl(s, op);
    std::vector<AxiomReport> out;

    {
        AxiomReport r;
        r.axiom = AxiomReport::Axiom::Reflexivity;
        r.sampled = domain.sampled;
        for (const auto& x : domain.sets) {
            ++r.subsets_checked;
            if (!x.subset_of(cl.of(x))) {
                r.holds = false;
                r.counterexample = {x, {}, {}, "X is not a subset of op(X)"};
                break;
            }
        }
        out.push_back(std::move(r));
    }

    {
        AxiomReport r;
        r.axiom = AxiomReport::Axiom::Transitivity;
        r.sampled = domain.sampled;
        for (const auto& x : domain.sets) {
            ++r.subsets_checked;
            const ElemSet once = cl.of(x);
            if (cl.of(once) != once) {
                r.holds = false;
                r.counterexample = {x, {}, {}, "op(op(X)) differs from op(X)"};
                break;
            }
        }
        out.push_back(std::move(r));
    }

    {
        AxiomReport r;
        r.axiom = AxiomReport::Axiom::FiniteCharacter;
        r.sampled = domain.sampled;
        int bound = witness_size_bound(s, op);
        int max_min = 0;
        for (const auto& x : domain.sets) {
            ++r.subsets_checked;
            const ElemSet closed = cl.of(x);
            for (int a : closed) {
                bool witnessed = false;
                int limit = std::min<int>(bound, static_cast<int>(x.size()));
                for (int size = 0; size <= limit && !witnessed; ++size) {
                    for (const auto& x0 :
                         subsets_up_to(static_cast<int>(x.size()), size)) {
                        if (static_cast<int>(x0.size()) != size) continue;
                        ElemSet sub;
                        for (int idx : x0) sub.insert(x.elems()[static_cast<std::size_t>(idx)]);
                        if (cl.of(sub).contains(a)) {
                            witnessed = true;
                            max_min = std::max(max_min, size);
                            break;
                        }
                    }
                }
                if (!witnessed) {
                    r.holds = false;
                    r.counterexample = {x, a, {},
                                        "no witness of size <= " + std::to_string(bound)};
                    break;
                }
            }
            if (!r.holds) break;
        }
        if (r.holds) r.max_min_witness = max_min;
        out.push_back(std::move(r));
    }

    {
        AxiomReport r;
        r.axiom = AxiomReport::Axiom::Exchange;
        r.sampled = domain.sampled;
        for (const auto& x : domain.sets) {
            ++r.subsets_checked;
            const ElemSet base = cl.of(x);
            for (int a = 0; a < s.size && r.holds; ++a) {
                if (base.contains(a)) continue;
                for (int b = 0; b < s.size && r.holds; ++b) {
                    if (!cl.of(x.with(b)).contains(a)) continue;
                    if (!cl.of(x.with(a)).contains(b)) {
                        r.holds = false;
                        r.counterexample = {
                            x, a, b,
                            "a in op(X+{b}) \\ op(X) but b not in op(X+{a})"};
                    }
                }
            }
            if (!r.holds) break;
        }
        out.push_back(std::move(r));
    }

    {
        AxiomReport r;
        r.axiom = AxiomReport::Axiom::EsProperty;
        r.sampled = domain.sampled;
        ++r.subsets_checked;
        if (!cl.of(ElemSet{}).empty()) {
            r.holds = false;
            r.counterexample = {ElemSet{}, {}, {}, "op(∅) = " + cl.of(ElemSet{}).to_string()};
        }
        for (int a = 0; a < s.size && r.holds; ++a) {
            ++r.subsets_checked;
            ElemSet singleton{a};
            if (cl.of(singleton) != singleton) {
                r.holds = false;
                r.counterexample = {singleton, a, {},
                                    "op({a}) = " + cl.of(singleton).to_string()};
            }
        }
        out.push_back(std::move(r));
    }

    return out;
}

GeometryQuotient canonical_geometry(const Structure& s, const ClosureOperator& op,
                                    const AxiomCheckOptions& opts) {
    SubsetDomain domain = enumerate_domain(s.size, opts.subset_cap);
    GeometryQuotient q;
    ClosureCache cl(s, op);
    for (const auto& x : domain.sets) {
        const ElemSet once = cl.of(x);
        if (!x.subset_of(once)) {
            throw std::runtime_error("operator not regular: reflexivity fails at X = " +
                                     x.to_string());
        }
        if (cl.of(once) != once) {
            throw std::runtime_error("operator not regular: transitivity fails at X = " +
                                     x.to_string());
        }
    }
    const ElemSet cl_empty = cl.of(ElemSet{});
    std::map<ElemSet, int> point_index;
    for (int a = 0; a < s.size; ++a) {
        if (cl_empty.contains(a)) continue;
        ElemSet cls = cl.of(ElemSet{a});
        if (point_index.emplace(cls, static_cast<int>(q.points.size())).second) {
            q.points.push_back(cls);
        }
    }
    if (q.points.size() > 14) {
        throw std::runtime_error("canonical geometry has too many points (" +
                                 std::to_string(q.points.size()) + " > 14)");
    }

    auto quotient_closure = [&](const ElemSet& point_set) {
        ElemSet carrier;
        for (int i : point_set) carrier.insert_all(q.points[static_cast<std::size_t>(i)]);
        ElemSet closed = cl.of(carrier);
        ElemSet out;
        for (int b : closed) {
            if (cl_empty.contains(b)) continue;
            out.insert(point_index.at(cl.of(ElemSet{b})));
        }
        return out;
    };

    for (const auto& point_set :
         subsets_up_to(static_cast<int>(q.points.size()), static_cast<int>(q.points.size()))) {
        q.closure_map[point_set] = quotient_closure(point_set);
    }

    q.es_holds = q.closure_map.at(ElemSet{}).empty();
    for (int i = 0; i < static_cast<int>(q.points.size()) && q.es_holds; ++i) {
        if (q.closure_map.at(ElemSet{i}) != ElemSet{i}) q.es_holds = false;
    }
    return q;
}

RegularityReport check_regular_delta(const Structure& s, const std::vector<ParamFormula>& delta,
                                     Bound n, const AxiomCheckOptions& opts) {
    RegularityReport report;

    report.acl_reflexive = true;
    for (int a = 0; a < s.size; ++a) {
        bool witnessed = false;
        for (const auto& pf : delta) {
            std::vector<int> params(pf.param_vars.size(), a);
            ElemSet sol = solutions(s, pf, params);
            if (sol.contains(a) && n.admits(sol.size())) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed) {
            report.acl_reflexive = false;
            report.reflexivity_failure = a;
            break;
        }
    }

    report.acl_transitive = true;
    SubsetDomain domain = enumerate_domain(s.size, opts.subset_cap);
    for (const auto& a : domain.sets) {
        ElemSet once = delta_step(s, delta, a, n);
        ElemSet twice = delta_step(s, delta, once, n);
        if (!twice.subset_of(once)) {
            report.acl_transitive = false;
            report.transitivity_failure = a;
            break;
        }
    }
    return report;
}

}  // namespace closurelab
