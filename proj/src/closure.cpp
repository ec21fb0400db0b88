#include "closurelab/closure.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace closurelab {

ElemSet acl_semantic(const Structure& s, const ElemSet& a, Bound bound,
                     const AutomorphismLimits& limits) {
    ElemSet out = a;
    OrbitPartition p = orbits(s, a, limits);
    for (const auto& block : p.blocks) {
        if (bound.admits(block.size())) out.insert_all(block);
    }
    return out;
}

ElemSet dcl_semantic(const Structure& s, const ElemSet& a, const AutomorphismLimits& limits) {
    return acl_semantic(s, a, Bound::at(1), limits);
}

void for_each_delta_instance(
    const Structure& s, const std::vector<ParamFormula>& delta, const ElemSet& base,
    const std::function<void(const ParamFormula&, const std::vector<int>&, const ElemSet&)>& fn,
    const EvalLimits& limits) {
    for (const auto& pf : delta) {
        std::size_t k = pf.param_vars.size();
        if (k == 0) {
            fn(pf, {}, solutions(s, pf, {}, limits));
            continue;
        }
        if (base.empty()) continue;
        const auto& pool = base.elems();
        std::vector<std::size_t> idx(k, 0);
        std::vector<int> params(k);
        for (;;) {
            for (std::size_t i = 0; i < k; ++i) params[i] = pool[idx[i]];
            fn(pf, params, solutions(s, pf, params, limits));
            std::size_t pos = k;
            while (pos > 0) {
                if (++idx[pos - 1] < pool.size()) break;
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
}

ElemSet delta_step(const Structure& s, const std::vector<ParamFormula>& delta,
                   const ElemSet& base, Bound bound, const EvalLimits& limits) {
    ElemSet out;
    for_each_delta_instance(
        s, delta, base,
        [&](const ParamFormula&, const std::vector<int>&, const ElemSet& sol) {
            if (bound.admits(sol.size())) out.insert_all(sol);
        },
        limits);
    return out;
}

ElemSet delta_closure(const Structure& s, const std::vector<ParamFormula>& delta,
                      const ElemSet& a, Bound bound, bool iterate, int max_rounds,
                      const EvalLimits& limits) {
    ElemSet x = delta_step(s, delta, a, bound, limits);
    if (!iterate) return x;
    int rounds = 1;
    while (max_rounds < 0 || rounds < max_rounds) {
        ElemSet next = x.set_union(delta_step(s, delta, x, bound, limits));
        if (next == x) break;
        x = std::move(next);
        ++rounds;
    }
    return x;
}

ElemSet acl_delta(const Structure& s, const std::vector<ParamFormula>& delta,
                  const ElemSet& a, Bound bound, bool iterate, const EvalLimits& limits) {
    return delta_closure(s, delta, a, bound, iterate, -1, limits);
}

int deg_acl_of_set(const Structure& s, const ElemSet& a, const AutomorphismLimits& limits) {
    return static_cast<int>(orbits(s, a, limits).max_block_size());
}

DegreeReport deg_acl_of_structure(const Structure& s, int max_subset_size,
                                  const AutomorphismLimits& limits) {
    if (max_subset_size > s.size) max_subset_size = s.size;
    DegreeReport report;
    std::vector<ElemSet> domain;
    if (s.size <= 14) {
        domain = subsets_up_to(s.size, max_subset_size);
    } else {
        // Deterministic sample: everything of size <= 1, then up to 200
        // seeded draws per larger size.
        report.exhaustive = false;
        domain = subsets_up_to(s.size, std::min(1, max_subset_size));
        std::mt19937 rng(0xC105u);
        for (int size = 2; size <= max_subset_size; ++size) {
            std::set<ElemSet> drawn;
            for (int tries = 0; tries < 2000 && static_cast<int>(drawn.size()) < 200; ++tries) {
                ElemSet a;
                while (static_cast<int>(a.size()) < size) {
                    a.insert(static_cast<int>(rng() % static_cast<unsigned>(s.size)));
                }
                drawn.insert(a);
            }
            domain.insert(domain.end(), drawn.begin(), drawn.end());
        }
    }
    report.structure_degree = 0;
    for (const auto& a : domain) {
        int deg = deg_acl_of_set(s, a, limits);
        report.per_set.emplace_back(a, deg);
        if (deg > report.structure_degree) {
            report.structure_degree = deg;
            report.witness = a;
        }
    }
    report.stabilization_index = report.structure_degree;
    return report;
}

namespace {

bool all_orbits_singleton(const Structure& s, const ElemSet& a,
                          const AutomorphismLimits& limits) {
    // Every orbit is a singleton iff the stabilizer contains only the identity.
    bool trivial = true;
    for_each_stabilizer(s, a,
                        [&](const Permutation& p) {
                            for (int e = 0; e < s.size; ++e) {
                                if (p[static_cast<std::size_t>(e)] != e) {
                                    trivial = false;
                                    return false;
                                }
                            }
                            return true;
                        },
                        limits);
    return trivial;
}

void for_each_subset_of_size(int n, int size,
                             const std::function<bool(const ElemSet&)>& fn) {
    std::vector<int> cur;
    bool stop = false;
    std::function<void(int)> rec = [&](int next) {
        if (stop) return;
        if (static_cast<int>(cur.size()) == size) {
            if (!fn(ElemSet(cur))) stop = true;
            return;
        }
        int missing = size - static_cast<int>(cur.size());
        for (int x = next; x <= n - missing && !stop; ++x) {
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

std::optional<int> acl_dcl_difference(const Structure& s, const AutomorphismLimits& limits) {
    for (int n = 0; n <= s.size; ++n) {
        bool all_singleton = true;
        for_each_subset_of_size(s.size, n, [&](const ElemSet& a) {
            if (!all_orbits_singleton(s, a, limits)) {
                all_singleton = false;
                return false;
            }
            return true;
        });
        if (all_singleton) return n;
    }
    return std::nullopt;
}

ClosureChain closure_chain(const Structure& s, const ElemSet& a,
                           const AutomorphismLimits& limits) {
    OrbitPartition p = orbits(s, a, limits);
    int stabilization = 0;
    for (const auto& block : p.blocks) {
        if (!block.subset_of(a)) {
            stabilization = std::max(stabilization, static_cast<int>(block.size()));
        }
    }
    ClosureChain chain;
    chain.stabilization_index = stabilization;
    for (int n = 0; n <= stabilization; ++n) {
        ElemSet x = a;
        for (const auto& block : p.blocks) {
            if (static_cast<int>(block.size()) <= n) x.insert_all(block);
        }
        chain.sets.push_back(std::move(x));
    }
    return chain;
}

ParamFormula identity_formula() {
    return ParamFormula{"id", "x", {"y"}, Formula::equal("x", "y")};
}

ClosureOperator ClosureOperator::semantic(std::string name, Bound bound) {
    ClosureOperator op;
    op.name = std::move(name);
    op.kind = Kind::Semantic;
    op.bound = bound;
    return op;
}

ClosureOperator ClosureOperator::with_delta(std::string name, std::vector<ParamFormula> delta,
                                            Bound bound, bool iterate) {
    ClosureOperator op;
    op.name = std::move(name);
    op.kind = Kind::Delta;
    op.bound = bound;
    op.delta = std::move(delta);
    op.iterate = iterate;
    return op;
}

ClosureOperator ClosureOperator::bottom(Bound bound) {
    return with_delta("bot", {identity_formula()}, bound, true);
}

ElemSet ClosureOperator::close(const Structure& s, const ElemSet& a) const {
    switch (kind) {
        case Kind::Semantic:
            return acl_semantic(s, a, bound);
        case Kind::Delta:
            return delta_closure(s, delta, a, bound, iterate);
        case Kind::Meet: {
            ElemSet x = a;
            for (;;) {
                ElemSet next = x;
                auto common = common_witnessed_sets(s, *left, *right, x);
                if (common) {
                    for (const auto& set : *common) next.insert_all(set);
                } else {
                    // Two semantic operands: the common witnessed sets are the
                    // x-invariant sets within the smaller bound.
                    Bound b = left->bound.leq(right->bound) ? left->bound : right->bound;
                    next.insert_all(acl_semantic(s, x, b));
                }
                if (next == x) return x;
                x = std::move(next);
            }
        }
        case Kind::Join: {
            ElemSet x = a;
            for (;;) {
                ElemSet next = x.set_union(left->close(s, x));
                next = next.set_union(right->close(s, next));
                if (next == x) return x;
                x = std::move(next);
            }
        }
    }
    return a;
}

std::string ClosureOperator::summary() const {
    switch (kind) {
        case Kind::Semantic:
            return "acl_" + bound.label() + " (orbits)";
        case Kind::Delta: {
            std::string names;
            for (std::size_t i = 0; i < delta.size(); ++i) {
                if (i) names += ",";
                names += delta[i].name;
            }
            return "acl_" + bound.label() + "^{" + names + "}";
        }
        case Kind::Meet:
            return "(" + left->name + " ∧ " + right->name + ")";
        case Kind::Join:
            return "(" + left->name + " ∨ " + right->name + ")";
    }
    return name;
}

WitnessFamily witness_family(const Structure& s, const ClosureOperator& op,
                             const ElemSet& base) {
    WitnessFamily fam;
    fam.bound = op.bound;
    switch (op.kind) {
        case ClosureOperator::Kind::Semantic:
            fam.semantic = true;
            return fam;
        case ClosureOperator::Kind::Delta:
            for_each_delta_instance(
                s, op.delta, base,
                [&](const ParamFormula&, const std::vector<int>&, const ElemSet& sol) {
                    if (op.bound.admits(sol.size())) fam.sets.insert(sol);
                });
            return fam;
        case ClosureOperator::Kind::Join: {
            WitnessFamily l = witness_family(s, *op.left, base);
            WitnessFamily r = witness_family(s, *op.right, base);
            if (l.semantic || r.semantic) {
                throw std::runtime_error("join of a semantic operator has no witness family");
            }
            fam.sets = std::move(l.sets);
            fam.sets.insert(r.sets.begin(), r.sets.end());
            return fam;
        }
        case ClosureOperator::Kind::Meet: {
            WitnessFamily l = witness_family(s, *op.left, base);
            WitnessFamily r = witness_family(s, *op.right, base);
            if (l.semantic && r.semantic) {
                fam.semantic = true;
                fam.bound = l.bound.leq(r.bound) ? l.bound : r.bound;
                return fam;
            }
            if (l.semantic || r.semantic) {
                const WitnessFamily& sem = l.semantic ? l : r;
                const WitnessFamily& exp = l.semantic ? r : l;
                OrbitPartition p = orbits(s, base);
                for (const auto& set : exp.sets) {
                    if (!sem.bound.admits(set.size())) continue;
                    bool invariant = true;
                    for (const auto& block : p.blocks) {
                        ElemSet inter = block.set_intersect(set);
                        if (!inter.empty() && inter != block) {
                            invariant = false;
                            break;
                        }
                    }
                    if (invariant) fam.sets.insert(set);
                }
                return fam;
            }
            std::set_intersection(l.sets.begin(), l.sets.end(), r.sets.begin(), r.sets.end(),
                                  std::inserter(fam.sets, fam.sets.begin()));
            return fam;
        }
    }
    return fam;
}

std::optional<std::set<ElemSet>> common_witnessed_sets(const Structure& s,
                                                       const ClosureOperator& op1,
                                                       const ClosureOperator& op2,
                                                       const ElemSet& base) {
    ClosureOperator probe;
    probe.kind = ClosureOperator::Kind::Meet;
    probe.left = std::make_shared<ClosureOperator>(op1);
    probe.right = std::make_shared<ClosureOperator>(op2);
    WitnessFamily fam = witness_family(s, probe, base);
    if (fam.semantic) return std::nullopt;
    return fam.sets;
}

}  // namespace closurelab
