#include "closurelab/operator_lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace closurelab {

bool operators_equivalent(const Structure& s, const std::vector<ParamFormula>& d1,
                          const std::vector<ParamFormula>& d2, Bound n, int subset_cap) {
    SubsetDomain domain = enumerate_domain(s.size, subset_cap);
    for (const auto& a : domain.sets) {
        if (delta_closure(s, d1, a, n, true) != delta_closure(s, d2, a, n, true)) {
            return false;
        }
    }
    return true;
}

namespace {

std::string formula_key(const ParamFormula& pf) {
    std::string key = pf.solution_var + "|";
    for (const auto& p : pf.param_vars) key += p + ",";
    return key + "|" + pf.body.to_text();
}

void collect_var_names(const Formula& f, std::set<std::string>& out) {
    for (const auto& v : f.vars) out.insert(v);
    if (!f.var.empty()) out.insert(f.var);
    for (const auto& c : f.children) collect_var_names(c, out);
}

std::set<std::string> all_var_names(const ParamFormula& pf) {
    std::set<std::string> out{pf.solution_var};
    for (const auto& p : pf.param_vars) out.insert(p);
    collect_var_names(pf.body, out);
    return out;
}

// Renames free occurrences; a binder for a source name shields its scope.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& sub) {
    Formula out = f;
    switch (f.kind) {
        case Formula::Kind::Equal:
        case Formula::Kind::Atom:
            for (auto& v : out.vars) {
                auto it = sub.find(v);
                if (it != sub.end()) v = it->second;
            }
            return out;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::CountExists: {
            std::map<std::string, std::string> inner = sub;
            inner.erase(f.var);
            out.children[0] = rename_free(f.children[0], inner);
            return out;
        }
        default:
            for (auto& c : out.children) c = rename_free(c, sub);
            return out;
    }
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
    if (taken.insert(base).second) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (taken.insert(cand).second) return cand;
    }
}

std::string unique_formula_name(const std::string& base, std::set<std::string>& used) {
    if (used.insert(base).second) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (used.insert(cand).second) return cand;
    }
}

// One rule application: existentially bind the parameter slots of `root`
// and feed them with the solution variables of the argument formulas.
ParamFormula compose_one(const ParamFormula& root, const std::vector<ParamFormula>& args,
                         std::set<std::string>& used_names) {
    std::set<std::string> taken = all_var_names(root);
    for (const auto& a : args) {
        auto vars = all_var_names(a);
        taken.insert(vars.begin(), vars.end());
    }

    ParamFormula out;
    out.solution_var = root.solution_var;
    std::set<std::string> assigned{out.solution_var};

    std::vector<std::string> bound_vars;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string preferred = "x" + std::to_string(i + 1);
        std::string name = preferred;
        for (int tick = 0; taken.count(name) || assigned.count(name); ++tick) {
            name = preferred + "_" + std::to_string(tick);
        }
        assigned.insert(name);
        bound_vars.push_back(name);
    }

    std::map<std::string, std::string> root_sub;
    for (std::size_t i = 0; i < root.param_vars.size(); ++i) {
        root_sub[root.param_vars[i]] = bound_vars[i];
    }
    Formula body = rename_free(root.body, root_sub);

    for (std::size_t i = 0; i < args.size(); ++i) {
        const ParamFormula& arg = args[i];
        std::map<std::string, std::string> sub;
        sub[arg.solution_var] = bound_vars[i];
        for (const auto& p : arg.param_vars) {
            std::string kept = p;
            // Keep the original parameter name when nothing else claims it.
            if (assigned.count(kept) || kept == arg.solution_var) {
                kept = fresh_name("y", assigned);
            } else {
                std::set<std::string> others;
                others.insert(root.solution_var);
                auto root_vars = all_var_names(root);
                others.insert(root_vars.begin(), root_vars.end());
                for (std::size_t j = 0; j < args.size(); ++j) {
                    if (j == i) continue;
                    auto vars = all_var_names(args[j]);
                    others.insert(vars.begin(), vars.end());
                }
                if (others.count(kept)) kept = fresh_name("y", assigned);
                else assigned.insert(kept);
            }
            sub[p] = kept;
            out.param_vars.push_back(kept);
        }
        body = Formula::conj(std::move(body), rename_free(arg.body, sub));
    }

    for (auto it = bound_vars.rbegin(); it != bound_vars.rend(); ++it) {
        body = Formula::exists(*it, std::move(body));
    }
    out.body = std::move(body);

    std::string base = root.name;
    for (const auto& a : args) base += "." + a.name;
    out.name = unique_formula_name(base, used_names);
    return out;
}

}  // namespace

std::vector<ParamFormula> compose_delta(const std::vector<ParamFormula>& delta, int depth,
                                        std::size_t node_cap) {
    std::vector<ParamFormula> out = delta;
    std::set<std::string> keys, used_names;
    std::size_t total_nodes = 0;
    for (const auto& pf : delta) {
        keys.insert(formula_key(pf));
        used_names.insert(pf.name);
        total_nodes += pf.body.node_count();
    }

    for (int level = 0; level < depth; ++level) {
        std::vector<ParamFormula> snapshot = out;
        for (const auto& root : delta) {
            std::size_t m = root.param_vars.size();
            if (m == 0) continue;
            // Odometer over snapshot^m.
            std::vector<std::size_t> idx(m, 0);
            for (;;) {
                std::vector<ParamFormula> args;
                args.reserve(m);
                for (std::size_t i = 0; i < m; ++i) args.push_back(snapshot[idx[i]]);
                ParamFormula composed = compose_one(root, args, used_names);
                if (keys.insert(formula_key(composed)).second) {
                    total_nodes += composed.body.node_count();
                    if (total_nodes > node_cap) {
                        throw std::runtime_error(
                            "compose_delta: formula-size cap exceeded (" +
                            std::to_string(total_nodes) + " > " + std::to_string(node_cap) +
                            " AST nodes)");
                    }
                    out.push_back(std::move(composed));
                }
                std::size_t pos = m;
                while (pos > 0) {
                    if (++idx[pos - 1] < snapshot.size()) break;
                    idx[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
        }
    }
    return out;
}

std::vector<ParamFormula> boolean_closure(const std::vector<ParamFormula>& delta,
                                          int max_conjuncts, std::size_t node_cap) {
    if (max_conjuncts < 1) throw std::runtime_error("boolean_closure: need max_conjuncts >= 1");
    struct Literal {
        std::size_t index;
        bool positive;
    };
    std::vector<Literal> literals;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        literals.push_back({i, true});
        literals.push_back({i, false});
    }

    std::vector<ParamFormula> out;
    std::set<std::string> keys, used_names;
    std::size_t total_nodes = 0;

    auto emit = [&](ParamFormula pf) {
        if (!keys.insert(formula_key(pf)).second) return;
        total_nodes += pf.body.node_count();
        if (total_nodes > node_cap) {
            throw std::runtime_error("boolean_closure: formula-size cap exceeded");
        }
        out.push_back(std::move(pf));
    };

    // Conjunctions range over canonical multisets of literals: every literal
    // occurrence gets its own parameter slots, so two occurrences of the
    // same formula can take independent parameters (the shared-parameter
    // instances are recovered on the diagonal of the instance tuples).
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (!pick.empty()) {
            const ParamFormula& first = delta[literals[pick[0]].index];
            if (pick.size() == 1 && literals[pick[0]].positive) {
                used_names.insert(first.name);
                emit(first);
            } else {
                ParamFormula pf;
                pf.solution_var = first.solution_var;
                std::set<std::string> taken{pf.solution_var};
                Formula body;
                bool first_conjunct = true;
                std::string name;
                for (std::size_t li : pick) {
                    const Literal& lit = literals[li];
                    const ParamFormula& src = delta[lit.index];
                    std::map<std::string, std::string> sub;
                    if (src.solution_var != pf.solution_var) {
                        sub[src.solution_var] = pf.solution_var;
                    }
                    for (const auto& p : src.param_vars) {
                        std::string slot = fresh_name(p == pf.solution_var ? p + "_p" : p, taken);
                        if (slot != p) sub[p] = slot;
                        pf.param_vars.push_back(slot);
                    }
                    Formula part = rename_free(src.body, sub);
                    if (!lit.positive) part = Formula::negation(std::move(part));
                    if (first_conjunct) {
                        body = std::move(part);
                        first_conjunct = false;
                    } else {
                        body = Formula::conj(std::move(body), std::move(part));
                    }
                    if (!name.empty()) name += "_and_";
                    name += (lit.positive ? "" : "not_") + src.name;
                }
                pf.body = std::move(body);
                pf.name = unique_formula_name(name, used_names);
                emit(std::move(pf));
            }
        }
        if (static_cast<int>(pick.size()) == max_conjuncts) return;
        for (std::size_t li = next; li < literals.size(); ++li) {
            pick.push_back(li);
            rec(li);  // li again: multisets, repeats allowed
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::set<ElemSet> composed_instance_sets(const Structure& s,
                                         const std::vector<ParamFormula>& delta,
                                         const ElemSet& base, std::size_t family_cap) {
    std::set<ElemSet> family;
    auto guard = [&] {
        if (family.size() > family_cap) {
            throw std::runtime_error("composed_instance_sets: family cap exceeded (" +
                                     std::to_string(family.size()) + " sets)");
        }
    };
    for_each_delta_instance(s, delta, base,
                            [&](const ParamFormula&, const std::vector<int>&, const ElemSet& sol) {
                                if (!sol.empty()) family.insert(sol);
                            });
    guard();

    std::set<std::pair<std::size_t, std::vector<ElemSet>>> done;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<ElemSet> snapshot(family.begin(), family.end());
        for (std::size_t pi = 0; pi < delta.size(); ++pi) {
            const ParamFormula& psi = delta[pi];
            std::size_t m = psi.param_vars.size();
            if (m == 0) continue;
            std::vector<std::size_t> idx(m, 0);
            for (;;) {
                std::vector<ElemSet> args;
                args.reserve(m);
                for (std::size_t i = 0; i < m; ++i) args.push_back(snapshot[idx[i]]);
                if (done.emplace(pi, args).second) {
                    // T = union of sol(psi, p) over p in args[0] x ... x args[m-1].
                    ElemSet t;
                    std::vector<std::size_t> j(m, 0);
                    for (;;) {
                        std::vector<int> params(m);
                        for (std::size_t i = 0; i < m; ++i) {
                            params[i] = args[i].elems()[j[i]];
                        }
                        t.insert_all(solutions(s, psi, params));
                        std::size_t pos = m;
                        while (pos > 0) {
                            if (++j[pos - 1] < args[pos - 1].size()) break;
                            j[pos - 1] = 0;
                            --pos;
                        }
                        if (pos == 0) break;
                    }
                    if (!t.empty() && family.insert(std::move(t)).second) {
                        changed = true;
                        guard();
                    }
                }
                std::size_t pos = m;
                while (pos > 0) {
                    if (++idx[pos - 1] < snapshot.size()) break;
                    idx[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
        }
    }
    return family;
}

namespace {

// Regularity of an arbitrary operator over the enumerated domain:
// reflexivity plus transitivity.
std::optional<std::string> regularity_failure(const Structure& s, const ClosureOperator& op,
                                              int subset_cap) {
    SubsetDomain domain = enumerate_domain(s.size, subset_cap);
    for (const auto& x : domain.sets) {
        ElemSet once = op.close(s, x);
        if (!x.subset_of(once)) {
            return "reflexivity fails at A = " + x.to_string();
        }
        if (op.close(s, once) != once) {
            return "transitivity fails at A = " + x.to_string();
        }
    }
    return std::nullopt;
}

void ensure_regular(const Structure& s, const ClosureOperator& op, int subset_cap,
                    const std::string& role) {
    if (auto failure = regularity_failure(s, op, subset_cap)) {
        throw std::runtime_error(role + " operator '" + op.name + "' is not regular: " +
                                 *failure);
    }
}

ClosureOperator make_meet_node(const ClosureOperator& op1, const ClosureOperator& op2) {
    ClosureOperator m;
    m.kind = ClosureOperator::Kind::Meet;
    m.name = "(" + op1.name + "∧" + op2.name + ")";
    m.bound = op1.bound.leq(op2.bound) ? op1.bound : op2.bound;
    m.left = std::make_shared<ClosureOperator>(op1);
    m.right = std::make_shared<ClosureOperator>(op2);
    return m;
}

// Delta formulas reachable in an operator tree; false when a semantic
// node blocks the collection.
bool collect_formulas(const ClosureOperator& op, std::vector<ParamFormula>& out) {
    switch (op.kind) {
        case ClosureOperator::Kind::Semantic:
            return false;
        case ClosureOperator::Kind::Delta:
            out.insert(out.end(), op.delta.begin(), op.delta.end());
            return true;
        case ClosureOperator::Kind::Meet:
        case ClosureOperator::Kind::Join:
            return collect_formulas(*op.left, out) && collect_formulas(*op.right, out);
    }
    return false;
}

std::vector<ParamFormula> dedup_formulas(const std::vector<ParamFormula>& in) {
    std::vector<ParamFormula> out;
    std::set<std::string> keys, names;
    for (const auto& pf : in) {
        if (!keys.insert(formula_key(pf)).second) continue;
        ParamFormula copy = pf;
        copy.name = unique_formula_name(pf.name, names);
        out.push_back(std::move(copy));
    }
    return out;
}

std::optional<ClosureOperator> join_impl(const Structure& s, const ClosureOperator& op1,
                                         const ClosureOperator& op2,
                                         const LatticeOptions& opts) {
    std::string name = "(" + op1.name + "∨" + op2.name + ")";

    // The unbounded semantic closure maps every set into the whole
    // universe, so it absorbs any join.
    auto absorbing = [&](const ClosureOperator& op) {
        return op.kind == ClosureOperator::Kind::Semantic && op.bound.is_unbounded();
    };
    if (absorbing(op1)) {
        ClosureOperator out = op1;
        out.name = name;
        return out;
    }
    if (absorbing(op2)) {
        ClosureOperator out = op2;
        out.name = name;
        return out;
    }

    if (!(op1.bound == op2.bound)) {
        throw std::runtime_error("join requires operators with the same bound, got " +
                                 op1.bound.label() + " and " + op2.bound.label());
    }

    std::vector<ParamFormula> formulas;
    bool formula_backed = collect_formulas(op1, formulas) && collect_formulas(op2, formulas);

    ClosureOperator result;
    if (op1.kind == ClosureOperator::Kind::Delta && op2.kind == ClosureOperator::Kind::Delta) {
        result = ClosureOperator::with_delta(name, dedup_formulas(formulas), op1.bound, true);
    } else {
        result.kind = ClosureOperator::Kind::Join;
        result.name = name;
        result.bound = op1.bound;
        result.left = std::make_shared<ClosureOperator>(op1);
        result.right = std::make_shared<ClosureOperator>(op2);
    }

    if (op1.bound.is_unbounded()) return result;

    // Bounded case: return the fixpoint only when every element it adds is
    // witnessed by a composed instance within the bound.
    if (!formula_backed) {
        throw std::runtime_error(
            "bounded join with a semantic operand is not supported: no witness formulas");
    }
    std::vector<ParamFormula> calculus = dedup_formulas(formulas);
    SubsetDomain domain = enumerate_domain(s.size, opts.subset_cap);
    for (const auto& a : domain.sets) {
        ElemSet joined = result.close(s, a);
        if (joined == a) continue;
        std::set<ElemSet> family = composed_instance_sets(s, calculus, a, opts.family_cap);
        ElemSet witnessed;
        for (const auto& set : family) {
            if (op1.bound.admits(set.size())) witnessed.insert_all(set);
        }
        for (int b : joined) {
            if (!a.contains(b) && !witnessed.contains(b)) return std::nullopt;
        }
    }
    return result;
}

}  // namespace

ClosureOperator meet(const Structure& s, const ClosureOperator& op1,
                     const ClosureOperator& op2, const LatticeOptions& opts) {
    ensure_regular(s, op1, opts.subset_cap, "meet");
    ensure_regular(s, op2, opts.subset_cap, "meet");
    return make_meet_node(op1, op2);
}

std::optional<ClosureOperator> join(const Structure& s, const ClosureOperator& op1,
                                    const ClosureOperator& op2, const LatticeOptions& opts) {
    ensure_regular(s, op1, opts.subset_cap, "join");
    ensure_regular(s, op2, opts.subset_cap, "join");
    return join_impl(s, op1, op2, opts);
}

OperatorPoset build_poset(
    const Structure& s,
    const std::vector<std::pair<std::string, std::vector<ParamFormula>>>& seeds,
    PosetMode mode, Bound n, const LatticeOptions& opts) {
    OperatorPoset poset;
    poset.domain = enumerate_domain(s.size, opts.subset_cap);

    for (const auto& [name, delta] : seeds) {
        RegularityReport rep = check_regular_delta(s, delta, n, {opts.subset_cap});
        if (!rep.acl_reflexive) {
            throw std::runtime_error("seed '" + name + "' rejected: not acl-reflexive at bound " +
                                     n.label() + " (element " +
                                     std::to_string(*rep.reflexivity_failure) +
                                     " has no witness)");
        }
        if (!rep.acl_transitive) {
            throw std::runtime_error("seed '" + name + "' rejected: not acl-transitive at bound " +
                                     n.label() + " (one step applied twice grows at A = " +
                                     rep.transitivity_failure->to_string() + ")");
        }
    }

    std::vector<bool> synthetic;
    auto profile_of = [&](const ClosureOperator& op) {
        std::vector<ElemSet> prof;
        prof.reserve(poset.domain.sets.size());
        for (const auto& a : poset.domain.sets) prof.push_back(op.close(s, a));
        return prof;
    };
    auto add_op = [&](const ClosureOperator& op, bool user_named) -> int {
        std::vector<ElemSet> prof = profile_of(op);
        for (std::size_t i = 0; i < poset.profiles.size(); ++i) {
            if (poset.profiles[i] == prof) {
                if (user_named && synthetic[i]) {
                    poset.names[i] = op.name;
                    synthetic[i] = false;
                }
                return static_cast<int>(i);
            }
        }
        if (poset.elements.size() >= opts.max_elements) {
            throw std::runtime_error("poset too large: exceeds cap of " +
                                     std::to_string(opts.max_elements) + " operators");
        }
        poset.elements.push_back(op);
        poset.names.push_back(op.name);
        poset.profiles.push_back(std::move(prof));
        synthetic.push_back(!user_named);
        return static_cast<int>(poset.elements.size()) - 1;
    };

    add_op(ClosureOperator::bottom(n), false);
    for (const auto& [name, delta] : seeds) {
        add_op(ClosureOperator::with_delta(name, delta, n, true), true);
    }
    if (opts.adjoin_unbounded_acl) {
        add_op(ClosureOperator::semantic("acl", Bound::unbounded()), true);
    }

    auto leq_profiles = [&](const std::vector<ElemSet>& a, const std::vector<ElemSet>& b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (!a[k].subset_of(b[k])) return false;
        }
        return true;
    };

    // Close under meet (and join in lattice mode). Comparable pairs already
    // contain their meet/join, so only incomparable pairs spawn new work.
    std::set<std::pair<int, int>> processed;
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t count = poset.elements.size();
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) {
                if (!processed.emplace(static_cast<int>(i), static_cast<int>(j)).second) continue;
                bool ij = leq_profiles(poset.profiles[i], poset.profiles[j]);
                bool ji = leq_profiles(poset.profiles[j], poset.profiles[i]);
                if (ij || ji) continue;
                std::size_t before = poset.elements.size();
                add_op(make_meet_node(poset.elements[i], poset.elements[j]), false);
                if (mode == PosetMode::Lattice) {
                    auto joined = join_impl(s, poset.elements[i], poset.elements[j], opts);
                    if (joined) add_op(*joined, false);
                }
                if (poset.elements.size() != before) grew = true;
            }
        }
    }

    std::size_t count = poset.elements.size();
    poset.leq.assign(count, std::vector<char>(count, 0));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            poset.leq[i][j] = leq_profiles(poset.profiles[i], poset.profiles[j]) ? 1 : 0;
        }
    }

    auto glb = [&](int i, int j) -> int {
        int best = -1;
        for (int k = 0; k < static_cast<int>(count); ++k) {
            if (!poset.is_leq(k, i) || !poset.is_leq(k, j)) continue;
            if (best < 0 || poset.is_leq(best, k)) best = k;
        }
        if (best < 0) return -1;
        for (int k = 0; k < static_cast<int>(count); ++k) {
            if (poset.is_leq(k, i) && poset.is_leq(k, j) && !poset.is_leq(k, best)) return -1;
        }
        return best;
    };
    auto lub = [&](int i, int j) -> int {
        int best = -1;
        for (int k = 0; k < static_cast<int>(count); ++k) {
            if (!poset.is_leq(i, k) || !poset.is_leq(j, k)) continue;
            if (best < 0 || poset.is_leq(k, best)) best = k;
        }
        if (best < 0) return -1;
        for (int k = 0; k < static_cast<int>(count); ++k) {
            if (poset.is_leq(i, k) && poset.is_leq(j, k) && !poset.is_leq(best, k)) return -1;
        }
        return best;
    };

    poset.meet_table.assign(count, std::vector<int>(count, -1));
    poset.join_table.assign(count, std::vector<int>(count, -1));
    for (int i = 0; i < static_cast<int>(count); ++i) {
        for (int j = 0; j < static_cast<int>(count); ++j) {
            poset.meet_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = glb(i, j);
            poset.join_table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = lub(i, j);
        }
    }

    for (int i = 0; i < static_cast<int>(count); ++i) {
        for (int j = 0; j < static_cast<int>(count); ++j) {
            if (i == j || !poset.is_leq(i, j)) continue;
            bool covering = true;
            for (int k = 0; k < static_cast<int>(count) && covering; ++k) {
                if (k != i && k != j && poset.is_leq(i, k) && poset.is_leq(k, j)) covering = false;
            }
            if (covering) poset.hasse_edges.emplace_back(i, j);
        }
    }
    std::sort(poset.hasse_edges.begin(), poset.hasse_edges.end());

    for (int i = 0; i < static_cast<int>(count); ++i) {
        bool least = true, greatest = true;
        for (int j = 0; j < static_cast<int>(count); ++j) {
            if (!poset.is_leq(i, j)) least = false;
            if (!poset.is_leq(j, i)) greatest = false;
        }
        if (least) poset.least = i;
        if (greatest) poset.greatest = i;
    }

    if (mode == PosetMode::Lattice) {
        bool total = true;
        for (std::size_t i = 0; i < count && total; ++i) {
            for (std::size_t j = 0; j < count && total; ++j) {
                if (poset.meet_table[i][j] < 0 || poset.join_table[i][j] < 0) total = false;
            }
        }
        if (total) {
            bool dist = true;
            for (std::size_t x = 0; x < count && dist; ++x) {
                for (std::size_t y = 0; y < count && dist; ++y) {
                    for (std::size_t z = 0; z < count && dist; ++z) {
                        int yz = poset.join_table[y][z];
                        int lhs = poset.meet_table[x][static_cast<std::size_t>(yz)];
                        int xy = poset.meet_table[x][y];
                        int xz = poset.meet_table[x][z];
                        int rhs = poset.join_table[static_cast<std::size_t>(xy)]
                                                  [static_cast<std::size_t>(xz)];
                        if (lhs != rhs) dist = false;
                    }
                }
            }
            poset.distributive = dist;
        }
    }

    return poset;
}

LatticeStats lattice_stats(const OperatorPoset& p) {
    std::size_t count = p.elements.size();
    if (count > 64) {
        throw std::runtime_error("poset too large for exact stats (" + std::to_string(count) +
                                 " > 64 operators)");
    }
    LatticeStats stats;
    stats.least = p.least;
    stats.greatest = p.greatest;
    stats.distributive = p.distributive;
    if (count == 0) return stats;

    // Height: longest-chain DP in order of strict-lower-set size.
    std::vector<int> below(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            if (i != j && p.is_leq(static_cast<int>(j), static_cast<int>(i))) ++below[i];
        }
    }
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
    std::vector<int> height(count, 1);
    for (std::size_t oi : order) {
        for (std::size_t j = 0; j < count; ++j) {
            if (j != oi && p.is_leq(static_cast<int>(j), static_cast<int>(oi))) {
                height[oi] = std::max(height[oi], height[j] + 1);
            }
        }
    }
    stats.height = *std::max_element(height.begin(), height.end());

    // Width by Dilworth: maximum antichain = n - maximum matching in the
    // bipartite comparability graph (strict pairs).
    std::vector<std::vector<int>> succ(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            if (i != j && p.is_leq(static_cast<int>(i), static_cast<int>(j))) {
                succ[i].push_back(static_cast<int>(j));
            }
        }
    }
    std::vector<int> match_right(count, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment =
        [&](std::size_t u, std::vector<bool>& visited) {
            for (int v : succ[u]) {
                if (visited[static_cast<std::size_t>(v)]) continue;
                visited[static_cast<std::size_t>(v)] = true;
                if (match_right[static_cast<std::size_t>(v)] < 0 ||
                    augment(static_cast<std::size_t>(match_right[static_cast<std::size_t>(v)]),
                            visited)) {
                    match_right[static_cast<std::size_t>(v)] = static_cast<int>(u);
                    return true;
                }
            }
            return false;
        };
    int matching = 0;
    for (std::size_t u = 0; u < count; ++u) {
        std::vector<bool> visited(count, false);
        if (augment(u, visited)) ++matching;
    }
    stats.width = static_cast<int>(count) - matching;
    return stats;
}

std::string export_hasse_dot(const OperatorPoset& p) {
    auto escape = [](const std::string& in) {
        std::string out;
        for (char c : in) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    std::ostringstream out;
    out << "digraph poset {\n";
    out << "  rankdir=BT;\n";
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
        out << "  n" << i << " [label=\"" << escape(p.names[i]) << "\\n"
            << escape(p.elements[i].summary()) << "\"];\n";
    }
    for (const auto& [lower, upper] : p.hasse_edges) {
        out << "  n" << lower << " -> n" << upper << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace closurelab
