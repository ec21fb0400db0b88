#include "closurelab/eval.hpp"

#include <stdexcept>

namespace closurelab {

namespace {

bool has_quantifier(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::CountExists:
            return true;
        default:
            for (const auto& c : f.children) {
                if (has_quantifier(c)) return true;
            }
            return false;
    }
}

// Innermost binding wins; bindings are pushed and popped around quantifiers.
struct Env {
    std::vector<std::pair<std::string, int>> frames;

    int lookup(const std::string& v) const {
        for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
            if (it->first == v) return it->second;
        }
        throw std::runtime_error("unassigned free variable '" + v + "'");
    }
};

bool eval_rec(const Structure& s, const Formula& f, Env& env) {
    switch (f.kind) {
        case Formula::Kind::Truth:
            return true;
        case Formula::Kind::Falsity:
            return false;
        case Formula::Kind::Equal:
            return env.lookup(f.vars[0]) == env.lookup(f.vars[1]);
        case Formula::Kind::Atom: {
            // Parsed formulas are checked against the signature already;
            // this guards hand-built ASTs.
            const RelationDecl* decl = s.signature.find_relation(f.rel);
            if (!decl) throw std::runtime_error("unknown relation '" + f.rel + "'");
            if (decl->arity != static_cast<int>(f.vars.size())) {
                throw std::runtime_error("arity mismatch for relation '" + f.rel + "'");
            }
            std::vector<int> tuple;
            tuple.reserve(f.vars.size());
            for (const auto& v : f.vars) tuple.push_back(env.lookup(v));
            return s.holds(f.rel, tuple);
        }
        case Formula::Kind::Not:
            return !eval_rec(s, f.children[0], env);
        case Formula::Kind::And:
            return eval_rec(s, f.children[0], env) && eval_rec(s, f.children[1], env);
        case Formula::Kind::Or:
            return eval_rec(s, f.children[0], env) || eval_rec(s, f.children[1], env);
        case Formula::Kind::Implies:
            return !eval_rec(s, f.children[0], env) || eval_rec(s, f.children[1], env);
        case Formula::Kind::Exists: {
            env.frames.emplace_back(f.var, 0);
            bool found = false;
            for (int b = 0; b < s.size && !found; ++b) {
                env.frames.back().second = b;
                found = eval_rec(s, f.children[0], env);
            }
            env.frames.pop_back();
            return found;
        }
        case Formula::Kind::Forall: {
            env.frames.emplace_back(f.var, 0);
            bool all = true;
            for (int b = 0; b < s.size && all; ++b) {
                env.frames.back().second = b;
                all = eval_rec(s, f.children[0], env);
            }
            env.frames.pop_back();
            return all;
        }
        case Formula::Kind::CountExists: {
            env.frames.emplace_back(f.var, 0);
            int n = 0;
            for (int b = 0; b < s.size; ++b) {
                env.frames.back().second = b;
                if (eval_rec(s, f.children[0], env)) ++n;
            }
            env.frames.pop_back();
            switch (f.cmp) {
                case Formula::CountCmp::Eq:
                    return n == f.count;
                case Formula::CountCmp::Le:
                    return n <= f.count;
                case Formula::CountCmp::Ge:
                    return n >= f.count;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

bool evaluate(const Structure& s, const Formula& f,
              const std::map<std::string, int>& assignment, const EvalLimits& limits) {
    if (s.size > limits.max_quantified_universe && has_quantifier(f)) {
        throw std::runtime_error(
            "quantified evaluation rejected: universe size " + std::to_string(s.size) +
            " exceeds cap " + std::to_string(limits.max_quantified_universe));
    }
    for (const auto& v : f.free_vars()) {
        if (!assignment.count(v)) {
            throw std::runtime_error("unassigned free variable '" + v + "'");
        }
    }
    Env env;
    for (const auto& [v, val] : assignment) env.frames.emplace_back(v, val);
    return eval_rec(s, f, env);
}

ElemSet solutions(const Structure& s, const ParamFormula& pf,
                  const std::vector<int>& params, const EvalLimits& limits) {
    if (params.size() != pf.param_vars.size()) {
        throw std::runtime_error("parameter-count mismatch for '" + pf.name + "': expected " +
                                 std::to_string(pf.param_vars.size()) + ", got " +
                                 std::to_string(params.size()));
    }
    if (s.size > limits.max_quantified_universe && has_quantifier(pf.body)) {
        throw std::runtime_error(
            "quantified evaluation rejected: universe size " + std::to_string(s.size) +
            " exceeds cap " + std::to_string(limits.max_quantified_universe));
    }
    Env env;
    for (std::size_t i = 0; i < params.size(); ++i) {
        env.frames.emplace_back(pf.param_vars[i], params[i]);
    }
    env.frames.emplace_back(pf.solution_var, 0);
    ElemSet out;
    for (int b = 0; b < s.size; ++b) {
        env.frames.back().second = b;
        if (eval_rec(s, pf.body, env)) out.insert(b);
    }
    return out;
}

std::size_t count_solutions(const Structure& s, const ParamFormula& pf,
                            const std::vector<int>& params, const EvalLimits& limits) {
    return solutions(s, pf, params, limits).size();
}

}  // namespace closurelab
