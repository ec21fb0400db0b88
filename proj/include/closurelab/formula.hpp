#pragma once

#include <set>
#include <string>
#include <vector>

#include "closurelab/structure.hpp"

namespace closurelab {

// First-order formula with counting quantifiers. Counting quantifiers are
// primitive nodes, not sugar, so witness formulas like
// "E(x,y) & exists[<=2] z. E(z,y)" print back exactly as written.
struct Formula {
    enum class Kind {
        Truth,
        Falsity,
        Equal,        // vars[0] = vars[1]
        Atom,         // rel(vars...)
        Not,          // children[0]
        And,          // children[0] & children[1]
        Or,
        Implies,
        Exists,       // var, children[0]
        Forall,
        CountExists,  // cmp, count, var, children[0]
    };
    enum class CountCmp { Eq, Le, Ge };

    Kind kind = Kind::Truth;
    std::string rel;
    std::vector<std::string> vars;
    std::string var;
    CountCmp cmp = CountCmp::Eq;
    int count = 0;
    std::vector<Formula> children;

    bool operator==(const Formula&) const = default;

    static Formula truth();
    static Formula falsity();
    static Formula equal(std::string a, std::string b);
    static Formula atom(std::string rel, std::vector<std::string> args);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula exists(std::string v, Formula body);
    static Formula forall(std::string v, Formula body);
    static Formula count_exists(CountCmp cmp, int k, std::string v, Formula body);

    std::set<std::string> free_vars() const;
    std::size_t node_count() const;
    std::string to_text() const;
};

// One distinguished solution variable plus an ordered parameter tuple.
struct ParamFormula {
    std::string name;
    std::string solution_var;
    std::vector<std::string> param_vars;
    Formula body;

    bool operator==(const ParamFormula&) const = default;
    std::string to_text() const;  // "def name(x; y1,y2) = ..."
};

// Grammar: true, false, x = y, R(x,...), !f, f & g, f | g, f -> g,
// exists v. f, forall v. f, exists[=k] v. f, exists[<=k] v. f,
// exists[>=k] v. f, parentheses. Precedence ! > & > | > ->, quantifier
// scope maximal. Relation names and arities are checked against the
// signature; quantifying a variable that is already bound (or declared
// as a solution/parameter variable) is a shadowing error.
Formula parse_formula(const std::string& text, const Signature& sig);
Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::set<std::string>& outer_vars);

// Delta file: one "def name(x; y1,...,yk) = formula" per line, '#' comments.
std::vector<ParamFormula> parse_delta(const std::string& text, const Signature& sig);

}  // namespace closurelab
