#include "closurelab/formula.hpp"

#include <cctype>
#include <sstream>

namespace closurelab {

Formula Formula::truth() {
    return Formula{};
}

Formula Formula::falsity() {
    Formula f;
    f.kind = Kind::Falsity;
    return f;
}

Formula Formula::equal(std::string a, std::string b) {
    Formula f;
    f.kind = Kind::Equal;
    f.vars = {std::move(a), std::move(b)};
    return f;
}

Formula Formula::atom(std::string rel, std::vector<std::string> args) {
    Formula f;
    f.kind = Kind::Atom;
    f.rel = std::move(rel);
    f.vars = std::move(args);
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.children.push_back(std::move(g));
    return f;
}

Formula Formula::conj(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::And;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

Formula Formula::disj(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Or;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

Formula Formula::implies(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Implies;
    f.children.push_back(std::move(a));
    f.children.push_back(std::move(b));
    return f;
}

Formula Formula::exists(std::string v, Formula body) {
    Formula f;
    f.kind = Kind::Exists;
    f.var = std::move(v);
    f.children.push_back(std::move(body));
    return f;
}

Formula Formula::forall(std::string v, Formula body) {
    Formula f;
    f.kind = Kind::Forall;
    f.var = std::move(v);
    f.children.push_back(std::move(body));
    return f;
}

Formula Formula::count_exists(CountCmp cmp, int k, std::string v, Formula body) {
    Formula f;
    f.kind = Kind::CountExists;
    f.cmp = cmp;
    f.count = k;
    f.var = std::move(v);
    f.children.push_back(std::move(body));
    return f;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
    switch (f.kind) {
        case Formula::Kind::Truth:
        case Formula::Kind::Falsity:
            return;
        case Formula::Kind::Equal:
        case Formula::Kind::Atom:
            for (const auto& v : f.vars) {
                if (!bound.count(v)) out.insert(v);
            }
            return;
        case Formula::Kind::Not:
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            for (const auto& c : f.children) collect_free(c, bound, out);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::CountExists: {
            bool inserted = bound.insert(f.var).second;
            collect_free(f.children[0], bound, out);
            if (inserted) bound.erase(f.var);
            return;
        }
    }
}

}  // namespace

std::set<std::string> Formula::free_vars() const {
    std::set<std::string> bound, out;
    collect_free(*this, bound, out);
    return out;
}

std::size_t Formula::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
}

namespace {

// Precedence levels for printing: implies/quantifiers 0, or 1, and 2,
// not 3, atoms 4.
int print_level(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Implies:
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::CountExists:
            return 0;
        case Formula::Kind::Or:
            return 1;
        case Formula::Kind::And:
            return 2;
        case Formula::Kind::Not:
            return 3;
        default:
            return 4;
    }
}

void print(const Formula& f, int required, std::string& out) {
    bool paren = print_level(f) < required;
    if (paren) out += "(";
    switch (f.kind) {
        case Formula::Kind::Truth:
            out += "true";
            break;
        case Formula::Kind::Falsity:
            out += "false";
            break;
        case Formula::Kind::Equal:
            out += f.vars[0] + " = " + f.vars[1];
            break;
        case Formula::Kind::Atom:
            out += f.rel + "(";
            for (std::size_t i = 0; i < f.vars.size(); ++i) {
                if (i) out += ",";
                out += f.vars[i];
            }
            out += ")";
            break;
        case Formula::Kind::Not:
            out += "!";
            print(f.children[0], 5, out);
            break;
        case Formula::Kind::And:
            print(f.children[0], 2, out);
            out += " & ";
            print(f.children[1], 3, out);
            break;
        case Formula::Kind::Or:
            print(f.children[0], 1, out);
            out += " | ";
            print(f.children[1], 2, out);
            break;
        case Formula::Kind::Implies:
            print(f.children[0], 1, out);
            out += " -> ";
            print(f.children[1], 0, out);
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::CountExists:
            if (f.kind == Formula::Kind::Forall) {
                out += "forall";
            } else {
                out += "exists";
            }
            if (f.kind == Formula::Kind::CountExists) {
                out += "[";
                if (f.cmp == Formula::CountCmp::Eq) out += "=";
                if (f.cmp == Formula::CountCmp::Le) out += "<=";
                if (f.cmp == Formula::CountCmp::Ge) out += ">=";
                out += std::to_string(f.count) + "]";
            }
            out += " " + f.var + ". ";
            print(f.children[0], 0, out);
            break;
    }
    if (paren) out += ")";
}

}  // namespace

std::string Formula::to_text() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

std::string ParamFormula::to_text() const {
    std::string out = "def " + name + "(" + solution_var + ";";
    for (std::size_t i = 0; i < param_vars.size(); ++i) {
        if (i) out += ",";
        else out += " ";
        out += param_vars[i];
    }
    out += ") = " + body.to_text();
    return out;
}

namespace {

struct Token {
    enum class Type { Ident, Number, Punct, End };
    Type type = Type::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    Lexer(const std::string& text, int base_line) : text_(text), line_(base_line) {
        next_ = scan();
    }

    const Token& peek() const { return next_; }

    Token take() {
        Token t = next_;
        next_ = scan();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw parse_error(msg, at.line, at.col);
    }

private:
    Token scan() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            t.type = Token::Type::Ident;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++col_;
            }
            t.type = Token::Type::Number;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        t.type = Token::Type::Punct;
        // Two-character operators first.
        if (pos_ + 1 < text_.size()) {
            std::string two = text_.substr(pos_, 2);
            if (two == "->" || two == "<=" || two == ">=") {
                t.text = two;
                pos_ += 2;
                col_ += 2;
                return t;
            }
        }
        t.text = std::string(1, c);
        ++pos_;
        ++col_;
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
    int col_ = 1;
    Token next_;
};

class FormulaParser {
public:
    FormulaParser(Lexer& lex, const Signature& sig, std::set<std::string> bound)
        : lex_(lex), sig_(sig), bound_(std::move(bound)) {}

    Formula parse_top() {
        Formula f = parse_implies();
        if (lex_.peek().type != Token::Type::End) {
            lex_.fail("unexpected trailing input '" + lex_.peek().text + "'", lex_.peek());
        }
        return f;
    }

    // Used by parse_delta, which owns the rest of the line.
    Formula parse_expr() { return parse_implies(); }

private:
    Formula parse_implies() {
        Formula lhs = parse_or();
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "->") {
            lex_.take();
            return Formula::implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "|") {
            lex_.take();
            lhs = Formula::disj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "&") {
            lex_.take();
            lhs = Formula::conj(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Formula parse_unary() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Punct && t.text == "!") {
            lex_.take();
            return Formula::negation(parse_unary());
        }
        if (t.type == Token::Type::Ident && (t.text == "exists" || t.text == "forall")) {
            return parse_quantifier();
        }
        return parse_primary();
    }

    Formula parse_quantifier() {
        Token kw = lex_.take();
        bool counting = false;
        Formula::CountCmp cmp = Formula::CountCmp::Eq;
        int count = 0;
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "[") {
            if (kw.text == "forall") lex_.fail("counting bounds apply to 'exists' only", kw);
            counting = true;
            lex_.take();
            Token op = lex_.take();
            if (op.type != Token::Type::Punct ||
                (op.text != "=" && op.text != "<=" && op.text != ">=")) {
                lex_.fail("expected one of '=', '<=', '>=' in counting quantifier", op);
            }
            if (op.text == "<=") cmp = Formula::CountCmp::Le;
            if (op.text == ">=") cmp = Formula::CountCmp::Ge;
            Token num = lex_.take();
            if (num.type != Token::Type::Number) lex_.fail("expected count", num);
            count = std::stoi(num.text);
            Token close = lex_.take();
            if (close.type != Token::Type::Punct || close.text != "]") {
                lex_.fail("expected ']'", close);
            }
        }
        Token var = lex_.take();
        if (var.type != Token::Type::Ident) lex_.fail("expected quantified variable", var);
        if (is_keyword(var.text)) lex_.fail("'" + var.text + "' cannot be a variable", var);
        if (bound_.count(var.text)) {
            lex_.fail("variable shadowing: '" + var.text + "' is already bound", var);
        }
        Token dot = lex_.take();
        if (dot.type != Token::Type::Punct || dot.text != ".") lex_.fail("expected '.'", dot);
        bound_.insert(var.text);
        Formula body = parse_implies();  // quantifier scope is maximal
        bound_.erase(var.text);
        if (counting) return Formula::count_exists(cmp, count, var.text, std::move(body));
        if (kw.text == "forall") return Formula::forall(var.text, std::move(body));
        return Formula::exists(var.text, std::move(body));
    }

    Formula parse_primary() {
        Token t = lex_.take();
        if (t.type == Token::Type::Punct && t.text == "(") {
            Formula f = parse_implies();
            Token close = lex_.take();
            if (close.type != Token::Type::Punct || close.text != ")") {
                lex_.fail("expected ')'", close);
            }
            return f;
        }
        if (t.type != Token::Type::Ident) {
            lex_.fail("expected formula, got '" + t.text + "'", t);
        }
        if (t.text == "true") return Formula::truth();
        if (t.text == "false") return Formula::falsity();
        if (is_keyword(t.text)) lex_.fail("unexpected keyword '" + t.text + "'", t);

        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "(") {
            // Relation atom.
            const RelationDecl* decl = sig_.find_relation(t.text);
            if (!decl) lex_.fail("unknown relation '" + t.text + "'", t);
            lex_.take();
            std::vector<std::string> args;
            for (;;) {
                Token a = lex_.take();
                if (a.type != Token::Type::Ident || is_keyword(a.text)) {
                    lex_.fail("expected variable", a);
                }
                args.push_back(a.text);
                Token sep = lex_.take();
                if (sep.type == Token::Type::Punct && sep.text == ",") continue;
                if (sep.type == Token::Type::Punct && sep.text == ")") break;
                lex_.fail("expected ',' or ')'", sep);
            }
            if (static_cast<int>(args.size()) != decl->arity) {
                lex_.fail("arity mismatch: " + t.text + " expects " +
                              std::to_string(decl->arity) + " arguments, got " +
                              std::to_string(args.size()),
                          t);
            }
            return Formula::atom(t.text, std::move(args));
        }
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == "=") {
            lex_.take();
            Token rhs = lex_.take();
            if (rhs.type != Token::Type::Ident || is_keyword(rhs.text)) {
                lex_.fail("expected variable on right side of '='", rhs);
            }
            return Formula::equal(t.text, rhs.text);
        }
        lex_.fail("expected '(' or '=' after '" + t.text + "'", t);
    }

    static bool is_keyword(const std::string& s) {
        return s == "true" || s == "false" || s == "exists" || s == "forall" || s == "def";
    }

    Lexer& lex_;
    const Signature& sig_;
    std::set<std::string> bound_;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
    return parse_formula(text, sig, {});
}

Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::set<std::string>& outer_vars) {
    Lexer lex(text, 1);
    FormulaParser parser(lex, sig, outer_vars);
    return parser.parse_top();
}

std::vector<ParamFormula> parse_delta(const std::string& text, const Signature& sig) {
    std::vector<ParamFormula> out;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        Lexer lex(line, line_no);
        Token kw = lex.take();
        if (kw.type != Token::Type::Ident || kw.text != "def") {
            throw parse_error("expected 'def'", line_no, kw.col);
        }
        Token name = lex.take();
        if (name.type != Token::Type::Ident) throw parse_error("expected name", line_no, name.col);
        if (!seen.insert(name.text).second) {
            throw parse_error("duplicate definition name '" + name.text + "'", line_no, name.col);
        }
        Token open = lex.take();
        if (open.type != Token::Type::Punct || open.text != "(") {
            throw parse_error("expected '('", line_no, open.col);
        }
        Token sol = lex.take();
        if (sol.type != Token::Type::Ident) {
            throw parse_error("expected solution variable", line_no, sol.col);
        }
        Token semi = lex.take();
        if (semi.type != Token::Type::Punct || semi.text != ";") {
            throw parse_error("expected ';'", line_no, semi.col);
        }
        std::vector<std::string> params;
        std::set<std::string> declared{sol.text};
        if (!(lex.peek().type == Token::Type::Punct && lex.peek().text == ")")) {
            for (;;) {
                Token p = lex.take();
                if (p.type != Token::Type::Ident) {
                    throw parse_error("expected parameter variable", line_no, p.col);
                }
                if (!declared.insert(p.text).second) {
                    throw parse_error("duplicate variable '" + p.text + "'", line_no, p.col);
                }
                params.push_back(p.text);
                if (lex.peek().type == Token::Type::Punct && lex.peek().text == ",") {
                    lex.take();
                    continue;
                }
                break;
            }
        }
        Token close = lex.take();
        if (close.type != Token::Type::Punct || close.text != ")") {
            throw parse_error("expected ')'", line_no, close.col);
        }
        Token eq = lex.take();
        if (eq.type != Token::Type::Punct || eq.text != "=") {
            throw parse_error("expected '='", line_no, eq.col);
        }
        FormulaParser parser(lex, sig, declared);
        Formula body = parser.parse_top();

        for (const auto& v : body.free_vars()) {
            if (!declared.count(v)) {
                throw parse_error("free variable '" + v + "' is not declared in the head",
                                  line_no, 1);
            }
        }
        out.push_back(ParamFormula{name.text, sol.text, std::move(params), std::move(body)});
    }
    return out;
}

}  // namespace closurelab
