#include "closurelab/structure.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace closurelab {

const RelationDecl* Signature::find_relation(const std::string& name) const {
    for (const auto& r : relations) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

bool Signature::has_constant(const std::string& name) const {
    for (const auto& c : constants) {
        if (c == name) return true;
    }
    return false;
}

bool Structure::holds(const std::string& relation, const std::vector<int>& tuple) const {
    auto it = interpretation.find(relation);
    if (it == interpretation.end()) return false;
    return it->second.count(tuple) > 0;
}

namespace {

// Character cursor with line/column tracking for error reporting.
class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, line_, col_);
    }

    std::string word() {
        skip_space_and_comments();
        if (at_end()) fail("unexpected end of input");
        std::size_t start = pos_;
        while (!at_end()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                advance();
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    int number() {
        skip_space_and_comments();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("expected number");
        }
        long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (advance() - '0');
            if (v > 1000000000L) fail("number too large");
        }
        return static_cast<int>(v);
    }

    void expect(char c) {
        skip_space_and_comments();
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool accept(char c) {
        skip_space_and_comments();
        if (!at_end() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    int line() const { return line_; }
    int col() const { return col_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Structure parse_structure_text(const std::string& text) {
    Cursor cur(text);
    Structure s;
    bool have_universe = false;
    for (;;) {
        cur.skip_space_and_comments();
        if (cur.at_end()) break;
        int line = cur.line();
        int col = cur.col();
        std::string kw = cur.word();
        if (kw == "structure") {
            s.name = cur.word();
        } else if (kw == "universe") {
            int n = cur.number();
            if (n <= 0) throw parse_error("universe size must be positive", line, col);
            s.size = n;
            have_universe = true;
        } else if (kw == "relation") {
            std::string rname = cur.word();
            cur.expect('/');
            int arity = cur.number();
            if (arity < 1) throw parse_error("arity must be >= 1", line, col);
            if (s.signature.find_relation(rname) || s.signature.has_constant(rname)) {
                throw parse_error("duplicate name '" + rname + "'", line, col);
            }
            if (!have_universe) throw parse_error("relation before universe declaration", line, col);
            s.signature.relations.push_back({rname, arity});
            auto& tuples = s.interpretation[rname];
            cur.expect('{');
            while (!cur.accept('}')) {
                cur.expect('(');
                std::vector<int> tuple;
                for (int i = 0; i < arity; ++i) {
                    if (i) cur.expect(',');
                    int tl = cur.line();
                    int tc = cur.col();
                    int e = cur.number();
                    if (e >= s.size) throw parse_error("element out of range", tl, tc);
                    tuple.push_back(e);
                }
                cur.skip_space_and_comments();
                if (cur.peek() == ',') cur.fail("arity mismatch: too many entries in tuple");
                cur.expect(')');
                tuples.insert(tuple);
            }
        } else if (kw == "constant") {
            std::string cname = cur.word();
            if (s.signature.find_relation(cname) || s.signature.has_constant(cname)) {
                throw parse_error("duplicate name '" + cname + "'", line, col);
            }
            if (!have_universe) throw parse_error("constant before universe declaration", line, col);
            cur.expect('=');
            int cl = cur.line();
            int cc = cur.col();
            int e = cur.number();
            if (e >= s.size) throw parse_error("element out of range", cl, cc);
            s.signature.constants.push_back(cname);
            s.constant_values[cname] = e;
        } else {
            throw parse_error("unknown declaration '" + kw + "'", line, col);
        }
    }
    if (!have_universe) throw parse_error("missing universe declaration", 1, 1);
    return s;
}

}  // namespace

Structure parse_structure(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return structure_from_json(text);
        break;
    }
    return parse_structure_text(text);
}

std::string serialize_structure(const Structure& s) {
    std::ostringstream out;
    if (!s.name.empty()) out << "structure " << s.name << "\n";
    out << "universe " << s.size << "\n";
    for (const auto& r : s.signature.relations) {
        out << "relation " << r.name << "/" << r.arity << " {";
        auto it = s.interpretation.find(r.name);
        if (it != s.interpretation.end()) {
            for (const auto& tuple : it->second) {
                out << " (";
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    if (i) out << ",";
                    out << tuple[i];
                }
                out << ")";
            }
        }
        out << " }\n";
    }
    for (const auto& c : s.signature.constants) {
        out << "constant " << c << " = " << s.constant_values.at(c) << "\n";
    }
    return out.str();
}

std::string structure_to_json(const Structure& s) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["name"] = s.name;
    j["size"] = s.size;
    j["relations"] = nlohmann::ordered_json::array();
    for (const auto& r : s.signature.relations) {
        nlohmann::ordered_json rel;
        rel["name"] = r.name;
        rel["arity"] = r.arity;
        rel["tuples"] = nlohmann::ordered_json::array();
        auto it = s.interpretation.find(r.name);
        if (it != s.interpretation.end()) {
            for (const auto& t : it->second) rel["tuples"].push_back(t);
        }
        j["relations"].push_back(rel);
    }
    j["constants"] = nlohmann::ordered_json::object();
    for (const auto& [cname, value] : s.constant_values) j["constants"][cname] = value;
    return j.dump(2) + "\n";
}

Structure structure_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), 1, 1);
    }
    Structure s;
    try {
        s.name = j.value("name", std::string{});
        s.size = j.at("size").get<int>();
        if (s.size <= 0) throw parse_error("universe size must be positive", 1, 1);
        for (const auto& rel : j.at("relations")) {
            RelationDecl decl{rel.at("name").get<std::string>(), rel.at("arity").get<int>()};
            if (decl.arity < 1) throw parse_error("arity must be >= 1", 1, 1);
            if (s.signature.find_relation(decl.name)) {
                throw parse_error("duplicate name '" + decl.name + "'", 1, 1);
            }
            s.signature.relations.push_back(decl);
            auto& tuples = s.interpretation[decl.name];
            for (const auto& t : rel.at("tuples")) {
                std::vector<int> tuple = t.get<std::vector<int>>();
                if (static_cast<int>(tuple.size()) != decl.arity) {
                    throw parse_error("arity mismatch in tuple for '" + decl.name + "'", 1, 1);
                }
                for (int e : tuple) {
                    if (e < 0 || e >= s.size) throw parse_error("element out of range", 1, 1);
                }
                tuples.insert(tuple);
            }
        }
        if (j.contains("constants")) {
            for (const auto& [cname, value] : j.at("constants").items()) {
                if (s.signature.find_relation(cname) || s.signature.has_constant(cname)) {
                    throw parse_error("duplicate name '" + cname + "'", 1, 1);
                }
                int e = value.get<int>();
                if (e < 0 || e >= s.size) throw parse_error("element out of range", 1, 1);
                s.signature.constants.push_back(cname);
                s.constant_values[cname] = e;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid structure JSON: ") + e.what(), 1, 1);
    }
    return s;
}

std::vector<std::string> validate_structure(const Structure& s) {
    std::vector<std::string> out;
    if (s.size <= 0) out.push_back("universe size must be positive");
    std::set<std::string> names;
    for (const auto& r : s.signature.relations) {
        if (!names.insert(r.name).second) out.push_back("duplicate name '" + r.name + "'");
        if (r.arity < 1) out.push_back("relation '" + r.name + "' has arity < 1");
    }
    for (const auto& c : s.signature.constants) {
        if (!names.insert(c).second) out.push_back("duplicate name '" + c + "'");
    }
    for (const auto& r : s.signature.relations) {
        auto it = s.interpretation.find(r.name);
        if (it == s.interpretation.end()) {
            out.push_back("relation '" + r.name + "' is not interpreted");
            continue;
        }
        for (const auto& tuple : it->second) {
            if (static_cast<int>(tuple.size()) != r.arity) {
                out.push_back("relation '" + r.name + "' contains a tuple of wrong arity");
                break;
            }
        }
        for (const auto& tuple : it->second) {
            bool bad = false;
            for (int e : tuple) {
                if (e < 0 || e >= s.size) bad = true;
            }
            if (bad) {
                out.push_back("relation '" + r.name + "' contains an element out of range");
                break;
            }
        }
    }
    for (const auto& [rname, tuples] : s.interpretation) {
        (void)tuples;
        if (!s.signature.find_relation(rname)) {
            out.push_back("relation '" + rname + "' interpreted but not declared");
        }
    }
    for (const auto& c : s.signature.constants) {
        auto it = s.constant_values.find(c);
        if (it == s.constant_values.end()) {
            out.push_back("constant '" + c + "' is not interpreted");
        } else if (it->second < 0 || it->second >= s.size) {
            out.push_back("constant '" + c + "' maps to an element out of range");
        }
    }
    for (const auto& [cname, value] : s.constant_values) {
        (void)value;
        if (!s.signature.has_constant(cname)) {
            out.push_back("constant '" + cname + "' interpreted but not declared");
        }
    }
    return out;
}

}  // namespace closurelab
