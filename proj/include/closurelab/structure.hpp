#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "closurelab/element_set.hpp"

namespace closurelab {

// Error with a source position, thrown by the structure and formula parsers.
struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                             ": " + msg),
          line(line),
          column(column) {}
    int line;
    int column;
};

struct RelationDecl {
    std::string name;
    int arity = 0;
    bool operator==(const RelationDecl&) const = default;
};

struct Signature {
    std::vector<RelationDecl> relations;
    std::vector<std::string> constants;

    const RelationDecl* find_relation(const std::string& name) const;
    bool has_constant(const std::string& name) const;
    bool operator==(const Signature&) const = default;
};

// A finite relational structure with universe {0..size-1}. Immutable by
// convention once built; nothing here mutates after construction.
struct Structure {
    std::string name;
    Signature signature;
    int size = 0;
    std::map<std::string, std::set<std::vector<int>>> interpretation;
    std::map<std::string, int> constant_values;

    bool holds(const std::string& relation, const std::vector<int>& tuple) const;
    ElemSet universe() const { return ElemSet::range(size); }
    bool operator==(const Structure&) const = default;
};

// Line-oriented text format:
//   structure <name>
//   universe <N>
//   relation <name>/<arity> { (a,b) (c,d) ... }
//   constant <name> = <element>
//   # comment
// A JSON document (first non-space byte '{') is accepted as well.
Structure parse_structure(const std::string& text);
std::string serialize_structure(const Structure& s);

std::string structure_to_json(const Structure& s);
Structure structure_from_json(const std::string& text);

// Empty means all Structure invariants hold; otherwise one message per
// violation, in a deterministic order.
std::vector<std::string> validate_structure(const Structure& s);

}  // namespace closurelab
