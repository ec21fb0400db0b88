#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/fixtures.hpp"
#include "closurelab/structure.hpp"

using namespace closurelab;

namespace {

const char* k2_text = R"(
structure K2
universe 2
relation E/2 { (0,1) (1,0) }
)";

}  // namespace

TEST_CASE("parse minimal structure") {
    Structure s = parse_structure(k2_text);
    CHECK(s.name == "K2");
    CHECK(s.size == 2);
    CHECK(s.signature.relations.size() == 1);
    CHECK(s.signature.relations[0].name == "E");
    CHECK(s.signature.relations[0].arity == 2);
    CHECK(s.holds("E", {0, 1}));
    CHECK(s.holds("E", {1, 0}));
    CHECK_FALSE(s.holds("E", {0, 0}));
    CHECK(validate_structure(s).empty());
}

TEST_CASE("element out of range is rejected with location") {
    const char* text = "universe 2\nrelation E/2 { (0,5) }\n";
    try {
        parse_structure(text);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }
}

TEST_CASE("syntax and duplicate-name errors") {
    CHECK_THROWS_AS(parse_structure("universe 0\n"), parse_error);
    CHECK_THROWS_AS(parse_structure("relation E/2 { }\n"), parse_error);
    CHECK_THROWS_AS(
        parse_structure("universe 2\nrelation E/2 { }\nrelation E/1 { }\n"), parse_error);
    CHECK_THROWS_AS(parse_structure("universe 2\nconstant c = 2\n"), parse_error);
    CHECK_THROWS_AS(parse_structure("universe 2\nrelation E/2 { (0,1,1) }\n"), parse_error);
}

TEST_CASE("constants parse and serialize") {
    Structure s = parse_structure("universe 3\nconstant c = 1\n");
    CHECK(s.constant_values.at("c") == 1);
    CHECK(parse_structure(serialize_structure(s)) == s);  // nameless round-trips too
}

TEST_CASE("validate_structure reports each violation") {
    Structure s = parse_structure(k2_text);
    SUBCASE("valid fixture has no diagnostics") { CHECK(validate_structure(s).empty()); }
    SUBCASE("undeclared relation") {
        s.interpretation["F"] = {{0, 0}};
        auto diags = validate_structure(s);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].find("not declared") != std::string::npos);
    }
    SUBCASE("constant out of range") {
        s.signature.constants.push_back("c");
        s.constant_values["c"] = 2;
        auto diags = validate_structure(s);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].find("out of range") != std::string::npos);
    }
    SUBCASE("missing interpretation") {
        s.interpretation.erase("E");
        auto diags = validate_structure(s);
        REQUIRE(diags.size() == 1);
        CHECK(diags[0].find("not interpreted") != std::string::npos);
    }
}

TEST_CASE("fixture generators are deterministic and round-trip") {
    std::vector<Structure> fixtures = {
        make_equivalence({2, 2, 2}),      make_equivalence({3, 3, 3}),
        make_complete_bipartite(2, 3, 2), make_cyclic_order(5),
        make_linear_order(4),             make_hypergraph_tree(3, 2, 1),
        make_hypergraph_tree(3, 3, 1),
    };
    for (const auto& s : fixtures) {
        CAPTURE(s.name);
        CHECK(validate_structure(s).empty());
        CHECK(parse_structure(serialize_structure(s)) == s);
        CHECK(parse_structure(structure_to_json(s)) == s);
    }
    CHECK(make_equivalence({2, 2, 2}) == make_equivalence({2, 2, 2}));
    CHECK(generate_fixture("equivalence", {2, 2, 2}) == make_equivalence({2, 2, 2}));
}

TEST_CASE("equivalence fixture layout") {
    Structure s = make_equivalence({2, 2, 2});
    CHECK(s.size == 6);
    CHECK(s.holds("E", {0, 1}));
    CHECK(s.holds("E", {0, 0}));
    CHECK_FALSE(s.holds("E", {1, 2}));
    CHECK(s.holds("E", {4, 5}));

    // E is reflexive on its field, symmetric, and transitive (brute force).
    const auto& tuples = s.interpretation.at("E");
    for (const auto& t : tuples) {
        CHECK(tuples.count({t[0], t[0]}));
        CHECK(tuples.count({t[1], t[0]}));
        for (const auto& u : tuples) {
            if (u[0] == t[1]) CHECK(tuples.count({t[0], u[1]}));
        }
    }
}

TEST_CASE("hypergraph tree fixture matches the documented layout") {
    Structure s = make_hypergraph_tree(3, 2, 1);
    CHECK(s.size == 9);
    // Root E1-class {0,1,2}.
    CHECK(s.holds("E1", {0, 1}));
    CHECK(s.holds("E1", {1, 2}));
    // E2-classes {0,3,4}, {1,5,6}, {2,7,8}.
    CHECK(s.holds("E2", {0, 3}));
    CHECK(s.holds("E2", {3, 4}));
    CHECK(s.holds("E2", {1, 5}));
    CHECK(s.holds("E2", {2, 8}));
    CHECK_FALSE(s.holds("E2", {0, 5}));
    // Leaves sit in singleton classes of the other color.
    CHECK(s.holds("E1", {3, 3}));
    CHECK_FALSE(s.holds("E1", {3, 4}));
}

TEST_CASE("cyclic order fixture holds on rotational betweenness") {
    Structure s = make_cyclic_order(5);
    CHECK(s.size == 5);
    CHECK(s.holds("C", {0, 1, 2}));
    CHECK_FALSE(s.holds("C", {0, 2, 1}));
    CHECK(s.holds("C", {3, 4, 0}));
    // Exactly one orientation per distinct triple.
    int count = 0;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            for (int c = 0; c < 5; ++c) {
                if (s.holds("C", {a, b, c})) ++count;
            }
        }
    }
    CHECK(count == 5 * 4 * 3 / 2);
}

TEST_CASE("unknown fixture kind and bad parameters") {
    CHECK_THROWS(generate_fixture("moebius", {3}));
    CHECK_THROWS(generate_fixture("equivalence", {0}));
    CHECK_THROWS(generate_fixture("linear-order", {-1}));
    CHECK_THROWS(generate_fixture("cyclic-order", {1, 2}));
}
