#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "closurelab/algebraic_sets.hpp"
#include "closurelab/fixtures.hpp"
#include "closurelab/structure.hpp"

using namespace closurelab;

namespace {

Structure k2() {
    return parse_structure("structure K2\nuniverse 2\nrelation E/2 { (0,1) (1,0) }\n");
}

}  // namespace

TEST_CASE("invariance characterizes A-algebraic sets") {
    Structure eq = make_equivalence({3, 3, 3});
    ElemSet a{0};

    AlgebraicSetReport r1 = is_A_algebraic(eq, a, ElemSet{1, 2});
    CHECK(r1.is_invariant);
    REQUIRE(r1.orbit_decomposition.size() == 1);
    CHECK(r1.orbit_decomposition[0] == ElemSet{1, 2});
    CHECK(r1.deg_alg_u == 2);

    // 1 and 2 swap over {0}, so {1} alone is not invariant.
    AlgebraicSetReport r2 = is_A_algebraic(eq, a, ElemSet{1});
    CHECK_FALSE(r2.is_invariant);
    CHECK_FALSE(r2.deg_alg_u.has_value());

    AlgebraicSetReport r3 = is_A_algebraic(eq, a, ElemSet{});
    CHECK(r3.is_invariant);
    CHECK(r3.deg_alg_u == 0);
}

TEST_CASE("syntactic witness search") {
    Structure eq = make_equivalence({3, 3, 3});
    auto delta = parse_delta(
        "def id(x; y) = x = y\n"
        "def cls(x; y) = E(x,y)\n"
        "def other(x; y) = E(x,y) & !(x = y)\n",
        eq.signature);

    AlgebraicSetReport hit = is_A_algebraic(eq, ElemSet{0}, ElemSet{1, 2}, delta);
    REQUIRE(hit.witness.has_value());
    CHECK(hit.witness->first.name == "other");
    CHECK(hit.witness->second == std::vector<int>{0});

    AlgebraicSetReport miss = is_A_algebraic(eq, ElemSet{0}, ElemSet{0, 1}, delta);
    CHECK_FALSE(miss.witness.has_value());  // {0,1} is no instance (and not invariant)
}

TEST_CASE("exactly four A-algebraic sets of class scale") {
    Structure eq = make_equivalence({3, 3, 3});
    auto sets = enumerate_algebraic_sets(eq, ElemSet{0}, 3);
    REQUIRE(sets.size() == 4);
    CHECK(sets[0] == ElemSet{});
    CHECK(sets[1] == ElemSet{0});
    CHECK(sets[2] == ElemSet{1, 2});
    CHECK(sets[3] == ElemSet{0, 1, 2});
}

TEST_CASE("enumerate_algebraic_sets orderings and small cases") {
    Structure s = k2();
    auto sets = enumerate_algebraic_sets(s, ElemSet{}, 2);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0] == ElemSet{});
    CHECK(sets[1] == ElemSet{0, 1});

    // Over the full universe all orbits are singletons.
    auto singletons = enumerate_algebraic_sets(s, s.universe(), 1);
    REQUIRE(singletons.size() == 3);
    CHECK(singletons[0] == ElemSet{});
    CHECK(singletons[1] == ElemSet{0});
    CHECK(singletons[2] == ElemSet{1});

    // Every enumerated set re-validates as invariant, and the enumeration is
    // ordered by size then lexicographically.
    Structure eq = make_equivalence({2, 2, 2});
    auto all = enumerate_algebraic_sets(eq, ElemSet{0}, 6);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(is_A_algebraic(eq, ElemSet{0}, all[i]).is_invariant);
        if (i > 0) {
            bool ordered = all[i - 1].size() < all[i].size() ||
                           (all[i - 1].size() == all[i].size() && all[i - 1] < all[i]);
            CHECK(ordered);
        }
    }
}

TEST_CASE("deg_alg_u values") {
    Structure eq = make_equivalence({3, 3, 3});
    CHECK(deg_alg_u(eq, ElemSet{0}, ElemSet{0, 1, 2}) == 2);
    CHECK(deg_alg_u(eq, ElemSet{0}, ElemSet{}) == 0);
    CHECK(deg_alg_u(eq, ElemSet{0}, ElemSet{0}) == 1);
    CHECK_FALSE(deg_alg_u(eq, ElemSet{0}, ElemSet{3}).has_value());
    // Nonempty subsets of the dcl have degree 1.
    Structure chain = make_linear_order(4);
    CHECK(deg_alg_u(chain, ElemSet{}, ElemSet{0, 2}) == 1);
}

TEST_CASE("DEG_alg_u with scope bounds") {
    Structure eq = make_equivalence({3, 3, 3});
    CHECK(DEG_alg_u(eq, ElemSet{0}, 2) == 2);   // orbits {0},{1,2},{3..8}
    CHECK(DEG_alg_u(eq, ElemSet{0}, 9) == 6);   // the six-element orbit now counts
    CHECK(DEG_alg_u(eq, ElemSet{0}, 1) == 1);
    CHECK(DEG_alg_u(eq, eq.universe(), 9) == 1);  // algebraically closed, nonempty
    CHECK(DEG_alg_u(k2(), ElemSet{}, 2) == 2);
    CHECK(DEG_alg_u(k2(), ElemSet{}, 1) == 0);  // no orbit qualifies
}
