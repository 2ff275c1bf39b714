#include "doctest.h"

#include "cps/factor.hpp"
#include "cps/intpoly.hpp"
#include "cps/poly.hpp"

using namespace cps;

namespace {
IntPoly P(std::initializer_list<long> lowfirst) {
    return IntPoly::from_int_list(std::vector<long>(lowfirst));
}
} // namespace

TEST_CASE("construction trims trailing zeros") {
    CHECK(P({1, 2, 0, 0}).degree() == 1);
    CHECK(P({0}).is_zero());
    CHECK(P({}).is_zero());
}

TEST_CASE("pretty printing") {
    CHECK(P({1, -1, -2, 1}).str() == "x^3 - 2*x^2 - x + 1");
    CHECK(P({-1, -1, 1}).str() == "x^2 - x - 1");
    CHECK(P({0, 1}).str() == "x");
    CHECK(P({-5}).str() == "-5");
    CHECK(IntPoly{}.str() == "0");
}

TEST_CASE("multiplication and exact division invert each other") {
    IntPoly a = P({-1, -1, 1});
    IntPoly b = P({1, 0, 1});
    IntPoly ab = mul(a, b);
    auto q = divide_exact(ab, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK(!divide_exact(add(ab, P({1})), b).has_value());
}

TEST_CASE("content and primitive part") {
    CHECK(content(P({6, -9, 12})) == 3);
    CHECK(primitive_part(P({6, -9, 12})) == P({2, -3, 4}));
    // Sign normalization: leading coefficient ends positive.
    CHECK(primitive_part(P({6, -9, -12})) == P({-2, 3, 4}));
}

TEST_CASE("rational conversions") {
    QPoly half = {Rat(1, 2), Rat(3)};
    CHECK(from_q_primitive(half) == P({1, 6}));
    CHECK_THROWS_AS(from_q_integral(half), domain_error);
    CHECK(from_q_integral(P({4, 5}).to_q()) == P({4, 5}));
}

TEST_CASE("generic field polynomial division over Q") {
    QPoly f = P({-1, -1, 1}).to_q(); // x^2 - x - 1
    QPoly g = P({2, 1}).to_q();      // x + 2
    auto [q, r] = polyv::divmod(f, g);
    // x^2 - x - 1 = (x + 2)(x - 3) + 5
    CHECK(q == P({-3, 1}).to_q());
    CHECK(r == P({5}).to_q());
}

TEST_CASE("gcd over Q is monic and correct") {
    QPoly a = mul(P({-1, 1}), P({1, 1, 1})).to_q();
    QPoly b = mul(P({-1, 1}), P({3, 1})).to_q();
    CHECK(polyv::gcd_monic(a, b) == P({-1, 1}).to_q());
}

TEST_CASE("squarefree decomposition (Yun)") {
    // f = (x-1)^2 (x^2+1)
    IntPoly f = mul(mul(P({-1, 1}), P({-1, 1})), P({1, 0, 1}));
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == P({1, 0, 1}));
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == P({-1, 1}));
    CHECK(parts[1].second == 2);

    // Squarefree input comes back whole.
    auto single = squarefree_decomposition(P({-1, -1, 1}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == P({-1, -1, 1}));
    CHECK(single[0].second == 1);
}

TEST_CASE("polynomial evaluation") {
    CHECK(eval(P({-1, -1, 1}), Rat(2)) == Rat(1));
    CHECK(eval(P({-1, -1, 1}), Rat(1, 2)) == Rat(-5, 4));
}
