#include "doctest.h"

#include "cps/factor.hpp"

using namespace cps;

namespace {
IntPoly P(std::initializer_list<long> lowfirst) {
    return IntPoly::from_int_list(std::vector<long>(lowfirst));
}
} // namespace

TEST_CASE("x^4 - 1 splits into linear and quadratic parts") {
    FactorList fl = factor_over_q(P({-1, 0, 0, 0, 1}));
    REQUIRE(fl.factors.size() == 3);
    CHECK(fl.factors[0].first == P({-1, 1})); // x - 1
    CHECK(fl.factors[1].first == P({1, 1}));  // x + 1
    CHECK(fl.factors[2].first == P({1, 0, 1})); // x^2 + 1
    for (const auto& [f, m] : fl.factors) CHECK(m == 1);
    CHECK(fl.product() == P({-1, 0, 0, 0, 1}));
}

TEST_CASE("irreducible quadratics and cubics pass through") {
    CHECK(is_irreducible(P({-1, -1, 1})));
    CHECK(is_irreducible(P({1, -1, -2, 1})));
    CHECK(is_irreducible(P({1, 1, 1, 1, 1}))); // Phi_5
    CHECK(is_irreducible(P({1, 0, 0, 0, 1}))); // Phi_8
}

TEST_CASE("multiplicities survive through squarefree decomposition") {
    IntPoly fib = P({-1, -1, 1});
    IntPoly f = mul(mul(fib, fib), P({1, 1})); // (x^2-x-1)^2 (x+1)
    FactorList fl = factor_over_q(f);
    REQUIRE(fl.factors.size() == 2);
    CHECK(fl.factors[0].first == P({1, 1}));
    CHECK(fl.factors[0].second == 1);
    CHECK(fl.factors[1].first == fib);
    CHECK(fl.factors[1].second == 2);
}

TEST_CASE("product of distinct irreducibles is recovered exactly") {
    std::vector<IntPoly> irr = {
        P({-1, -1, 1}),      // x^2 - x - 1
        P({1, -1, 1}),       // x^2 - x + 1 (Phi_6)
        P({1, -1, -2, 1}),   // cyclic cubic
        P({-1, 1}),          // x - 1
        P({3, 1}),           // x + 3
        P({1, 1, 1, 1, 1}),  // Phi_5
    };
    IntPoly prod = P({1});
    for (const IntPoly& f : irr) prod = mul(prod, f);
    FactorList fl = factor_over_q(prod);
    REQUIRE(fl.factors.size() == irr.size());
    CHECK(fl.product() == prod);
    for (const auto& [f, m] : fl.factors) {
        CHECK(m == 1);
        CHECK(std::find(irr.begin(), irr.end(), f) != irr.end());
    }
}

TEST_CASE("close-but-reducible cases are separated") {
    // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2): no rational roots, two
    // conjugate pairs with equal modulus.
    FactorList fl = factor_over_q(P({4, 0, 0, 0, 1}));
    REQUIRE(fl.factors.size() == 2);
    CHECK(fl.factors[0].first == P({2, -2, 1}));
    CHECK(fl.factors[1].first == P({2, 2, 1}));

    // x^4 + 1 is irreducible even though it factors over every F_p.
    CHECK(is_irreducible(P({1, 0, 0, 0, 1})));
}

TEST_CASE("non-monic and constant inputs are rejected") {
    CHECK_THROWS_AS(factor_over_q(P({1, 2})), domain_error);
    CHECK_THROWS_AS(factor_over_q(P({5})), domain_error);
    CHECK_THROWS_AS(factor_over_q(IntPoly{}), domain_error);
}

TEST_CASE("deterministic factor order: degree then lexicographic") {
    IntPoly f = mul(mul(P({-2, 1}), P({1, 1})), P({1, 0, 1}));
    FactorList a = factor_over_q(f);
    FactorList b = factor_over_q(f);
    REQUIRE(a.factors.size() == 3);
    CHECK(a.factors[0].first == P({-2, 1}));
    CHECK(a.factors[1].first == P({1, 1}));
    CHECK(a.factors[2].first == P({1, 0, 1}));
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        CHECK(a.factors[i].first == b.factors[i].first);
}
