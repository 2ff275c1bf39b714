#include "doctest.h"

#include "cps/rational.hpp"

using namespace cps;

TEST_CASE("rational parsing round-trips and canonicalizes") {
    CHECK(to_string(parse_rational("3/2")) == "3/2");
    CHECK(to_string(parse_rational("-12/8")) == "-3/2");
    CHECK(to_string(parse_rational("+7")) == "7");
    CHECK(to_string(parse_rational("0")) == "0");
    CHECK(to_string(parse_rational("0/5")) == "0");
}

TEST_CASE("rational parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), parse_error);
    CHECK_THROWS_AS(parse_rational("1.5"), parse_error);
    CHECK_THROWS_AS(parse_rational("3/"), parse_error);
    CHECK_THROWS_AS(parse_rational("/2"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), parse_error);
    CHECK_THROWS_AS(parse_rational(" 1"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("0x10"), parse_error);
}

TEST_CASE("integer helpers") {
    CHECK(is_integer(parse_rational("4/2")));
    CHECK(to_integer(parse_rational("4/2")) == 2);
    CHECK_THROWS_AS(to_integer(parse_rational("1/2")), domain_error);
    CHECK(floor_int(parse_rational("-3/2")) == -2);
    CHECK(ceil_int(parse_rational("-3/2")) == -1);
    CHECK(floor_int(parse_rational("7/2")) == 3);
    CHECK(ceil_int(parse_rational("7/2")) == 4);
}

TEST_CASE("symmetric mod lands in (-m/2, m/2]") {
    Int m(7);
    for (long x = -25; x <= 25; ++x) {
        Int r = symmetric_mod(Int(x), m);
        CHECK(2 * r <= m);
        CHECK(2 * r > -m);
        CHECK((Int(x) - r) % m == 0);
    }
}
