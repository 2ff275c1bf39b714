#include "doctest.h"

#include "cps/errors.hpp"
#include "cps/formal.hpp"

using namespace cps;

namespace {

std::shared_ptr<IsolatedRoots> iso(std::initializer_list<long> coeffs) {
    return std::make_shared<IsolatedRoots>(isolate_roots(IntPoly::from_int_list(coeffs), 128));
}

TowerElem golden(const std::shared_ptr<Tower>& T) {
    return adjoin_root(T, iso({-1, -1, 1}), 1, "tau");
}

} // namespace

TEST_CASE("monomial order is graded lexicographic") {
    const Monomial one = Monomial::one();
    const Monomial t1 = Monomial::var("t1");
    const Monomial t2 = Monomial::var("t2");
    CHECK(cmp_monomial(one, t1) < 0);
    CHECK(cmp_monomial(t1, t2) > 0);            // same degree, earlier name first
    CHECK(cmp_monomial(t2, t1 * t1) < 0);       // degree dominates
    CHECK(cmp_monomial(t1 * t2, t1 * t1) < 0);  // t1^2 beats t1*t2 at equal degree
    CHECK(cmp_monomial(t1, t1) == 0);
    CHECK((t1 * t2) == (t2 * t1));
    CHECK(divides(t1, t1 * t2));
    CHECK(!divides(t1 * t1, t1 * t2));
    CHECK(divide(t1 * t2, t1) == t2);
}

TEST_CASE("polynomial arithmetic with field coefficients") {
    auto T = Tower::make();
    TowerElem tau = golden(T);
    const TPoly t1 = TPoly::var("t1");
    const TPoly ctau(tau);

    TPoly prod = (t1 + ctau) * (t1 - ctau);
    CHECK(prod == t1 * t1 - ctau * ctau);
    CHECK(prod.degree() == 2);
    CHECK(prod.terms().size() == 2); // cross terms cancel exactly

    // tau^2 = tau + 1 in the coefficient field.
    TPoly sq = ctau * ctau;
    CHECK(sq.is_constant());
    CHECK(sq.constant() == tau + TowerElem(1));

    TPoly zero = prod - prod;
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);

    TPoly p = TPoly::var("a") * (t1 + TPoly(1));
    CHECK(p.vars() == std::vector<std::string>{"a", "t1"});
    CHECK_THROWS_AS(p.constant(), domain_error);
}

TEST_CASE("distributivity and expansion") {
    const TPoly t1 = TPoly::var("t1"), t2 = TPoly::var("t2");
    TPoly expanded = (TPoly(1) + t1) * (TPoly(1) + t2);
    CHECK(expanded == TPoly(1) + t1 + t2 + t1 * t2);
    CHECK(expanded.terms().size() == 4);

    TPoly a = t1 + TPoly(2), b = t2 * t2 - t1, c = TPoly(3) * t1 * t2;
    CHECK(a * (b + c) == a * b + a * c);
}

TEST_CASE("substitution evaluates exactly") {
    auto T = Tower::make();
    TowerElem tau = golden(T);
    TPoly p = TPoly::term(tau, Monomial::var("t1") * Monomial::var("t1")) +
              TPoly::var("t2") + TPoly(1);
    std::map<std::string, TowerElem> vals{{"t1", TowerElem(2)}, {"t2", TowerElem(3)}};
    CHECK(p.substitute(vals) == TowerElem(4) * tau + TowerElem(4));

    std::map<std::string, TowerElem> missing{{"t1", TowerElem(2)}};
    CHECK_THROWS_AS(p.substitute(missing), domain_error);

    // Substituting a tower value keeps everything in the field.
    std::map<std::string, TowerElem> alg{{"t1", tau}, {"t2", TowerElem(0)}};
    CHECK(p.substitute(alg) == tau * (tau + TowerElem(1)) + TowerElem(1));
}

TEST_CASE("exact division of polynomials") {
    auto T = Tower::make();
    TowerElem tau = golden(T);
    const TPoly t1 = TPoly::var("t1");
    const TPoly ctau(tau);

    auto q = divide_exact(t1 * t1 - ctau * ctau, t1 - ctau);
    REQUIRE(q.has_value());
    CHECK(*q == t1 + ctau);

    CHECK(!divide_exact(t1 * t1 + TPoly(1), t1 - TPoly(1)).has_value());
    CHECK(!divide_exact(t1, TPoly::var("t2")).has_value());
    CHECK_THROWS_AS(divide_exact(t1, TPoly()), domain_error);

    // Multivariate: (t1*t2 + t1) / t1 = t2 + 1.
    auto q2 = divide_exact(t1 * TPoly::var("t2") + t1, t1);
    REQUIRE(q2.has_value());
    CHECK(*q2 == TPoly::var("t2") + TPoly(1));
}

TEST_CASE("printing") {
    auto T = Tower::make();
    TowerElem tau = golden(T);
    CHECK(str(TPoly()) == "0");
    CHECK(str(TPoly(1)) == "1");
    CHECK(str(TPoly::var("t1")) == "t1");
    CHECK(str(TPoly::var("t1") * TPoly::var("t1")) == "t1^2");
    CHECK(str(TPoly(tau) * TPoly::var("t1")) == "tau*t1");
    CHECK(str((TPoly(tau) + TPoly(1)) * TPoly::var("t1")) == "(tau + 1)*t1");
}
