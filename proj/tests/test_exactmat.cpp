#include "doctest.h"

#include "cps/errors.hpp"
#include "cps/exactmat.hpp"

using namespace cps;

namespace {

std::shared_ptr<IsolatedRoots> iso(std::initializer_list<long> coeffs) {
    return std::make_shared<IsolatedRoots>(isolate_roots(IntPoly::from_int_list(coeffs), 128));
}

ExactMatrix eval_intpoly_at(const IntPoly& f, const ExactMatrix& m) {
    ExactMatrix acc(m.rows, m.cols);
    for (std::size_t i = f.c.size(); i-- > 0;) {
        acc = m * acc;
        for (int k = 0; k < m.rows; ++k) acc.at(k, k) = acc.at(k, k) + TPoly(Rat(f.c[i]));
    }
    return acc;
}

} // namespace

TEST_CASE("companion matrices") {
    ExactMatrix fib = companion(IntPoly::from_int_list({-1, -1, 1}));
    CHECK(fib == ExactMatrix::from_int_rows({{0, 1}, {1, 1}}));

    CHECK(companion(IntPoly::from_int_list({-5, 1})) == ExactMatrix::from_int_rows({{5}}));

    IntPoly cubic = IntPoly::from_int_list({1, -1, -2, 1});
    ExactMatrix c3 = companion(cubic);
    CHECK(c3 == ExactMatrix::from_int_rows({{0, 1, 0}, {0, 0, 1}, {-1, 1, 2}}));
    CHECK(is_zero(eval_intpoly_at(cubic, c3))); // f(C_f) = 0

    IntPoly nonmonic;
    nonmonic.c = {Int(1), Int(2)};
    CHECK_THROWS_AS(companion(nonmonic), domain_error);
}

TEST_CASE("vandermonde eigencolumns") {
    auto T = Tower::make();
    auto src = iso({-1, -1, 1});
    auto roots = all_roots(T, src); // tau' then tau in canonical order
    ExactMatrix Zm = vandermonde_from_roots(roots);
    CHECK(Zm.at(0, 0) == TPoly(1));
    CHECK(Zm.at(1, 0) == TPoly(roots[0]));
    ExactMatrix C = companion(IntPoly::from_int_list({-1, -1, 1}));
    CHECK(C * Zm == Zm * diag(roots));

    auto T3 = Tower::make();
    auto src3 = iso({1, -1, -2, 1});
    auto roots3 = all_roots(T3, src3);
    ExactMatrix Z3 = vandermonde_from_roots(roots3);
    CHECK(companion(IntPoly::from_int_list({1, -1, -2, 1})) * Z3 == Z3 * diag(roots3));
}

TEST_CASE("real basis: all-real polynomial reduces to the vandermonde form") {
    auto T = Tower::make();
    auto src = iso({-1, -1, 1});
    auto roots = all_roots(T, src);
    RealBasis rb = real_basis_from_roots(T, roots, *src);
    CHECK(rb.Y == vandermonde_from_roots(roots));
    CHECK(rb.D == diag(roots));
}

TEST_CASE("real basis of x^2+1 is the identity with a rotation block") {
    auto T = Tower::make();
    auto src = iso({1, 0, 1});
    auto roots = all_roots(T, src);
    RealBasis rb = real_basis_from_roots(T, roots, *src);
    CHECK(rb.Y == ExactMatrix::identity(2));
    CHECK(rb.D == ExactMatrix::from_int_rows({{0, 1}, {-1, 0}}));
    ExactMatrix C = companion(IntPoly::from_int_list({1, 0, 1}));
    CHECK(C * rb.Y == rb.Y * rb.D);
}

TEST_CASE("real basis of a cyclotomic quartic satisfies the intertwining identity") {
    auto T = Tower::make();
    auto src = iso({1, 1, 1, 1, 1});
    auto roots = all_roots(T, src);
    RealBasis rb = real_basis_from_roots(T, roots, *src);
    ExactMatrix C = companion(IntPoly::from_int_list({1, 1, 1, 1, 1}));
    CHECK(is_zero(C * rb.Y - rb.Y * rb.D));
    // Two conjugate pairs: D is two 2x2 blocks, zero elsewhere.
    CHECK(rb.D.at(0, 2).is_zero());
    CHECK(rb.D.at(2, 0).is_zero());
}

TEST_CASE("exact inverse via the adjugate") {
    auto T = Tower::make();
    auto src = iso({-1, -1, 1});
    auto roots = all_roots(T, src);
    ExactMatrix Zm = vandermonde_from_roots(roots);
    ExactMatrix Zi = invert(Zm);
    CHECK(Zm * Zi == ExactMatrix::identity(2));
    CHECK(Zi * Zm == ExactMatrix::identity(2));

    // Matches the hand adjugate over the root difference.
    ExactMatrix expect(2, 2);
    expect.at(0, 0) = TPoly(roots[1]);
    expect.at(0, 1) = TPoly(-1);
    expect.at(1, 0) = TPoly(-roots[0]);
    expect.at(1, 1) = TPoly(1);
    expect.den = TPoly(roots[1] - roots[0]);
    CHECK(Zi == expect);

    CHECK(invert(ExactMatrix::identity(3)) == ExactMatrix::identity(3));
    CHECK(invert(invert(Zm)) == Zm);

    CHECK_THROWS_WITH_AS(invert(ExactMatrix::from_int_rows({{1, 2}, {2, 4}})),
                         doctest::Contains("kernel vector"), domain_error);
}

TEST_CASE("inverse of the bidiagonal parameter matrix") {
    const TPoly t1 = TPoly::var("t1"), t2 = TPoly::var("t2");
    ExactMatrix H = ExactMatrix::identity(3);
    H.at(0, 1) = -t1;
    H.at(1, 2) = -t2;
    ExactMatrix Hi = invert(H);
    CHECK(H * Hi == ExactMatrix::identity(3));
    // First row of the inverse accumulates the parameter products.
    CHECK(Hi.at(0, 0) == Hi.den);
    CHECK(Hi.at(0, 1) == t1 * Hi.den);
    CHECK(Hi.at(0, 2) == t1 * t2 * Hi.den);
    CHECK(det(H) == TPoly(1));
}

TEST_CASE("determinant and characteristic polynomial") {
    ExactMatrix fib = ExactMatrix::from_int_rows({{0, 1}, {1, 1}});
    CHECK(det(fib) == TPoly(-1));
    CharData cd = faddeev_leverrier(fib);
    CHECK(cd.charpoly == std::vector<TPoly>{TPoly(-1), TPoly(-1), TPoly(1)});

    ExactMatrix withden = fib;
    withden.den = TPoly::var("t1");
    CHECK_THROWS_AS(det(withden), domain_error);
}

TEST_CASE("kronecker product identity") {
    auto T = Tower::make();
    TowerElem tau = adjoin_root(T, iso({-1, -1, 1}), 1, "tau");
    ExactMatrix A = ExactMatrix::from_rows({{TPoly(tau), TPoly(1)}, {TPoly(0), TPoly(2)}});
    ExactMatrix B = ExactMatrix::from_rows({{TPoly::var("t1"), TPoly(3)}, {TPoly(1), TPoly(tau)}});
    ExactMatrix C = ExactMatrix::from_int_rows({{1, 1}, {0, 1}});
    ExactMatrix D = ExactMatrix::from_int_rows({{2, 0}, {1, 1}});
    CHECK(kron(A, B) * kron(C, D) == kron(A * C, B * D));
    CHECK(kron(ExactMatrix::identity(2), B).rows == 4);
}

TEST_CASE("left kernel over the tower") {
    auto T = Tower::make();
    TowerElem tau = adjoin_root(T, iso({-1, -1, 1}), 1, "tau");
    ExactMatrix col(2, 1);
    col.at(0, 0) = TPoly(1);
    col.at(1, 0) = TPoly(tau);
    auto w = left_kernel(col);
    REQUIRE(w.size() == 1);
    CHECK((w[0][0] * TPoly(1) + w[0][1] * TPoly(tau)).is_zero());
    CHECK(!(w[0][0].is_zero() && w[0][1].is_zero()));

    CHECK(left_kernel(ExactMatrix::identity(3)).empty());
}

TEST_CASE("rational vectors inside a span") {
    auto T = Tower::make();
    TowerElem tau = adjoin_root(T, iso({-1, -1, 1}), 1, "tau");

    ExactMatrix col(2, 1);
    col.at(0, 0) = TPoly(1);
    col.at(1, 0) = TPoly(tau);
    CHECK(rational_vectors_in_span(col, T).empty()); // 1, tau independent over Q

    ExactMatrix rat(2, 1);
    rat.at(0, 0) = TPoly(1);
    CHECK(rational_vectors_in_span(rat, T) ==
          std::vector<std::vector<Rat>>{{Rat(1), Rat(0)}});

    auto T3 = Tower::make();
    auto src3 = iso({1, -1, -2, 1});
    auto roots3 = all_roots(T3, src3);
    ExactMatrix Z3 = vandermonde_from_roots(roots3);
    CHECK(rational_vectors_in_span(take_columns(Z3, {0}), T3).empty());
    CHECK(rational_vectors_in_span(take_columns(Z3, {0, 2}), T3).empty());
    CHECK(rational_vectors_in_span(Z3, T3).size() == 3); // full rank: whole space
}

TEST_CASE("no component of the inverse image of a rational vector vanishes") {
    auto T3 = Tower::make();
    auto src3 = iso({1, -1, -2, 1});
    auto roots3 = all_roots(T3, src3);
    ExactMatrix Zi = invert(vandermonde_from_roots(roots3));
    for (const auto& rv : std::vector<std::vector<Rat>>{
             {Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(-3), Rat(5)}, {Rat(0), Rat(1), Rat(1)}}) {
        ExactMatrix r(3, 1);
        for (int i = 0; i < 3; ++i) r.at(i, 0) = TPoly(rv[i]);
        ExactMatrix img = Zi * r;
        for (int i = 0; i < 3; ++i) CHECK(!img.at(i, 0).is_zero());
    }
}

TEST_CASE("conjugating the first row of the inverse vandermonde yields the others") {
    auto T = Tower::make();
    auto src = iso({1, -1, -2, 1}); // Galois cubic: splitting field is Q(beta_0)
    auto roots = all_roots(T, src);
    ExactMatrix Zi = invert(vandermonde_from_roots(roots));
    for (int j = 1; j < 3; ++j) {
        ConjugationMap psi = conjugation_map(roots[0], roots[j]);
        for (int c = 0; c < 3; ++c) {
            TowerElem first = Zi.at(0, c).constant() / Zi.den.constant();
            TowerElem other = Zi.at(j, c).constant() / Zi.den.constant();
            CHECK(psi.apply(first) == other);
        }
    }
}

TEST_CASE("permutations and column selection") {
    ExactMatrix M = ExactMatrix::from_int_rows({{1, 2, 3}, {4, 5, 6}});
    ExactMatrix P = permutation_matrix({2, 0, 1});
    ExactMatrix MP = M * P;
    CHECK(MP == ExactMatrix::from_int_rows({{3, 1, 2}, {6, 4, 5}}));
    CHECK(take_columns(M, {2, 0}) == ExactMatrix::from_int_rows({{3, 1}, {6, 4}}));
    CHECK_THROWS_AS(permutation_matrix({0, 0, 1}), domain_error);
    CHECK(transpose(M) == ExactMatrix::from_int_rows({{1, 4}, {2, 5}, {3, 6}}));
    CHECK(blockdiag(ExactMatrix::identity(1), ExactMatrix::from_int_rows({{7}})) ==
          ExactMatrix::from_int_rows({{1, 0}, {0, 7}}));
}
