#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cps/formal.hpp"
#include "cps/intpoly.hpp"

namespace cps {

// Dense matrix of formal polynomials over a number-field tower, with a shared
// scalar denominator: the represented value is e/den. Inverses keep their
// determinant in `den` so entries stay polynomial.
struct ExactMatrix {
    int rows = 0, cols = 0;
    std::vector<TPoly> e;  // row-major
    TPoly den = TPoly(1);

    ExactMatrix() = default;
    ExactMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}

    TPoly& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    const TPoly& at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }

    static ExactMatrix identity(int n);
    static ExactMatrix from_rows(const std::vector<std::vector<TPoly>>& rows);
    static ExactMatrix from_rational_rows(const std::vector<std::vector<Rat>>& rows);
    static ExactMatrix from_int_rows(const std::vector<std::vector<long>>& rows);
};

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix operator*(const TPoly& s, const ExactMatrix& m);
// Equality of represented values (cross-multiplied through the denominators).
bool operator==(const ExactMatrix& a, const ExactMatrix& b);
inline bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

ExactMatrix transpose(const ExactMatrix& m);
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix blockdiag(const ExactMatrix& a, const ExactMatrix& b);
// Permutation as a matrix: column j of M*P is column p[j] of M.
ExactMatrix permutation_matrix(const std::vector<int>& p);
ExactMatrix take_columns(const ExactMatrix& m, const std::vector<int>& idx);
bool is_zero(const ExactMatrix& m);

// Characteristic data from the Faddeev-LeVerrier recursion (den must be 1):
// charpoly is det(xI - M) with ascending coefficients, monic.
struct CharData {
    std::vector<TPoly> charpoly;
    ExactMatrix adjugate;
    TPoly det;
};
CharData faddeev_leverrier(const ExactMatrix& m);
TPoly det(const ExactMatrix& m);

// Exact inverse (denominators allowed); a singular input raises domain_error
// naming a kernel vector.
ExactMatrix invert(const ExactMatrix& m);

// Basis of { w : w^T M = 0 } over the fraction field, with polynomial entries
// (fraction-free row reduction; denominators cleared).
std::vector<std::vector<TPoly>> left_kernel(const ExactMatrix& m);

// Right null space over Q of a rational constraint system (list of rows).
std::vector<std::vector<Rat>> rat_kernel(const std::vector<std::vector<Rat>>& rows, int ncols);

// Basis of { r in Q^s : r in span of the columns of `cols` }, where entries
// live in tower T extended by formal variables. Computes the left kernel over
// the tower, expands each kernel equation into one rational constraint per
// (formal monomial, tower basis element), and intersects. An empty result
// certifies that the span meets Q^s trivially.
std::vector<std::vector<Rat>> rational_vectors_in_span(const ExactMatrix& cols,
                                                       const std::shared_ptr<Tower>& T);

// Basis of { q in Q^rows : q^T M = 0 }: each entry equation expands into one
// rational constraint per (formal monomial, tower basis element). An empty
// result certifies that no nonzero rational vector annihilates every column,
// i.e. a generic combination of the columns meets every rational hyperplane
// transversally.
std::vector<std::vector<Rat>> rational_left_annihilators(const ExactMatrix& m,
                                                         const std::shared_ptr<Tower>& T);

// Companion matrix: superdiagonal of ones, last row (a_0..a_{d-1}) for
// f = X^d - sum a_i X^i; its power-column eigenvectors satisfy C z = beta z.
ExactMatrix companion(const IntPoly& f);

// Column j = (1, beta_j, beta_j^2, ...) for the given exact roots.
ExactMatrix vandermonde_from_roots(const std::vector<TowerElem>& roots);

ExactMatrix diag(const std::vector<TowerElem>& d);

// Real column form: power columns for real roots; real/imaginary part column
// pairs for conjugate pairs (listed once, at the first member's position).
// D is the matching block diagonal (1x1 real values, 2x2 rotation-scaling
// blocks), and companion(f) * Y == Y * D exactly.
struct RealBasis {
    ExactMatrix Y, D;
};
RealBasis real_basis_from_roots(const std::shared_ptr<Tower>& T,
                                const std::vector<TowerElem>& roots,
                                const IsolatedRoots& structure);

std::string str(const ExactMatrix& m);

} // namespace cps
