#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cps/exactmat.hpp"
#include "cps/spectrum.hpp"

namespace cps {

// 0/1 assignment of u root classes to K component schemes: row i has l_i
// ones (the class's prescribed physical multiplicity), and every column has
// at least one 1 and at least one 0, so each component's physical and
// internal parts are both nonempty.
struct WellDistributingMatrix {
    std::vector<std::vector<int>> m;  // u x K, entries 0/1
    int rows() const { return static_cast<int>(m.size()); }
    int cols() const { return m.empty() ? 0 : static_cast<int>(m[0].size()); }
};

// Smallest K admitting a well-distributing matrix for the given row sums:
// max(max l_i, ceil(sum l_i / (u-1))). Needs u >= 2.
int well_distributing_lower_bound(const std::vector<int>& l);

// Whether `m` is a well-distributing matrix for row sums l and K columns.
bool is_well_distributing(const WellDistributingMatrix& w, const std::vector<int>& l, int K);

// Deterministic construction: ones are placed in consecutive positions
// continuing cyclically from row to row, which meets the column bounds
// whenever lower_bound <= K <= sum l_i (both violations are reported).
WellDistributingMatrix well_distributing(const std::vector<int>& l, int K);

// Exact genericity evidence for a scheme with lattice basis columns Y
// (first n = physical directions). All three checks are certificates over
// the rational-function field: formal indeterminates in Y are treated as
// algebraically independent.
struct GenericityCertificate {
    bool nondegenerate = false;  // no nonzero rational vector in span of internal columns
    bool aperiodic = false;      // no nonzero rational vector in span of physical columns
    bool irreducible = false;    // no nonzero rational vector orthogonal to all physical columns
    // Violation evidence; all empty exactly when the three flags hold.
    std::vector<std::vector<Rat>> internal_rationals;
    std::vector<std::vector<Rat>> physical_rationals;
    std::vector<std::vector<Rat>> annihilators;
    // Generic physical vector y = Y1 * (w1..wn) with fresh indeterminates:
    // q.y != 0 for every nonzero rational q iff `annihilators` is empty.
    std::vector<TPoly> witness;
    bool all() const { return nondegenerate && aperiodic && irreducible; }
};
GenericityCertificate certify_generic(const ExactMatrix& Y, int n,
                                      const std::shared_ptr<Tower>& T);

// A cut-and-project scheme with self-similarity: an invertible s x s matrix
// Y of exact entries (columns = lattice basis directions; first n columns
// span the physical space), its inverse L (rows of L = lattice basis
// expressed in lattice coordinates of points), an integer matrix C acting on
// lattice coordinates, and quasidiagonal A (physical) and B (internal) with
//   Y * blockdiag(A, B) == C * Y   exactly.
// Entries live in the number-field tower `tower`, possibly with formal
// indeterminates; `var_values` supplies deterministic rational substitution
// values for point generation (certificates never depend on them).
struct Scheme {
    int n = 0;  // physical dimension
    int s = 0;  // lattice dimension
    std::shared_ptr<Tower> tower;
    ExactMatrix Y;  // s x s, exact basis
    ExactMatrix L;  // Y^{-1} (shared denominator absorbs the determinant)
    ExactMatrix C;  // s x s integer
    ExactMatrix A;  // n x n quasidiagonal
    ExactMatrix B;  // (s-n) x (s-n) quasidiagonal
    SpectrumSpec a_spec;  // eigenvalues of A with multiplicities
    SpectrumSpec b_spec;  // eigenvalues of B with multiplicities
    // Column selection applied to this step's raw kron/blockdiag product
    // (see each builder's documentation); identity for the trivial builders.
    std::vector<int> perm;
    std::string provenance;
    GenericityCertificate certificate;
    std::map<std::string, Rat> var_values;
};

// Elementary scheme for a monic irreducible integer polynomial f: columns of
// the real root basis of the companion matrix are split into physical
// (the listed root indices, closed under conjugation) and internal parts.
// physical must be a nonempty proper subset of the root classes.
Scheme build_vandermonde_scheme(const IntPoly& f, const std::vector<int>& physical_roots,
                                long precision_bits = 256);

// Scheme for A = k * I_n (k a nonzero integer): s = n + 1, C = k * I_{n+1},
// B = (k). The basis is generic via rows of powers of one formal symbol.
Scheme build_trivial_integer(const Int& k, int n, const std::string& var_prefix = "");

// Scheme for A = quasidiagonal with n/2 copies of the rotation-scaling block
// of a non-real quadratic integer lambda (root of monic irreducible f with
// negative discriminant): s = n + 2, C = blockdiag of n/2+1 companion
// blocks, B = one rotation-scaling block. n must be even and positive.
Scheme build_trivial_quadratic(const IntPoly& f, int n, const std::string& var_prefix = "",
                               long precision_bits = 256);

// Direct sum: physical and internal spaces concatenate, C = blockdiag.
// Distinct formal symbols shared by both sides are renamed on the right
// side; towers are merged into a compositum. The certificate is recomputed
// from scratch on the composed basis.
Scheme direct_sum(const Scheme& a, const Scheme& b);

// Minimal-dimension scheme for a one-factor spectrum in the formula regime
// (degree >= 3, or degree 2 with real roots): K copies of the companion
// block with a bidiagonal coupling in formal symbols, K = M if some
// conjugate has strictly smaller multiplicity, else M + 1.
Scheme build_minimal_scheme(const SpectrumGroup& g, const std::string& var_prefix = "",
                            long precision_bits = 256);

// Direct sum of K elementary schemes distributed by well_distributing, with
// K = well_distributing_lower_bound over all root classes of f (real
// classes first in canonical order, then conjugate pairs).
Scheme build_naive_scheme(const SpectrumGroup& g, long precision_bits = 256);

enum class Route { minimal, naive };

struct BuildResult {
    Scheme scheme;
    PVerdict verdict;                   // spectral self-similarity conditions
    std::vector<std::string> warnings;  // nonempty when the verdict fails
};

// Full pipeline: route each minimal-polynomial group (trivial regimes always
// take their dedicated construction; Route selects between the minimal and
// the elementary-direct-sum construction for the rest), then direct-sum the
// parts in group order. A's diagonal blocks follow group order with classes
// in canonical root order and equal copies adjacent. Formal symbols are
// assigned deterministic rational surrogate values.
BuildResult build_scheme_for(const SpectrumSpec& spec, Route route = Route::minimal,
                             long precision_bits = 256);

// Exact verification that a scheme is internally consistent.
struct VerifyReport {
    bool intertwining = false;    // Y * blockdiag(A, B) == C * Y exactly
    bool c_integer = false;       // C has integer entries
    bool char_product = false;    // charpoly(C) == charpoly(A) * charpoly(B) exactly
    bool minpoly_match = false;   // A, B, C share one squarefree rational minimal polynomial
    std::vector<std::pair<int, int>> residual;  // nonzero positions of C*Y - Y*blockdiag(A,B)
    std::string detail;
    bool pass() const { return intertwining && c_integer && char_product && minpoly_match; }
};
VerifyReport verify_scheme(const Scheme& sch);

} // namespace cps
