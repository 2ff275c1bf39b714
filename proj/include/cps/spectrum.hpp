#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cps/intpoly.hpp"
#include "cps/rational.hpp"
#include "cps/roots.hpp"

namespace cps {

// One prescribed eigenvalue: a root of a monic irreducible integer
// polynomial, identified by its canonical root index.
struct SpectrumEntry {
    IntPoly min_poly;
    int root_index = 0;
    int multiplicity = 1;
};

// The eigenvalues sharing one minimal polynomial, with a multiplicity slot
// for every root (0 = absent conjugate).
struct SpectrumGroup {
    IntPoly f;
    std::shared_ptr<IsolatedRoots> iso;
    std::vector<int> mult;
    bool cyclotomic = false;

    int degree() const { return f.degree(); }
    int max_mult() const;
    int min_mult() const;
    // Number of eigenvalues counting multiplicity and both pair members.
    int dimension_share() const;
};

// A validated spectrum: conjugation-closed with matching multiplicities, no
// zero eigenvalue, grouped by minimal polynomial in a deterministic order.
class SpectrumSpec {
public:
    static SpectrumSpec from_entries(const std::vector<SpectrumEntry>& entries,
                                     long precision_bits = 256);
    const std::vector<SpectrumGroup>& groups() const { return groups_; }
    // The physical dimension n implied by the spectrum.
    int n() const;

private:
    std::vector<SpectrumGroup> groups_;
};

// Exact spectrum of a rational matrix: characteristic polynomial by the
// Faddeev-LeVerrier recursion, multiplicities from its factorization over Q.
// Rejects singular matrices, non-diagonalizable matrices (the radical of the
// characteristic polynomial must annihilate the matrix), and eigenvalues that
// are not algebraic integers.
SpectrumSpec spectrum_from_matrix(const std::vector<std::vector<Rat>>& a,
                                  long precision_bits = 256);

// Exact comparison of |root r| against 1: returns -1, 0, or +1. Interval
// refinement decides every case except modulus exactly 1, which is certified
// by matching the reciprocal root against the complex conjugate (a root of
// modulus 1 forces the polynomial to be self-reciprocal).
int modulus_vs_one(IsolatedRoots& iso, int r);

// Spectral self-similarity conditions: every conjugate of modulus > 1 must be
// a prescribed eigenvalue of maximal multiplicity, with strictly smaller
// multiplicity somewhere among its conjugates.
struct PVerdict {
    enum class Reason { not_an_eigenvalue, multiplicity_too_small, no_strict_inequality };
    struct Failure {
        IntPoly f;
        int root_index;
        Reason reason;
        std::string detail;
    };
    struct FactorInfo {
        IntPoly f;
        int d, M, m;
        bool cyclotomic;
    };
    bool satisfied = true;
    std::vector<Failure> failures;
    std::vector<FactorInfo> factors;
};
PVerdict check_properties_P(const SpectrumSpec& spec);
std::string describe(const PVerdict& v);

// Minimal lattice dimension for a one-factor spectrum, reporting which
// construction regime applies: the multiplicity formula (M*d or (M+1)*d), or
// the small regimes for a rational eigenvalue (n+1) and a non-real quadratic
// eigenvalue (n+2).
struct MinDimension {
    enum class Regime { formula, trivial_integer, trivial_quadratic };
    Regime regime = Regime::formula;
    long s = 0;
    int M = 0, m = 0, d = 0;
};
MinDimension min_scheme_dimension(const SpectrumGroup& g);

// Lattice dimension d*K of the direct-sum-of-K-elementary-schemes route,
// where K = max(M, ceil(sum l_i / (u-1))) over the u root classes. Needs at
// least two classes.
long naive_scheme_dimension(const SpectrumGroup& g);

// Minimal lattice dimension admitting a cut-and-project *set* with this
// self-similarity: per factor M*d, except (M+1)*d for cyclotomic factors with
// all roots present at equal multiplicity; summed over factors. Requires the
// spectral conditions to hold.
long min_set_dimension(const SpectrumSpec& spec);

} // namespace cps
