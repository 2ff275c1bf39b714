// Certified isolation of the complex roots of a squarefree integer polynomial.
//
// Strategy: Aberth-Ehrlich simultaneous iteration in plain MPFR arithmetic
// (fast, not trusted), then an a-posteriori certificate in interval
// arithmetic: around each approximation z the disk of radius
// deg(f)*|f(z)/f'(z)| contains at least one root, so d pairwise disjoint
// disks contain exactly one root each. Conjugate pairing and realness are
// certified by matching each conjugated box against the unique box it meets.
// Refinement is an interval Newton contraction whose iterates are nested and
// independent of the requested precision, so re-running with more bits
// reproduces and then extends the same boxes.
#pragma once

#include <vector>

#include "cps/interval.hpp"
#include "cps/intpoly.hpp"

namespace cps {

struct IsolatedRoots {
    IntPoly poly;                 // the defining (monic, squarefree) polynomial
    std::vector<CInterval> box;   // isolating boxes, canonical (Re, Im) order
    std::vector<int> conj_index;  // index of the complex conjugate root (self if real)
    std::vector<bool> is_real;    // certified
    long precision_bits = 0;      // each box has width <= 2^-bits * max(1,|root|)

    int count() const { return static_cast<int>(box.size()); }
    // Indices of one representative per conjugate class: all real roots, and
    // the member with positive imaginary part of each pair.
    std::vector<int> class_representatives() const;
};

// Isolates all roots. Requires monic and squarefree; throws domain_error
// otherwise (listing the repeated-factor structure for non-squarefree input).
// With canonical_order unset the (Re, Im) sort is skipped: boxes still come
// certified disjoint with conjugates paired, in iteration order. Internal
// callers that only need the root set (e.g. factorization of norm
// polynomials, whose roots often tie in real part) use this to avoid paying
// for exact tie certificates.
IsolatedRoots isolate_roots(const IntPoly& f, long precision_bits,
                            bool canonical_order = true);

// Contracts every box of `r` until width <= 2^-bits * max(1,|root|); boxes
// only ever shrink (nested refinement). No-op if already narrow enough.
void refine_roots(IsolatedRoots& r, long precision_bits);

// Interval evaluation of an integer polynomial (Horner, outward rounding).
CInterval eval_interval(const IntPoly& p, const CInterval& x);
RInterval eval_interval_real(const IntPoly& p, const RInterval& x);

} // namespace cps
