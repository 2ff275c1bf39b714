// Integer and rational univariate polynomials.
//
// IntPoly is the currency for minimal polynomials and companion matrices:
// coefficients low -> high, no trailing zeros. QPoly (ℚ[X]) is the same
// shape over rationals and is what the generic field routines operate on.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cps/poly.hpp"
#include "cps/rational.hpp"

namespace cps {

using QPoly = std::vector<Rat>;

struct IntPoly {
    std::vector<Int> c; // c[i] multiplies X^i

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    static IntPoly from_int_list(const std::vector<long>& coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    const Int& lead() const { return c.back(); }

    bool operator==(const IntPoly& o) const { return c == o.c; }

    QPoly to_q() const;
    IntPoly derivative() const;

    // Human-readable form, e.g. "x^3 - 2*x^2 - x + 1".
    std::string str(const std::string& var = "x") const;
};

IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly neg(IntPoly a);

// Exact division in ℤ[X]; returns nothing if b does not divide a exactly.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

// gcd of the coefficients (non-negative), 0 for the zero polynomial.
Int content(const IntPoly& p);

// Monic image of a primitive part: p / content, sign-normalized to
// positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);

// Converts a rational polynomial to the (unique) integer polynomial that is
// a positive integer multiple with content 1.
IntPoly from_q_primitive(const QPoly& p);

// Monic QPoly -> IntPoly; throws domain_error if a coefficient is fractional.
IntPoly from_q_integral(const QPoly& p);

Rat eval(const IntPoly& p, const Rat& x);

// ||p||_2^2 as an exact rational (used for factor coefficient bounds).
Rat norm2_sq(const IntPoly& p);

} // namespace cps
