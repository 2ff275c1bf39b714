// Cyclotomic polynomial construction and recognition.
#pragma once

#include <optional>

#include "cps/intpoly.hpp"

namespace cps {

// Euler's totient (trial division; arguments stay desk-scale).
long euler_phi(long k);

// The k-th cyclotomic polynomial, k >= 1.
IntPoly cyclotomic_poly(long k);

// If f == Phi_k for some k, returns k (k is unique for a fixed f).
// Decision is exhaustive: phi(k) = deg f forces k <= 2*deg(f)^2 + 1.
std::optional<long> is_cyclotomic(const IntPoly& f);

} // namespace cps
