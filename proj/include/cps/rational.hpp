// Thin helpers around GMP's C++ rationals/integers.
//
// Conventions: rationals are always kept in canonical form (gmp does this on
// construction from string only if asked, so parse_rational canonicalizes),
// and serialized as "p/q" with q omitted when q == 1.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cps/errors.hpp"

namespace cps {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "7", "-3/2", "+12/8" (reduced to 3/2). Rejects anything else.
Rat parse_rational(const std::string& text);

// Canonical "p/q" (or "p" for integers) form.
std::string to_string(const Rat& q);
std::string to_string(const Int& n);

// Exact integrality test + extraction.
bool is_integer(const Rat& q);
Int to_integer(const Rat& q); // throws domain_error unless is_integer

// Floor/ceil of a rational as integers.
Int floor_int(const Rat& q);
Int ceil_int(const Rat& q);

// x -> x mod m reduced into (-m/2, m/2]; m > 0.
Int symmetric_mod(const Int& x, const Int& m);

// Deterministic splitmix-style hash for integer vectors (lattice points).
std::uint64_t hash_int_vector(const std::vector<Int>& v);

} // namespace cps
