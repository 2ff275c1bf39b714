// Factorization of monic integer polynomials over ℚ.
//
// Pipeline: Yun squarefree decomposition (exact gcds), then each squarefree
// part is split by searching conjugation-closed subsets of its certified
// isolated roots, in ascending degree. A subset whose elementary-symmetric
// coefficients certifiably round to integers is verified by exact division
// in ℤ[X]; irreducibility of accepted factors follows from the exhaustion of
// all smaller subsets. Every answer is exact — intervals only steer the
// search, division has the final word.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cps/intpoly.hpp"

namespace cps {

struct FactorList {
    // (monic irreducible factor, multiplicity), sorted by degree then
    // lexicographic coefficients: a deterministic canonical order.
    std::vector<std::pair<IntPoly, int>> factors;

    IntPoly product() const;
};

// Requires monic f with degree >= 1 (throws domain_error otherwise).
FactorList factor_over_q(const IntPoly& f, long precision_bits = 256);

// Yun's algorithm: f = prod g_i^i with g_i squarefree, pairwise coprime,
// monic. Pairs (g_i, i) with g_i nonconstant, ascending i.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

bool is_irreducible(const IntPoly& f, long precision_bits = 256);

// Factors a monic polynomial with rational coefficients into monic rational
// irreducibles: substituting x -> x/c for c = lcm of the denominators gives a
// monic integer polynomial, which is factored and mapped back.
std::vector<std::pair<QPoly, int>> factor_monic_rational(const QPoly& g, long precision_bits = 256);

} // namespace cps
