#include "cps/cyclotomic.hpp"

#include <map>

namespace cps {

long euler_phi(long k) {
    long result = k;
    for (long p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            while (k % p == 0) k /= p;
            result -= result / p;
        }
    }
    if (k > 1) result -= result / k;
    return result;
}

IntPoly cyclotomic_poly(long k) {
    if (k < 1) throw domain_error("cyclotomic index must be >= 1");
    static std::map<long, IntPoly> memo;
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    // Phi_k = (X^k - 1) / prod_{d | k, d < k} Phi_d
    std::vector<Int> xk(k + 1, Int(0));
    xk[0] = -1;
    xk[k] = 1;
    IntPoly num{std::move(xk)};
    for (long d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        auto q = divide_exact(num, cyclotomic_poly(d));
        if (!q) throw domain_error("internal: cyclotomic division failed");
        num = *q;
    }
    memo[k] = num;
    return num;
}

std::optional<long> is_cyclotomic(const IntPoly& f) {
    if (f.degree() < 1 || !f.is_monic()) return std::nullopt;
    long d = f.degree();
    // phi(k) >= sqrt(k/2), so phi(k) = d forces k <= 2 d^2; scan exhaustively.
    for (long k = 1; k <= 2 * d * d + 1; ++k) {
        if (euler_phi(k) != d) continue;
        if (cyclotomic_poly(k) == f) return k;
    }
    return std::nullopt;
}

} // namespace cps
