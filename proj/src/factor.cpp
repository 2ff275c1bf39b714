#include "cps/factor.hpp"

#include <algorithm>
#include <functional>

#include "cps/poly.hpp"
#include "cps/roots.hpp"

namespace cps {

namespace {

// Hard cap on the number of conjugation classes a single squarefree part may
// have: the subset search is exponential in this count. Desk-scale inputs
// stay far below it; beyond it the exact path refuses and the caller must
// fall back to numeric-only processing.
constexpr int kMaxRootClasses = 20;

bool coeff_sorts_before(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end(),
                                        [](const Int& x, const Int& y) { return x < y; });
}

// One conjugation class of roots: a real root, or a conjugate pair stored
// through its representative. Keeps the real linear/quadratic interval
// polynomial it contributes to a factor product.
struct RootClass {
    int degree;                  // 1 or 2
    std::vector<RInterval> real_poly; // monic, low -> high (degree+1 entries)
    RInterval root_sum;          // Re-sum contributed to sigma_1
};

// Does [lo, hi] contain an integer? If exactly one, report it.
enum class IntScan { none, one, wide };
IntScan integers_in(const RInterval& iv, Int& unique_value) {
    MF lo_ceil(iv.prec()), hi_floor(iv.prec());
    mpfr_ceil(lo_ceil.get(), iv.lo());
    mpfr_floor(hi_floor.get(), iv.hi());
    if (mpfr_greater_p(lo_ceil.get(), hi_floor.get())) return IntScan::none;
    if (!mpfr_equal_p(lo_ceil.get(), hi_floor.get())) return IntScan::wide;
    mpz_class v;
    mpfr_get_z(v.get_mpz_t(), lo_ceil.get(), MPFR_RNDN);
    unique_value = v;
    return IntScan::one;
}

std::vector<RInterval> mul_real_poly(const std::vector<RInterval>& a,
                                     const std::vector<RInterval>& b, mpfr_prec_t prec) {
    std::vector<RInterval> r(a.size() + b.size() - 1, RInterval(prec));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Factor a squarefree monic polynomial into irreducible monic factors.
std::vector<IntPoly> factor_squarefree(const IntPoly& g, long precision_bits) {
    std::vector<IntPoly> out;
    if (g.degree() <= 1) {
        out.push_back(g);
        return out;
    }
    long prec = std::max(precision_bits, 192L);
    for (int escalation = 0;; ++escalation) {
        if (escalation > 6)
            throw precision_error("factorization could not stabilize coefficients for " + g.str());
        // Root order is irrelevant here (factors are sorted at the end), and
        // norm polynomials routinely tie in real part, so skip the canonical
        // sort and its exact tie certificates.
        IsolatedRoots roots = isolate_roots(g, prec, /*canonical_order=*/false);
        mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);

        std::vector<RootClass> classes;
        for (int i : roots.class_representatives()) {
            RootClass rc;
            if (roots.is_real[i]) {
                rc.degree = 1;
                rc.root_sum = roots.box[i].re();
                rc.real_poly = {-roots.box[i].re(), RInterval::exact_int(1, wp)};
            } else {
                rc.degree = 2;
                RInterval two_re = roots.box[i].re() + roots.box[i].re();
                rc.root_sum = two_re;
                rc.real_poly = {roots.box[i].abs_sq(), -two_re, RInterval::exact_int(1, wp)};
            }
            classes.push_back(std::move(rc));
        }
        if (static_cast<int>(classes.size()) > kMaxRootClasses)
            throw precision_error("too many root classes for exact factorization of " + g.str());

        std::vector<int> remaining(classes.size());
        for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
        IntPoly rest = g;
        std::vector<IntPoly> found;
        bool need_more_precision = false;

        // Try to split `rest` by a subset of total degree td; ascending td
        // guarantees accepted factors are irreducible.
        auto try_degree = [&](int td) -> bool {
            std::vector<int> pick;
            bool wide_seen = false;
            // Depth-first enumeration over `remaining`, tracking degree.
            std::function<bool(std::size_t, int)> walk = [&](std::size_t from, int need) -> bool {
                if (need == 0) {
                    // sigma_1 prune: X^(td-1) coefficient must round to an integer.
                    RInterval s1(wp);
                    for (int ci : pick) s1 = s1 + classes[remaining[ci]].root_sum;
                    Int dummy;
                    IntScan scan = integers_in(s1, dummy);
                    if (scan == IntScan::none) return false;
                    if (scan == IntScan::wide) { wide_seen = true; return false; }
                    // Full product, then certified rounding of every coefficient.
                    std::vector<RInterval> prod = {RInterval::exact_int(1, wp)};
                    for (int ci : pick)
                        prod = mul_real_poly(prod, classes[remaining[ci]].real_poly, wp);
                    std::vector<Int> coeffs(prod.size());
                    for (std::size_t k = 0; k < prod.size(); ++k) {
                        IntScan sc = integers_in(prod[k], coeffs[k]);
                        if (sc == IntScan::none) return false;
                        if (sc == IntScan::wide) { wide_seen = true; return false; }
                    }
                    IntPoly candidate(std::move(coeffs));
                    auto quotient = divide_exact(rest, candidate);
                    if (!quotient) return false;
                    found.push_back(candidate);
                    rest = *quotient;
                    std::vector<int> next_remaining;
                    for (std::size_t r = 0; r < remaining.size(); ++r)
                        if (std::find(pick.begin(), pick.end(), static_cast<int>(r)) == pick.end())
                            next_remaining.push_back(remaining[r]);
                    remaining = std::move(next_remaining);
                    return true;
                }
                for (std::size_t i = from; i < remaining.size(); ++i) {
                    int cd = classes[remaining[i]].degree;
                    if (cd > need) continue;
                    pick.push_back(static_cast<int>(i));
                    if (walk(i + 1, need - cd)) return true;
                    pick.pop_back();
                }
                return false;
            };
            bool split = walk(0, td);
            if (wide_seen && !split) need_more_precision = true;
            return split;
        };

        int total_deg = g.degree();
        for (int td = 1; 2 * td <= total_deg && !need_more_precision; ++td) {
            while (try_degree(td)) total_deg = rest.degree();
        }
        if (need_more_precision) {
            prec *= 2;
            continue;
        }
        if (rest.degree() > 0) found.push_back(rest);
        return found;
    }
}

} // namespace

IntPoly FactorList::product() const {
    IntPoly p = IntPoly::from_int_list({1});
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) p = mul(p, f);
    return p;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    if (f.is_zero() || !f.is_monic() || f.degree() < 1)
        throw domain_error("squarefree decomposition requires a monic polynomial of degree >= 1");
    // Yun's algorithm over ℚ; all intermediates are monic divisors of a monic
    // integer polynomial and hence integral.
    QPoly b = f.to_q(), d = polyv::derivative(b);
    QPoly a = polyv::gcd_monic(b, d);
    b = polyv::divmod(f.to_q(), a).first;
    QPoly c = polyv::sub(polyv::divmod(d, a).first, polyv::derivative(b));
    std::vector<std::pair<IntPoly, int>> out;
    int i = 1;
    while (polyv::deg(b) > 0) {
        QPoly gi = polyv::gcd_monic(b, c);
        b = polyv::divmod(b, gi).first;
        c = polyv::sub(polyv::divmod(c, gi).first, polyv::derivative(b));
        if (polyv::deg(gi) > 0) out.emplace_back(from_q_integral(gi), i);
        ++i;
    }
    return out;
}

FactorList factor_over_q(const IntPoly& f, long precision_bits) {
    if (f.is_zero() || !f.is_monic() || f.degree() < 1)
        throw domain_error("factorization requires a monic polynomial of degree >= 1, got " +
                           f.str());
    FactorList out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (IntPoly& irr : factor_squarefree(part, precision_bits))
            out.factors.emplace_back(std::move(irr), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return coeff_sorts_before(a.first, b.first); });
    return out;
}

bool is_irreducible(const IntPoly& f, long precision_bits) {
    FactorList fl = factor_over_q(f, precision_bits);
    return fl.factors.size() == 1 && fl.factors[0].second == 1;
}

std::vector<std::pair<QPoly, int>> factor_monic_rational(const QPoly& g, long precision_bits) {
    if (polyv::deg(g) < 1 || !(g.back() == 1))
        throw domain_error("rational factorization requires a monic polynomial of degree >= 1");
    const int d = polyv::deg(g);
    Int c = 1;
    for (const Rat& q : g) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), q.get_den().get_mpz_t());

    // f(y) = c^d g(y/c): coefficient i is g_i * c^(d-i), an integer.
    std::vector<Int> fc(d + 1);
    Rat pw = 1; // c^(d-i), built from the top down
    for (int i = d; i >= 0; --i) {
        fc[i] = to_integer(g[i] * pw);
        pw *= c;
    }
    FactorList fl = factor_over_q(IntPoly{std::move(fc)}, precision_bits);

    // Each integer factor f_i maps back to the monic rational c^(-deg) f_i(c x).
    std::vector<std::pair<QPoly, int>> out;
    for (const auto& [fi, mult] : fl.factors) {
        const int di = fi.degree();
        QPoly qi(di + 1);
        Rat scale = 1; // c^(j - di) for j from di down to 0
        for (int j = di; j >= 0; --j) {
            qi[j] = Rat(fi.c[j]) * scale;
            scale /= c;
        }
        out.emplace_back(std::move(qi), mult);
    }
    return out;
}

} // namespace cps
