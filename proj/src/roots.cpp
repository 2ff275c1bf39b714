#include "cps/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cps/poly.hpp"

namespace cps {

namespace {

// Plain (non-interval) complex MPFR arithmetic for the Aberth iteration.
struct CF {
    MF re, im;
    explicit CF(mpfr_prec_t p) : re(p), im(p) {}
};

void cf_sub(CF& r, const CF& a, const CF& b) {
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void cf_mul(CF& r, const CF& a, const CF& b, MF& t1, MF& t2) {
    // r may not alias a or b.
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
}

void cf_div(CF& r, const CF& a, const CF& b, MF& t1, MF& t2, MF& den) {
    mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_div(t1.get(), t1.get(), den.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    MF t3(mpfr_get_prec(t2.get()));
    mpfr_mul(t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(t2.get(), t2.get(), t3.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), t2.get(), den.get(), MPFR_RNDN);
    mpfr_set(r.re.get(), t1.get(), MPFR_RNDN);
}

double cf_abs_upper(const CF& z) {
    double a = std::fabs(mpfr_get_d(z.re.get(), MPFR_RNDA));
    double b = std::fabs(mpfr_get_d(z.im.get(), MPFR_RNDA));
    return std::hypot(a, b);
}

// Horner evaluation of p and p' at z (plain arithmetic).
void eval_cf(const IntPoly& p, const CF& z, CF& val, CF& dval, mpfr_prec_t wp) {
    MF t1(wp), t2(wp);
    CF acc(wp), dacc(wp), tmp(wp);
    // acc = 0, dacc = 0
    for (std::size_t i = p.c.size(); i-- > 0;) {
        // dacc = dacc*z + acc
        cf_mul(tmp, dacc, z, t1, t2);
        mpfr_add(dacc.re.get(), tmp.re.get(), acc.re.get(), MPFR_RNDN);
        mpfr_add(dacc.im.get(), tmp.im.get(), acc.im.get(), MPFR_RNDN);
        // acc = acc*z + c[i]
        cf_mul(tmp, acc, z, t1, t2);
        mpfr_add_z(acc.re.get(), tmp.re.get(), p.c[i].get_mpz_t(), MPFR_RNDN);
        mpfr_set(acc.im.get(), tmp.im.get(), MPFR_RNDN);
    }
    val = acc;
    dval = dacc;
}

CInterval point_box(const CF& z, mpfr_prec_t prec) {
    return {RInterval::from_endpoints(z.re.get(), z.re.get(), prec),
            RInterval::from_endpoints(z.im.get(), z.im.get(), prec)};
}

RInterval r_from_int(const Int& n, mpfr_prec_t prec) { return RInterval::from_rat(Rat(n), prec); }

// box widened to [c - r, c + r] on each axis, r given as an upper bound.
CInterval widen_box(const CF& z, mpfr_srcptr radius, mpfr_prec_t prec) {
    MF lo(prec), hi(prec);
    mpfr_sub(lo.get(), z.re.get(), radius, MPFR_RNDD);
    mpfr_add(hi.get(), z.re.get(), radius, MPFR_RNDU);
    RInterval re = RInterval::from_endpoints(lo.get(), hi.get(), prec);
    mpfr_sub(lo.get(), z.im.get(), radius, MPFR_RNDD);
    mpfr_add(hi.get(), z.im.get(), radius, MPFR_RNDU);
    RInterval im = RInterval::from_endpoints(lo.get(), hi.get(), prec);
    return {re, im};
}

// One interval-Newton contraction: X <- (mid - f(mid)/f'(X)) ∩ X.
// Returns false if f'(X) straddles zero (caller escalates).
bool newton_contract(const IntPoly& f, const IntPoly& df, CInterval& box, mpfr_prec_t wp) {
    CInterval dfx = eval_interval(df, CInterval(box.re(), box.im()));
    if (dfx.abs_sq().contains_zero()) return false;
    CInterval mid{RInterval::from_endpoints(box.re().mid(wp).get(), box.re().mid(wp).get(), wp),
                  RInterval::from_endpoints(box.im().mid(wp).get(), box.im().mid(wp).get(), wp)};
    CInterval n = mid - eval_interval(f, mid) / dfx;
    box = {n.re().intersect(box.re()), n.im().intersect(box.im())};
    return true;
}

// ------------------------------------------------------------------------
// Exact tie-breaking for the canonical order.  Two roots from different
// conjugate classes can have *exactly* equal real parts (e.g. x^4+10x^2+9,
// roots ±i, ±3i), so no amount of refinement separates the real intervals.
// The certificate: 2*Re(root) is a root of the root-sum polynomial
// G(x) = Res_y(f(y), f(x - y)), and distinct roots of an integer polynomial
// are separated by Mahler's bound.  Refining past that bound either splits
// the real intervals or proves the real parts equal, after which the
// (already disjoint) imaginary intervals order the two roots.

IntPoly sub_ip(const IntPoly& a, const IntPoly& b) { return add(a, neg(b)); }

// Determinant of a matrix of integer polynomials via fraction-free
// (Bareiss) elimination; every division is exact by construction.
IntPoly det_bareiss(std::vector<std::vector<IntPoly>> M) {
    const int n = static_cast<int>(M.size());
    int sign = 1;
    IntPoly prev = IntPoly::from_int_list({1});
    for (int k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            int pr = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M[i][k].is_zero()) { pr = i; break; }
            if (pr < 0) return IntPoly{};
            std::swap(M[k], M[pr]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                IntPoly t = sub_ip(mul(M[k][k], M[i][j]), mul(M[i][k], M[k][j]));
                if (t.is_zero()) {
                    M[i][j] = IntPoly{};
                } else {
                    auto q = divide_exact(t, prev);
                    if (!q) throw domain_error("internal: Bareiss division not exact");
                    M[i][j] = std::move(*q);
                }
            }
            M[i][k] = IntPoly{};
        }
        prev = M[k][k];
    }
    IntPoly det = M[n - 1][n - 1];
    return sign < 0 ? neg(det) : det;
}

// G(x) = Res_y(f(y), f(x - y)): its roots are all pairwise sums of roots.
IntPoly root_sum_poly(const IntPoly& f) {
    const int d = f.degree();
    // B[m] = coefficient of y^m in f(x - y) as a polynomial in x.
    std::vector<std::vector<Int>> raw(d + 1, std::vector<Int>(d + 1, 0));
    for (int k = 0; k <= d; ++k) {
        Int binom = 1; // C(k, m), updated incrementally
        for (int m = 0; m <= k; ++m) {
            Int coef = f.c[k] * binom;
            if (m & 1) coef = -coef;
            raw[m][k - m] += coef;
            binom = binom * (k - m) / (m + 1);
        }
    }
    std::vector<IntPoly> A(d + 1), B(d + 1);
    for (int j = 0; j <= d; ++j) {
        A[j] = IntPoly{std::vector<Int>{f.c[j]}};
        B[j] = IntPoly{raw[j]};
    }
    const int n = 2 * d;
    std::vector<std::vector<IntPoly>> M(n, std::vector<IntPoly>(n));
    for (int r = 0; r < d; ++r)
        for (int j = 0; j <= d; ++j) M[r][r + j] = A[d - j];
    for (int r = 0; r < d; ++r)
        for (int j = 0; j <= d; ++j) M[d + r][r + j] = B[d - j];
    return det_bareiss(std::move(M));
}

// Bits b such that distinct pairwise root sums differ by more than 2^-b
// (Mahler's separation bound on the squarefree part of the sum polynomial).
long sum_separation_bits(const IntPoly& f) {
    IntPoly G = root_sum_poly(f);
    QPoly g = polyv::make_monic(G.to_q());
    QPoly sf = polyv::divmod(g, polyv::gcd_monic(g, polyv::derivative(g))).first;
    IntPoly S = from_q_primitive(sf);
    const int n = S.degree();
    if (n < 2) return 64;
    const Rat nn = norm2_sq(S);
    const long normbits = static_cast<long>(mpz_sizeinbase(nn.get_num().get_mpz_t(), 2));
    const double bits = ((n + 2) / 2.0) * std::log2(static_cast<double>(n)) +
                        (n - 1) * (normbits / 2.0 + 1.0);
    return static_cast<long>(bits) + 8;
}

// Contracts until the real interval has absolute width <= 2^-bits.
void refine_abs_re(const IntPoly& f, const IntPoly& df, CInterval& b, bool real_root, long bits) {
    int guard = 0;
    while (true) {
        MF w(b.prec());
        mpfr_sub(w.get(), b.re().hi(), b.re().lo(), MPFR_RNDU);
        if (mpfr_zero_p(w.get()) || mpfr_get_exp(w.get()) <= -bits) return;
        mpfr_prec_t wp = std::max<mpfr_prec_t>(b.prec() * 2, 256);
        CInterval wider{RInterval::from_endpoints(b.re().lo(), b.re().hi(), wp),
                        RInterval::from_endpoints(b.im().lo(), b.im().hi(), wp)};
        if (!newton_contract(f, df, wider, wp) || ++guard > 80)
            throw precision_error("root refinement stalled for " + f.str());
        b = wider;
        if (real_root) b = {b.re(), RInterval(wp)};
    }
}

// width <= 2^-bits * max(1, |root|), certified from the box itself.
bool narrow_enough(const CInterval& box, long bits) {
    MF w(box.prec()), t(box.prec()), s(box.prec());
    mpfr_sub(w.get(), box.re().hi(), box.re().lo(), MPFR_RNDU);
    mpfr_sub(t.get(), box.im().hi(), box.im().lo(), MPFR_RNDU);
    mpfr_max(w.get(), w.get(), t.get(), MPFR_RNDU);
    if (mpfr_zero_p(w.get())) return true;
    // s = max(1, lower bound of |root|)
    RInterval a = box.abs();
    mpfr_set_ui(s.get(), 1, MPFR_RNDD);
    mpfr_max(s.get(), s.get(), a.lo(), MPFR_RNDD);
    mpfr_mul_2si(s.get(), s.get(), -bits, MPFR_RNDD);
    return mpfr_lessequal_p(w.get(), s.get());
}

struct Certified {
    std::vector<CInterval> box;
    std::vector<int> conj_index;
    std::vector<bool> is_real;
};

// A-posteriori certification of a full set of approximations.
bool certify(const IntPoly& f, const IntPoly& df, const std::vector<CF>& z, mpfr_prec_t wp,
             Certified& out) {
    const int d = static_cast<int>(z.size());
    std::vector<CInterval> boxes;
    boxes.reserve(d);
    for (const CF& zi : z) {
        CInterval p = point_box(zi, wp);
        CInterval fv = eval_interval(f, p);
        CInterval dv = eval_interval(df, p);
        RInterval da = dv.abs_sq();
        if (da.contains_zero()) return false;
        // radius = d * |f| / |f'|  (upper bound)
        RInterval rad = fv.abs() / da.sqrt() * RInterval::exact_int(d, wp);
        boxes.push_back(widen_box(zi, rad.hi(), wp));
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!boxes[i].disjoint(boxes[j])) return false;
    // Conjugate matching: conj(box_i) must meet exactly one box.
    std::vector<int> cj(d, -1);
    for (int i = 0; i < d; ++i) {
        CInterval cb = boxes[i].conj();
        int hit = -1;
        for (int j = 0; j < d; ++j) {
            if (!cb.disjoint(boxes[j])) {
                if (hit >= 0) return false;
                hit = j;
            }
        }
        if (hit < 0) return false; // cannot happen for real f, but be safe
        cj[i] = hit;
    }
    for (int i = 0; i < d; ++i)
        if (cj[cj[i]] != i) return false;
    std::vector<bool> real(d, false);
    for (int i = 0; i < d; ++i) {
        if (cj[i] == i) {
            // Real root: collapse the imaginary part to the exact zero point.
            if (!boxes[i].im().contains_zero()) return false;
            boxes[i] = {boxes[i].re(), RInterval(wp)};
            real[i] = true;
        }
    }
    // Tighten pairs symmetrically: both boxes contain mutually conjugate
    // roots, so intersecting with the partner's conjugate keeps the root.
    for (int i = 0; i < d; ++i) {
        if (cj[i] > i) {
            int j = cj[i];
            CInterval meet{boxes[j].re().intersect(boxes[i].conj().re()),
                           boxes[j].im().intersect(boxes[i].conj().im())};
            boxes[j] = meet;
            boxes[i] = meet.conj();
        }
    }
    out.box = std::move(boxes);
    out.conj_index = std::move(cj);
    out.is_real = std::move(real);
    return true;
}

} // namespace

CInterval eval_interval(const IntPoly& p, const CInterval& x) {
    mpfr_prec_t wp = x.prec();
    CInterval acc(wp);
    for (std::size_t i = p.c.size(); i-- > 0;) {
        acc = acc * x + CInterval{r_from_int(p.c[i], wp), RInterval(wp)};
    }
    return acc;
}

RInterval eval_interval_real(const IntPoly& p, const RInterval& x) {
    mpfr_prec_t wp = x.prec();
    RInterval acc(wp);
    for (std::size_t i = p.c.size(); i-- > 0;) acc = acc * x + r_from_int(p.c[i], wp);
    return acc;
}

std::vector<int> IsolatedRoots::class_representatives() const {
    std::vector<int> reps;
    for (int i = 0; i < count(); ++i) {
        if (is_real[i]) {
            reps.push_back(i);
        } else if (box[i].im().definite_sign() > 0) {
            reps.push_back(i);
        }
    }
    return reps;
}

IsolatedRoots isolate_roots(const IntPoly& f, long precision_bits, bool canonical_order) {
    if (f.is_zero() || !f.is_monic())
        throw domain_error("root isolation requires a monic polynomial, got " + f.str());
    const int d = f.degree();
    IsolatedRoots out;
    out.poly = f;
    out.precision_bits = precision_bits;
    if (d == 0) return out;

    {
        // Squarefree gate; report the repeated part exactly.
        QPoly g = polyv::gcd_monic(f.to_q(), polyv::derivative(f.to_q()));
        if (polyv::deg(g) > 0)
            throw domain_error("polynomial is not squarefree; gcd(f, f') = " +
                               from_q_primitive(g).str());
    }

    if (d == 1) {
        // Root is the rational -a0, exactly.
        Rat r = -Rat(f.c[0]);
        out.box.push_back(CInterval::from_rat(r, 128));
        out.conj_index = {0};
        out.is_real = {true};
        return out;
    }

    // ---- Stage 1: Aberth-Ehrlich at a fixed, target-independent schedule ----
    long coeff_bits = 0;
    for (const Int& c : f.c)
        coeff_bits = std::max(coeff_bits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    mpfr_prec_t wp = std::max<mpfr_prec_t>(320, coeff_bits + 64);

    // Cauchy bound 1 + max|a_i| for the initial circle.
    double bound = 0;
    for (int i = 0; i < d; ++i) {
        double m = std::fabs(mpz_get_d(f.c[i].get_mpz_t()));
        bound = std::max(bound, m);
    }
    bound += 1.0;

    std::vector<CF> z;
    z.reserve(d);
    for (int k = 0; k < d; ++k) {
        CF p(wp);
        double th = 2.0 * 3.14159265358979323846 * k / d + 0.3779;
        mpfr_set_d(p.re.get(), bound * std::cos(th), MPFR_RNDN);
        mpfr_set_d(p.im.get(), bound * std::sin(th), MPFR_RNDN);
        z.push_back(p);
    }

    IntPoly df = f.derivative();
    Certified cert;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 12)
            throw precision_error("root isolation did not certify for " + f.str());
        // Raise the working precision of the iterates; re-seed any iterate
        // that went non-finite and nudge exact collisions apart so the
        // Aberth repulsion term stays well defined.
        for (int i = 0; i < d; ++i) {
            CF& zi = z[i];
            MF re(wp), im(wp);
            mpfr_set(re.get(), zi.re.get(), MPFR_RNDN);
            mpfr_set(im.get(), zi.im.get(), MPFR_RNDN);
            zi.re = std::move(re);
            zi.im = std::move(im);
            if (!mpfr_number_p(zi.re.get()) || !mpfr_number_p(zi.im.get())) {
                double th = 2.0 * 3.14159265358979323846 * i / d + 0.17 * (attempt + 1);
                mpfr_set_d(zi.re.get(), bound * std::cos(th), MPFR_RNDN);
                mpfr_set_d(zi.im.get(), bound * std::sin(th), MPFR_RNDN);
            }
        }
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (mpfr_equal_p(z[i].re.get(), z[j].re.get()) &&
                    mpfr_equal_p(z[i].im.get(), z[j].im.get())) {
                    MF delta(wp);
                    mpfr_set_ui_2exp(delta.get(), static_cast<unsigned long>(j + 1),
                                     -static_cast<long>(wp) / 3, MPFR_RNDN);
                    mpfr_add(z[j].re.get(), z[j].re.get(), delta.get(), MPFR_RNDN);
                }
        const double eps = std::ldexp(1.0, static_cast<int>(-(wp * 3) / 5));
        MF t1(wp), t2(wp), den(wp);
        for (int iter = 0; iter < 120; ++iter) {
            double worst = 0;
            for (int i = 0; i < d; ++i) {
                CF val(wp), dval(wp), n(wp), corr(wp);
                eval_cf(f, z[i], val, dval, wp);
                if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) continue;
                cf_div(n, val, dval, t1, t2, den); // Newton step f/f'
                // Aberth correction: w = n / (1 - n * sum_j 1/(z_i - z_j))
                CF s(wp), diff(wp), invd(wp), one(wp);
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    cf_sub(diff, z[i], z[j]);
                    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                    mpfr_set_zero(one.im.get(), 1);
                    cf_div(invd, one, diff, t1, t2, den);
                    mpfr_add(s.re.get(), s.re.get(), invd.re.get(), MPFR_RNDN);
                    mpfr_add(s.im.get(), s.im.get(), invd.im.get(), MPFR_RNDN);
                }
                CF ns(wp), denom(wp);
                cf_mul(ns, n, s, t1, t2);
                mpfr_ui_sub(denom.re.get(), 1, ns.re.get(), MPFR_RNDN);
                mpfr_neg(denom.im.get(), ns.im.get(), MPFR_RNDN);
                cf_div(corr, n, denom, t1, t2, den);
                mpfr_sub(z[i].re.get(), z[i].re.get(), corr.re.get(), MPFR_RNDN);
                mpfr_sub(z[i].im.get(), z[i].im.get(), corr.im.get(), MPFR_RNDN);
                worst = std::max(worst, cf_abs_upper(corr) / (cf_abs_upper(z[i]) + 1.0));
            }
            if (worst < eps) break;
        }
        if (certify(f, df, z, wp, cert)) break;
        wp *= 2;
    }

    // ---- Stage 2: canonical (Re, Im) order, refining until certain ----
    const int cap = 40;
    std::optional<long> tie_bits; // lazy Mahler budget for real-part equality
    auto refine_pair = [&](int i, int j) {
        for (int k : {i, j}) {
            mpfr_prec_t p2 = cert.box[k].prec() * 2;
            CInterval widened{RInterval::from_endpoints(cert.box[k].re().lo(),
                                                        cert.box[k].re().hi(), p2),
                              RInterval::from_endpoints(cert.box[k].im().lo(),
                                                        cert.box[k].im().hi(), p2)};
            if (!newton_contract(f, df, widened, p2))
                throw precision_error("refinement stalled for " + f.str());
            cert.box[k] = widened;
        }
    };
    auto less_certified = [&](int i, int j) -> bool {
        if (cert.conj_index[i] == j && i != j) {
            // Same conjugate pair: negative imaginary part first.
            for (int round = 0; round <= cap; ++round) {
                if (cert.box[i].im().definite_sign() != 0)
                    return cert.box[i].im().definite_sign() < 0;
                refine_pair(i, j);
            }
            throw precision_error("could not sign a conjugate pair of " + f.str());
        }
        for (int round = 0; round < 3; ++round) {
            if (cert.box[i].re().disjoint(cert.box[j].re()))
                return cert.box[i].re().definitely_less(cert.box[j].re());
            refine_pair(i, j);
        }
        // Persistent overlap: the real parts may be exactly equal.  Refine
        // past the separation bound; an overlap surviving it proves equality,
        // and the boxes' pairwise disjointness then moves to Im.
        if (d > 10)
            throw precision_error("canonical ordering tie beyond supported degree for " +
                                  f.str());
        if (!tie_bits) tie_bits = sum_separation_bits(f);
        refine_abs_re(f, df, cert.box[i], cert.is_real[i], *tie_bits + 3);
        refine_abs_re(f, df, cert.box[j], cert.is_real[j], *tie_bits + 3);
        if (cert.box[i].re().disjoint(cert.box[j].re()))
            return cert.box[i].re().definitely_less(cert.box[j].re());
        if (!cert.box[i].im().disjoint(cert.box[j].im()))
            throw precision_error("canonical ordering failed to separate roots of " + f.str());
        return cert.box[i].im().definitely_less(cert.box[j].im());
    };
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    if (canonical_order) {
        // Insertion sort: every comparison is individually certified.
        for (int i = 1; i < d; ++i) {
            int k = order[i];
            int j = i - 1;
            while (j >= 0 && less_certified(k, order[j])) {
                order[j + 1] = order[j];
                --j;
            }
            order[j + 1] = k;
        }
    }
    std::vector<int> pos(d);
    for (int i = 0; i < d; ++i) pos[order[i]] = i;
    out.box.resize(d);
    out.conj_index.resize(d);
    out.is_real.resize(d);
    for (int i = 0; i < d; ++i) {
        out.box[i] = cert.box[order[i]];
        out.conj_index[i] = pos[cert.conj_index[order[i]]];
        out.is_real[i] = cert.is_real[order[i]];
    }

    refine_roots(out, precision_bits);
    return out;
}

void refine_roots(IsolatedRoots& r, long precision_bits) {
    r.precision_bits = std::max(r.precision_bits, precision_bits);
    if (r.poly.degree() <= 1) return;
    IntPoly df = r.poly.derivative();
    for (std::size_t i = 0; i < r.box.size(); ++i) {
        if (static_cast<int>(i) != r.conj_index[i] &&
            r.conj_index[i] < static_cast<int>(i))
            continue; // pairs: refine the representative, mirror below
        CInterval& b = r.box[i];
        int guard = 0;
        while (!narrow_enough(b, precision_bits)) {
            mpfr_prec_t wp = std::max<mpfr_prec_t>(b.prec() * 2, 256);
            CInterval wider{RInterval::from_endpoints(b.re().lo(), b.re().hi(), wp),
                            RInterval::from_endpoints(b.im().lo(), b.im().hi(), wp)};
            if (!newton_contract(r.poly, df, wider, wp) || ++guard > 64)
                throw precision_error("root refinement stalled for " + r.poly.str());
            b = wider;
            if (r.is_real[i]) b = {b.re(), RInterval(wp)};
        }
        if (r.conj_index[i] != static_cast<int>(i)) r.box[r.conj_index[i]] = b.conj();
    }
}

} // namespace cps
