#include "cps/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace cps {

RInterval RInterval::from_rat(const Rat& q, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::from_double(double lo, double hi, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_d(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), hi, MPFR_RNDU);
    return r;
}

RInterval RInterval::from_decimal(const std::string& text, mpfr_prec_t prec) {
    RInterval r(prec);
    if (mpfr_set_str(r.lo_.get(), text.c_str(), 10, MPFR_RNDD) != 0 &&
        mpfr_nan_p(r.lo_.get()))
        throw parse_error("bad decimal literal: '" + text + "'");
    mpfr_set_str(r.hi_.get(), text.c_str(), 10, MPFR_RNDU);
    return r;
}

RInterval RInterval::exact_int(long v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

RInterval RInterval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
    return r;
}

MF RInterval::mid(mpfr_prec_t prec) const {
    MF m(prec);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    return m;
}

RInterval RInterval::hull(const RInterval& a, const RInterval& b) {
    RInterval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator+(const RInterval& o) const {
    RInterval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi(), o.hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator-(const RInterval& o) const {
    RInterval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_.get(), lo(), o.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi(), o.lo(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator-() const {
    RInterval r(prec_);
    mpfr_neg(r.lo_.get(), hi(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator*(const RInterval& o) const {
    RInterval r(std::max(prec_, o.prec_));
    // min/max over the four endpoint products, each rounded both ways.
    MF best_lo(r.prec_), best_hi(r.prec_), t(r.prec_);
    bool first = true;
    mpfr_srcptr as[2] = {lo(), hi()};
    mpfr_srcptr bs[2] = {o.lo(), o.hi()};
    for (auto a : as)
        for (auto b : bs) {
            mpfr_mul(t.get(), a, b, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), best_lo.get())) mpfr_set(best_lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a, b, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), best_hi.get())) mpfr_set(best_hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    r.lo_ = best_lo;
    r.hi_ = best_hi;
    return r;
}

RInterval RInterval::inv() const {
    if (contains_zero()) throw precision_error("interval reciprocal of interval containing zero");
    RInterval r(prec_);
    mpfr_ui_div(r.lo_.get(), 1, hi(), MPFR_RNDD);
    mpfr_ui_div(r.hi_.get(), 1, lo(), MPFR_RNDU);
    return r;
}

RInterval RInterval::operator/(const RInterval& o) const { return *this * o.inv(); }

RInterval RInterval::sqrt() const {
    RInterval r(prec_);
    if (mpfr_sgn(lo()) < 0) {
        if (mpfr_sgn(hi()) < 0) throw precision_error("sqrt of negative interval");
        mpfr_set_zero(r.lo_.get(), 1);
    } else {
        mpfr_sqrt(r.lo_.get(), lo(), MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_.get(), hi(), MPFR_RNDU);
    return r;
}

RInterval RInterval::abs() const {
    RInterval r(prec_);
    if (mpfr_sgn(lo()) >= 0) return *this;
    if (mpfr_sgn(hi()) <= 0) return -*this;
    mpfr_set_zero(r.lo_.get(), 1);
    MF a(prec_), b(prec_);
    mpfr_abs(a.get(), lo(), MPFR_RNDU);
    mpfr_abs(b.get(), hi(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), a.get(), b.get(), MPFR_RNDU);
    return r;
}

RInterval RInterval::sq() const {
    RInterval a = abs();
    return a * a;
}

bool RInterval::contains_zero() const { return mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0; }

bool RInterval::contains(const Rat& q) const {
    // lo <= q <= hi, decided exactly via mpfr_cmp_q.
    return mpfr_cmp_q(lo(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi(), q.get_mpq_t()) >= 0;
}

int RInterval::definite_sign() const {
    if (mpfr_sgn(lo()) > 0) return 1;
    if (mpfr_sgn(hi()) < 0) return -1;
    return 0;
}

bool RInterval::definitely_less(const RInterval& o) const { return mpfr_less_p(hi(), o.lo()); }
bool RInterval::definitely_leq(const RInterval& o) const { return mpfr_lessequal_p(hi(), o.lo()); }
bool RInterval::disjoint(const RInterval& o) const {
    return mpfr_less_p(hi(), o.lo()) || mpfr_less_p(o.hi(), lo());
}
bool RInterval::contains_interval(const RInterval& o) const {
    return mpfr_lessequal_p(lo(), o.lo()) && mpfr_greaterequal_p(hi(), o.hi());
}

RInterval RInterval::intersect(const RInterval& o) const {
    RInterval r(std::max(prec_, o.prec_));
    mpfr_max(r.lo_.get(), lo(), o.lo(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), hi(), o.hi(), MPFR_RNDU);
    if (mpfr_less_p(r.hi_.get(), r.lo_.get()))
        throw precision_error("empty interval intersection");
    return r;
}

double RInterval::mid_double() const {
    MF m(prec_);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    return m.to_double();
}

double RInterval::width_double() const {
    MF w(prec_);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return w.to_double();
}

bool RInterval::narrower_than(long bits) const {
    MF w(prec_);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    if (mpfr_zero_p(w.get())) return true;
    return mpfr_get_exp(w.get()) <= -bits;
}

std::string RInterval::str(int digits) const {
    char buf[256];
    MF m(prec_);
    mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, m.get());
    return buf;
}

CInterval CInterval::operator/(const CInterval& o) const {
    RInterval d = o.abs_sq();
    if (d.contains_zero())
        throw precision_error("complex interval division by rectangle containing zero");
    CInterval num = *this * o.conj();
    return {num.re() / d, num.im() / d};
}

RInterval CInterval::diameter_bound() const {
    RInterval wr = re_ - re_; // symmetric interval of width 2*w(re)
    RInterval wi = im_ - im_;
    return (wr.sq() + wi.sq()).sqrt();
}

} // namespace cps
