// Certified interval arithmetic on MPFR numbers.
//
// RInterval is a closed real interval [lo, hi] with endpoints rounded
// outward (down for lo, up for hi) through every operation, so any real
// result of the exact computation is guaranteed to lie inside. CInterval is
// a rectangle (re, im). These are the only numeric types the library trusts:
// whenever a decision (sign, comparison, membership) is needed, it is made
// only if the intervals are disjoint/definite, otherwise the caller refines
// precision or falls back to an exact algebraic test.
#pragma once

#include <mpfr.h>

#include <string>

#include "cps/errors.hpp"
#include "cps/rational.hpp"

namespace cps {

// Small RAII wrapper for a single mpfr_t.
class MF {
public:
    explicit MF(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    MF(const MF& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    MF(MF&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    MF& operator=(const MF& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    MF& operator=(MF&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~MF() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

private:
    mpfr_t x_;
};

class RInterval {
public:
    // [0, 0] at the given working precision.
    explicit RInterval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec), prec_(prec) {}

    static RInterval from_rat(const Rat& q, mpfr_prec_t prec);
    static RInterval from_double(double lo, double hi, mpfr_prec_t prec);
    static RInterval from_decimal(const std::string& text, mpfr_prec_t prec); // point-ish interval
    static RInterval exact_int(long v, mpfr_prec_t prec);
    static RInterval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);
    static RInterval hull(const RInterval& a, const RInterval& b);

    // Midpoint as a plain MPFR value at the given precision.
    MF mid(mpfr_prec_t prec) const;

    mpfr_prec_t prec() const { return prec_; }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }

    RInterval operator+(const RInterval& o) const;
    RInterval operator-(const RInterval& o) const;
    RInterval operator-() const;
    RInterval operator*(const RInterval& o) const;
    RInterval operator/(const RInterval& o) const; // o must not contain 0
    RInterval inv() const;
    RInterval sqrt() const; // lower endpoint clamped at 0
    RInterval abs() const;
    RInterval sq() const; // tight square (result >= 0)

    bool contains_zero() const;
    bool contains(const Rat& q) const;
    int definite_sign() const; // -1, +1, or 0 when the interval straddles zero

    // Certified comparisons: true only when provable from the endpoints.
    bool definitely_less(const RInterval& o) const;
    bool definitely_leq(const RInterval& o) const;
    bool disjoint(const RInterval& o) const;
    bool contains_interval(const RInterval& o) const; // o subseteq this
    bool intersects(const RInterval& o) const { return !disjoint(o); }

    RInterval intersect(const RInterval& o) const; // throws precision_error if empty

    double mid_double() const;
    double width_double() const;
    // width <= 2^-bits ?
    bool narrower_than(long bits) const;

    std::string str(int digits = 20) const;

private:
    MF lo_, hi_;
    mpfr_prec_t prec_;
    friend class CInterval;
};

class CInterval {
public:
    explicit CInterval(mpfr_prec_t prec = 128) : re_(prec), im_(prec) {}
    CInterval(RInterval re, RInterval im) : re_(std::move(re)), im_(std::move(im)) {}

    static CInterval from_rat(const Rat& q, mpfr_prec_t prec) {
        return {RInterval::from_rat(q, prec), RInterval(prec)};
    }

    const RInterval& re() const { return re_; }
    const RInterval& im() const { return im_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    CInterval operator+(const CInterval& o) const { return {re_ + o.re_, im_ + o.im_}; }
    CInterval operator-(const CInterval& o) const { return {re_ - o.re_, im_ - o.im_}; }
    CInterval operator-() const { return {-re_, -im_}; }
    CInterval operator*(const CInterval& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    CInterval operator/(const CInterval& o) const;
    CInterval conj() const { return {re_, -im_}; }

    RInterval abs_sq() const { return re_.sq() + im_.sq(); }
    RInterval abs() const { return abs_sq().sqrt(); }

    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool disjoint(const CInterval& o) const { return re_.disjoint(o.re_) || im_.disjoint(o.im_); }
    bool contains_interval(const CInterval& o) const {
        return re_.contains_interval(o.re_) && im_.contains_interval(o.im_);
    }

    // Radius bound: max over the rectangle of the distance to the midpoint,
    // as an upper-rounded double-ish value via interval ops.
    RInterval diameter_bound() const;

    std::string str(int digits = 20) const { return re_.str(digits) + " + " + im_.str(digits) + "i"; }

private:
    RInterval re_, im_;
};

} // namespace cps
