// Dense univariate polynomial arithmetic over an arbitrary field type F.
//
// A polynomial is a coefficient vector, lowest degree first, with no trailing
// zeros (the zero polynomial is the empty vector). F needs value semantics,
// +,-,*,/ and ==; division is only used where the code guarantees the divisor
// is invertible (monic divisors, field gcds). The same template serves ℚ and
// number-field-tower coefficients.
#pragma once

#include <utility>
#include <vector>

#include "cps/errors.hpp"

namespace cps::polyv {

template <class F>
void trim(std::vector<F>& p) {
    while (!p.empty() && p.back() == F(0)) p.pop_back();
}

template <class F>
int deg(const std::vector<F>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <class F>
bool is_zero(const std::vector<F>& p) {
    return p.empty();
}

template <class F>
std::vector<F> add(const std::vector<F>& a, const std::vector<F>& b) {
    std::vector<F> r(std::max(a.size(), b.size()), F(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    trim(r);
    return r;
}

template <class F>
std::vector<F> neg(std::vector<F> a) {
    for (F& x : a) x = F(0) - x;
    return a;
}

template <class F>
std::vector<F> sub(const std::vector<F>& a, const std::vector<F>& b) {
    return add(a, neg(b));
}

template <class F>
std::vector<F> mul(const std::vector<F>& a, const std::vector<F>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<F> r(a.size() + b.size() - 1, F(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
}

template <class F>
std::vector<F> mul_scalar(std::vector<F> a, const F& c) {
    for (F& x : a) x = x * c;
    trim(a);
    return a;
}

// Euclidean division; the divisor's leading coefficient must be invertible.
template <class F>
std::pair<std::vector<F>, std::vector<F>> divmod(std::vector<F> num, const std::vector<F>& den) {
    if (den.empty()) throw domain_error("polynomial division by zero");
    if (num.size() < den.size()) return {{}, std::move(num)};
    const F lead = den.back();
    std::vector<F> q(num.size() - den.size() + 1, F(0));
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        if (num[i] == F(0)) continue;
        F c = num[i] / lead;
        int shift = i - (static_cast<int>(den.size()) - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[shift + j] = num[shift + j] - c * den[j];
    }
    trim(num);
    trim(q);
    return {std::move(q), std::move(num)};
}

template <class F>
std::vector<F> make_monic(std::vector<F> p) {
    if (p.empty()) return p;
    const F lead = p.back();
    for (F& x : p) x = x / lead;
    return p;
}

// Monic gcd by the Euclidean algorithm (coefficients form a field).
template <class F>
std::vector<F> gcd_monic(std::vector<F> a, std::vector<F> b) {
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a));
}

template <class F>
std::vector<F> derivative(const std::vector<F>& p) {
    std::vector<F> r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * F(static_cast<int>(i)));
    trim(r);
    return r;
}

template <class F, class X>
X eval(const std::vector<F>& p, const X& x) {
    X acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + X(p[i]);
    return acc;
}

// p(c*x) for a scalar c: coefficient i picks up c^i.
template <class F>
std::vector<F> scale_arg(const std::vector<F>& p, const F& c) {
    std::vector<F> r = p;
    F pw(1);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = r[i] * pw;
        pw = pw * c;
    }
    trim(r);
    return r;
}

} // namespace cps::polyv
