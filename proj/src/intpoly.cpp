#include "cps/intpoly.hpp"

#include <sstream>

namespace cps {

IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::from_int_list(const std::vector<long>& coeffs) {
    std::vector<Int> v;
    v.reserve(coeffs.size());
    for (long x : coeffs) v.emplace_back(x);
    return IntPoly(std::move(v));
}

QPoly IntPoly::to_q() const {
    QPoly q;
    q.reserve(c.size());
    for (const Int& x : c) q.emplace_back(x);
    return q;
}

IntPoly IntPoly::derivative() const {
    std::vector<Int> r;
    for (std::size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * static_cast<long>(i));
    return IntPoly(std::move(r));
}

std::string IntPoly::str(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (first) {
            if (a < 0) out << "-";
            first = false;
        } else {
            out << (a < 0 ? " - " : " + ");
        }
        Int mag = abs(a);
        if (mag != 1 || i == 0) out << mag.get_str();
        if (i > 0) {
            if (mag != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(r));
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPoly(std::move(r));
}

IntPoly neg(IntPoly a) {
    for (Int& x : a.c) x = -x;
    return a;
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Int> rem = a.c;
    std::vector<Int> quot(a.c.size() - b.c.size() + 1, Int(0));
    const Int& lead = b.c.back();
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.c.size()) - 1; --i) {
        if (rem[i] == 0) continue;
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
        if (r != 0) return std::nullopt;
        int shift = i - (static_cast<int>(b.c.size()) - 1);
        quot[shift] = q;
        for (std::size_t j = 0; j < b.c.size(); ++j) rem[shift + j] -= q * b.c[j];
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

Int content(const IntPoly& p) {
    Int g = 0;
    for (const Int& x : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Int> r;
    r.reserve(p.c.size());
    for (const Int& x : p.c) r.push_back(x / g);
    return IntPoly(std::move(r));
}

IntPoly from_q_primitive(const QPoly& p) {
    Int den = 1;
    for (const Rat& x : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> r;
    r.reserve(p.size());
    for (const Rat& x : p) r.push_back(Int(x.get_num() * (den / x.get_den())));
    return primitive_part(IntPoly(std::move(r)));
}

IntPoly from_q_integral(const QPoly& p) {
    std::vector<Int> r;
    r.reserve(p.size());
    for (const Rat& x : p) {
        if (!is_integer(x))
            throw domain_error("expected integer polynomial coefficient, got " + to_string(x));
        r.push_back(x.get_num());
    }
    return IntPoly(std::move(r));
}

Rat eval(const IntPoly& p, const Rat& x) {
    Rat acc = 0;
    for (std::size_t i = p.c.size(); i-- > 0;) acc = acc * x + Rat(p.c[i]);
    return acc;
}

Rat norm2_sq(const IntPoly& p) {
    Rat s = 0;
    for (const Int& x : p.c) s += Rat(x * x);
    return s;
}

} // namespace cps
