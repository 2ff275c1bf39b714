#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cps/tower.hpp"

namespace cps {

// Product of named formal variables with positive integer exponents, kept
// sorted by name. The empty monomial is 1.
struct Monomial {
    std::vector<std::pair<std::string, int>> v;

    bool is_one() const { return v.empty(); }
    int degree() const;
    static Monomial one() { return {}; }
    static Monomial var(const std::string& name) { return Monomial{{{name, 1}}}; }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.v == b.v; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// Divisibility of monomials; quotient is only meaningful when divides() holds.
bool divides(const Monomial& a, const Monomial& b);
Monomial divide(const Monomial& b, const Monomial& a);

// Graded lexicographic comparison: total degree first, then variable names.
// This is a monomial order (multiplicative with 1 smallest), which the exact
// division below relies on.
int cmp_monomial(const Monomial& a, const Monomial& b);

// Polynomial in formal variables with number-field coefficients. Constants
// embed tower elements; variables stay independent symbols until substituted.
// Terms are kept sorted with the leading monomial first and zero coefficients
// dropped, so equal polynomials have identical representations.
class TPoly {
public:
    TPoly() = default;
    TPoly(int v) : TPoly(TowerElem(v)) {}
    explicit TPoly(const Rat& v) : TPoly(TowerElem(v)) {}
    explicit TPoly(const TowerElem& v);
    static TPoly var(const std::string& name);
    static TPoly term(const TowerElem& coeff, const Monomial& m);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The value of a constant polynomial; throws domain_error otherwise.
    const TowerElem& constant() const;
    int degree() const; // total degree, -1 for zero
    const std::vector<std::pair<Monomial, TowerElem>>& terms() const { return terms_; }
    std::vector<std::string> vars() const;

    // Replaces every variable by an exact field value; all variables occurring
    // in the polynomial must be present in the map.
    TowerElem substitute(const std::map<std::string, TowerElem>& values) const;

    TPoly operator-() const;
    friend TPoly operator+(const TPoly& a, const TPoly& b);
    friend TPoly operator-(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

private:
    std::vector<std::pair<Monomial, TowerElem>> terms_;
    void normalize();
};

// Exact quotient a / b; empty when b does not divide a. Division by zero is a
// domain_error.
std::optional<TPoly> divide_exact(const TPoly& a, const TPoly& b);

std::string str(const Monomial& m);
std::string str(const TPoly& p);

} // namespace cps
