#include "cps/formal.hpp"

#include <algorithm>

#include "cps/errors.hpp"

namespace cps {

int Monomial::degree() const {
    int d = 0;
    for (const auto& [name, e] : v) d += e;
    return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.v.size() || j < b.v.size()) {
        if (j == b.v.size() || (i < a.v.size() && a.v[i].first < b.v[j].first)) {
            out.v.push_back(a.v[i++]);
        } else if (i == a.v.size() || b.v[j].first < a.v[i].first) {
            out.v.push_back(b.v[j++]);
        } else {
            out.v.emplace_back(a.v[i].first, a.v[i].second + b.v[j].second);
            ++i, ++j;
        }
    }
    return out;
}

bool divides(const Monomial& a, const Monomial& b) {
    std::size_t i = 0;
    for (const auto& [name, e] : a.v) {
        while (i < b.v.size() && b.v[i].first < name) ++i;
        if (i == b.v.size() || b.v[i].first != name || b.v[i].second < e) return false;
    }
    return true;
}

Monomial divide(const Monomial& b, const Monomial& a) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& [name, e] : b.v) {
        int drop = 0;
        while (i < a.v.size() && a.v[i].first < name) ++i;
        if (i < a.v.size() && a.v[i].first == name) drop = a.v[i].second;
        if (e > drop) out.v.emplace_back(name, e - drop);
    }
    return out;
}

int cmp_monomial(const Monomial& a, const Monomial& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // Same degree: lexicographic with earlier names and higher powers first.
    std::size_t i = 0;
    for (; i < a.v.size() && i < b.v.size(); ++i) {
        if (a.v[i].first != b.v[i].first)
            return a.v[i].first < b.v[i].first ? 1 : -1;
        if (a.v[i].second != b.v[i].second)
            return a.v[i].second > b.v[i].second ? 1 : -1;
    }
    if (i < a.v.size()) return 1;
    if (i < b.v.size()) return -1;
    return 0;
}

TPoly::TPoly(const TowerElem& v) {
    if (!v.is_zero()) terms_.emplace_back(Monomial::one(), v);
}

TPoly TPoly::var(const std::string& name) {
    return term(TowerElem(1), Monomial::var(name));
}

TPoly TPoly::term(const TowerElem& coeff, const Monomial& m) {
    TPoly p;
    if (!coeff.is_zero()) p.terms_.emplace_back(m, coeff);
    return p;
}

bool TPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

const TowerElem& TPoly::constant() const {
    static const TowerElem zero;
    if (terms_.empty()) return zero;
    if (!is_constant()) throw domain_error("polynomial still contains formal variables: " + str(*this));
    return terms_[0].second;
}

int TPoly::degree() const {
    return terms_.empty() ? -1 : terms_[0].first.degree();
}

std::vector<std::string> TPoly::vars() const {
    std::vector<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [name, e] : m.v) out.push_back(name);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TowerElem TPoly::substitute(const std::map<std::string, TowerElem>& values) const {
    TowerElem acc;
    for (const auto& [m, c] : terms_) {
        TowerElem t = c;
        for (const auto& [name, e] : m.v) {
            auto it = values.find(name);
            if (it == values.end())
                throw domain_error("no value supplied for formal variable " + name);
            t = t * it->second.pow(static_cast<unsigned long>(e));
        }
        acc = acc + t;
    }
    return acc;
}

void TPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
        return cmp_monomial(a.first, b.first) > 0;
    });
    std::vector<std::pair<Monomial, TowerElem>> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(std::move(t));
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
}

TPoly TPoly::operator-() const {
    TPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

TPoly operator+(const TPoly& a, const TPoly& b) {
    TPoly out;
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.normalize();
    return out;
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.terms_.emplace_back(ma * mb, ca * cb);
    out.normalize();
    return out;
}

std::optional<TPoly> divide_exact(const TPoly& a, const TPoly& b) {
    if (b.is_zero()) throw domain_error("division by the zero polynomial");
    // Greedy leading-term division: when b | a this peels one quotient term
    // per round because the monomial order is multiplicative.
    TPoly rem = a, quot;
    const auto& lb = b.terms()[0];
    while (!rem.is_zero()) {
        const auto& lr = rem.terms()[0];
        if (!divides(lb.first, lr.first)) return std::nullopt;
        TPoly qt = TPoly::term(lr.second / lb.second, divide(lr.first, lb.first));
        quot = quot + qt;
        rem = rem - qt * b;
    }
    return quot;
}

std::string str(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (const auto& [name, e] : m.v) {
        if (!s.empty()) s += "*";
        s += name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string str(const TPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        const std::string cs = str(c);
        if (m.is_one()) {
            s += cs;
        } else if (cs == "1") {
            s += str(m);
        } else {
            const bool wrap = cs.find_first_of("+- ") != std::string::npos;
            s += (wrap ? "(" + cs + ")" : cs) + "*" + str(m);
        }
    }
    return s;
}

} // namespace cps
