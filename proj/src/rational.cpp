#include "cps/rational.hpp"

#include <cctype>

namespace cps {

Rat parse_rational(const std::string& text) {
    // mpq_class(string) accepts forms we do not want (whitespace, base
    // prefixes), so validate the shape first: [+-]digits[/digits].
    std::size_t i = 0;
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return pos > start;
    };
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    if (!digits(i)) throw parse_error("bad rational: '" + text + "'");
    if (i < text.size()) {
        if (text[i] != '/') throw parse_error("bad rational: '" + text + "'");
        ++i;
        if (!digits(i) || i != text.size()) throw parse_error("bad rational: '" + text + "'");
    }
    Rat q;
    // GMP rejects an explicit leading '+', so drop it.
    const std::string clean = text[0] == '+' ? text.substr(1) : text;
    if (q.set_str(clean, 10) != 0) throw parse_error("bad rational: '" + text + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& n) { return n.get_str(); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int to_integer(const Rat& q) {
    if (!is_integer(q)) throw domain_error("expected integer, got " + to_string(q));
    return q.get_num();
}

Int floor_int(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int ceil_int(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int symmetric_mod(const Int& x, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); // r in [0, m)
    if (2 * r > m) r -= m;
    return r;
}

std::uint64_t hash_int_vector(const std::vector<Int>& v) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const Int& x : v) {
        // Fold the magnitude and sign; collisions only cost a bucket probe.
        std::uint64_t w = static_cast<std::uint64_t>(mpz_get_ui(x.get_mpz_t()));
        if (sgn(x) < 0) w = ~w;
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace cps
