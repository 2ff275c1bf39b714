// Spectral analysis of a prescribed self-similarity map.
//
// A spectrum is a conjugation-closed multiset of nonzero algebraic integers:
// the eigenvalues of a real diagonalizable matrix. It is stored grouped by
// minimal polynomial, each group carrying certified isolated roots and a
// multiplicity for every root slot (0 = absent conjugate). On top of the
// groups sit the exact |root| vs 1 decision, the spectral conditions a
// self-similar model set imposes, and the lattice dimension formulas.
#include "cps/spectrum.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "cps/cyclotomic.hpp"
#include "cps/errors.hpp"
#include "cps/exactmat.hpp"
#include "cps/factor.hpp"

namespace cps {

namespace {

// Deterministic group order: degree, then coefficients low-to-high. The same
// order the factorization routines use, so reports are stable.
bool group_before(const SpectrumGroup& a, const SpectrumGroup& b) {
    if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
    return a.f.c < b.f.c;
}

std::string root_label(const SpectrumGroup& g, int r) {
    std::ostringstream os;
    os << "root #" << r << " of " << g.f.str();
    return os.str();
}

// f is self-reciprocal up to sign: X^d f(1/X) == +-f. Only such polynomials
// can have a root of modulus exactly 1 (the inverse of a modulus-1 root is
// its complex conjugate, hence again a root).
bool is_reciprocal(const IntPoly& f) {
    const int d = f.degree();
    bool plus = true, minus = true;
    for (int i = 0; i <= d; ++i) {
        if (f.c[i] != f.c[d - i]) plus = false;
        if (f.c[i] != -f.c[d - i]) minus = false;
    }
    return plus || minus;
}

} // namespace

int SpectrumGroup::max_mult() const {
    return *std::max_element(mult.begin(), mult.end());
}

int SpectrumGroup::min_mult() const {
    return *std::min_element(mult.begin(), mult.end());
}

int SpectrumGroup::dimension_share() const {
    return std::accumulate(mult.begin(), mult.end(), 0);
}

SpectrumSpec SpectrumSpec::from_entries(const std::vector<SpectrumEntry>& entries,
                                        long precision_bits) {
    if (entries.empty()) throw domain_error("spectrum: no eigenvalues given");
    std::vector<SpectrumGroup> groups;
    for (const SpectrumEntry& en : entries) {
        const IntPoly& f = en.min_poly;
        if (f.degree() < 1)
            throw domain_error("spectrum: minimal polynomial must be nonconstant");
        if (!f.is_monic())
            throw domain_error("spectrum: eigenvalue is not an algebraic integer "
                               "(minimal polynomial " + f.str() + " is not monic)");
        if (f.degree() == 1 && f.c[0] == 0)
            throw domain_error("spectrum: eigenvalue 0 makes the map singular");
        if (en.multiplicity < 1)
            throw domain_error("spectrum: multiplicity must be at least 1 for " + f.str());

        SpectrumGroup* g = nullptr;
        for (SpectrumGroup& gg : groups)
            if (gg.f == f) { g = &gg; break; }
        if (g == nullptr) {
            if (!is_irreducible(f, precision_bits))
                throw domain_error("spectrum: " + f.str() +
                                   " is reducible, not a minimal polynomial");
            SpectrumGroup gg;
            gg.f = f;
            gg.iso = std::make_shared<IsolatedRoots>(isolate_roots(f, precision_bits));
            gg.mult.assign(static_cast<std::size_t>(f.degree()), 0);
            gg.cyclotomic = is_cyclotomic(f).has_value();
            groups.push_back(std::move(gg));
            g = &groups.back();
        }
        if (en.root_index < 0 || en.root_index >= f.degree())
            throw domain_error("spectrum: root index " + std::to_string(en.root_index) +
                               " out of range for " + f.str());
        if (g->mult[static_cast<std::size_t>(en.root_index)] != 0)
            throw domain_error("spectrum: duplicate entry for " + root_label(*g, en.root_index));
        g->mult[static_cast<std::size_t>(en.root_index)] = en.multiplicity;
    }

    for (const SpectrumGroup& g : groups)
        for (int r = 0; r < g.iso->count(); ++r) {
            const int rc = g.iso->conj_index[static_cast<std::size_t>(r)];
            if (g.mult[static_cast<std::size_t>(r)] != g.mult[static_cast<std::size_t>(rc)])
                throw domain_error("spectrum: not closed under complex conjugation: " +
                                   root_label(g, r) + " has multiplicity " +
                                   std::to_string(g.mult[static_cast<std::size_t>(r)]) +
                                   " but its conjugate (root #" + std::to_string(rc) +
                                   ") has " + std::to_string(g.mult[static_cast<std::size_t>(rc)]));
        }

    std::sort(groups.begin(), groups.end(), group_before);
    SpectrumSpec s;
    s.groups_ = std::move(groups);
    return s;
}

int SpectrumSpec::n() const {
    int total = 0;
    for (const SpectrumGroup& g : groups_) total += g.dimension_share();
    return total;
}

SpectrumSpec spectrum_from_matrix(const std::vector<std::vector<Rat>>& a,
                                  long precision_bits) {
    const int n = static_cast<int>(a.size());
    if (n == 0) throw domain_error("spectrum: empty matrix");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw domain_error("spectrum: matrix must be square");

    const ExactMatrix M = ExactMatrix::from_rational_rows(a);
    const CharData cd = faddeev_leverrier(M);
    QPoly chi(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) chi[static_cast<std::size_t>(i)] = cd.charpoly[i].constant().rat();

    if (chi[0] == 0)
        throw domain_error("spectrum: matrix is singular (0 is an eigenvalue)");

    std::vector<std::pair<IntPoly, int>> facs;
    for (const auto& [q, e] : factor_monic_rational(chi, precision_bits)) {
        for (const Rat& x : q)
            if (x.get_den() != 1)
                throw domain_error("spectrum: eigenvalue is not an algebraic integer "
                                   "(characteristic polynomial has the non-integral factor "
                                   "with constant term " + to_string(q[0]) + ")");
        facs.emplace_back(from_q_integral(q), e);
    }

    // Diagonalizable over C exactly when the product of the distinct
    // irreducible factors already annihilates the matrix.
    IntPoly radical = IntPoly::from_int_list({1});
    for (const auto& [f, e] : facs) radical = mul(radical, f);
    ExactMatrix acc(n, n);
    for (int i = 0; i < n; ++i) acc.at(i, i) = TPoly(Rat(radical.lead()));
    for (int i = radical.degree() - 1; i >= 0; --i) {
        acc = acc * M;
        for (int j = 0; j < n; ++j) acc.at(j, j) = acc.at(j, j) + TPoly(Rat(radical.c[static_cast<std::size_t>(i)]));
    }
    if (!is_zero(acc))
        throw domain_error("spectrum: matrix is not diagonalizable over C "
                           "(its minimal polynomial has a repeated root)");

    std::vector<SpectrumEntry> entries;
    for (const auto& [f, e] : facs)
        for (int r = 0; r < f.degree(); ++r)
            entries.push_back({f, r, e});
    return SpectrumSpec::from_entries(entries, precision_bits);
}

int modulus_vs_one(IsolatedRoots& iso, int r) {
    const IntPoly& f = iso.poly;
    const int d = f.degree();
    if (r < 0 || r >= iso.count()) throw domain_error("modulus_vs_one: root index out of range");
    if (d == 1) {
        // Root is -c0 exactly.
        const Int& c0 = f.c[0];
        const Int ab = abs(c0);
        return ab < 1 ? -1 : (ab == 1 ? 0 : 1);
    }

    const bool reciprocal = is_reciprocal(f);
    const bool cyclo = reciprocal && is_cyclotomic(f).has_value();
    const int rc = iso.conj_index[static_cast<std::size_t>(r)];

    long bits = iso.precision_bits;
    for (int attempt = 0; attempt < 24; ++attempt) {
        const RInterval abs2 = iso.box[static_cast<std::size_t>(r)].abs_sq();
        const RInterval one = RInterval::exact_int(1, abs2.prec());
        if (abs2.definitely_less(one)) return -1;
        if (one.definitely_less(abs2)) return 1;

        // |root|^2 straddles 1.
        if (cyclo) return 0; // every root of a cyclotomic polynomial has modulus 1
        if (reciprocal) {
            // The inverse of this root is again a root; locate it. If the
            // boxes pin it down uniquely, modulus 1 holds exactly when the
            // inverse is the complex conjugate.
            int candidate = -1;
            int hits = 0;
            for (int k = 0; k < iso.count(); ++k) {
                const CInterval prod =
                    iso.box[static_cast<std::size_t>(r)] * iso.box[static_cast<std::size_t>(k)];
                if (prod.re().contains(Rat(1)) && prod.im().contains_zero()) {
                    candidate = k;
                    ++hits;
                }
            }
            if (hits == 1 && candidate == rc) return 0;
            // Otherwise the inverse is a different root (or still ambiguous):
            // the modulus is not 1, so refinement will decide.
        }
        // A non-reciprocal polynomial cannot have a modulus-1 root, so the
        // straddle is a precision artifact; refine and retry.
        bits *= 2;
        refine_roots(iso, bits);
    }
    throw precision_error("modulus_vs_one: could not separate |root| from 1 for " + f.str());
}

PVerdict check_properties_P(const SpectrumSpec& spec) {
    PVerdict v;
    for (const SpectrumGroup& g : spec.groups()) {
        v.factors.push_back({g.f, g.degree(), g.max_mult(), g.min_mult(), g.cyclotomic});
        IsolatedRoots& iso = *g.iso;
        for (int r = 0; r < iso.count(); ++r) {
            if (modulus_vs_one(iso, r) <= 0) continue;
            // Root r is a conjugate of the prescribed eigenvalues with
            // modulus > 1: it must dominate every conjugate, strictly
            // somewhere.
            const int mr = g.mult[static_cast<std::size_t>(r)];
            if (mr == 0) {
                v.failures.push_back({g.f, r, PVerdict::Reason::not_an_eigenvalue,
                                      root_label(g, r) +
                                          " has modulus > 1 but is not an eigenvalue"});
                continue;
            }
            bool dominated = false;
            bool strict = false;
            for (int j = 0; j < iso.count(); ++j) {
                if (g.mult[static_cast<std::size_t>(j)] > mr) dominated = true;
                if (g.mult[static_cast<std::size_t>(j)] < mr) strict = true;
            }
            if (dominated)
                v.failures.push_back({g.f, r, PVerdict::Reason::multiplicity_too_small,
                                      root_label(g, r) + " has modulus > 1 but a conjugate "
                                                         "exceeds its multiplicity"});
            else if (!strict)
                v.failures.push_back({g.f, r, PVerdict::Reason::no_strict_inequality,
                                      root_label(g, r) + " has modulus > 1 but no conjugate "
                                                         "has strictly smaller multiplicity"});
        }
    }
    v.satisfied = v.failures.empty();
    return v;
}

std::string describe(const PVerdict& v) {
    if (v.satisfied) return "spectral conditions satisfied";
    std::ostringstream os;
    os << "spectral conditions violated:";
    for (const PVerdict::Failure& f : v.failures) os << "\n  - " << f.detail;
    return os.str();
}

MinDimension min_scheme_dimension(const SpectrumGroup& g) {
    MinDimension out;
    out.d = g.degree();
    out.M = g.max_mult();
    out.m = g.min_mult();
    if (out.d == 1) {
        out.regime = MinDimension::Regime::trivial_integer;
        out.s = g.dimension_share() + 1;
        return out;
    }
    if (out.d == 2 && !g.iso->is_real[0]) {
        out.regime = MinDimension::Regime::trivial_quadratic;
        out.s = g.dimension_share() + 2;
        return out;
    }
    out.regime = MinDimension::Regime::formula;
    out.s = static_cast<long>(out.m < out.M ? out.M : out.M + 1) * out.d;
    return out;
}

long naive_scheme_dimension(const SpectrumGroup& g) {
    const std::vector<int> reps = g.iso->class_representatives();
    const long u = static_cast<long>(reps.size());
    if (u < 2)
        throw domain_error("the direct-sum construction needs at least two root "
                           "classes; " + g.f.str() + " has " + std::to_string(u));
    long total = 0;
    long M = 0;
    for (int rep : reps) {
        const long l = g.mult[static_cast<std::size_t>(rep)];
        total += l;
        M = std::max(M, l);
    }
    const long K = std::max(M, (total + u - 2) / (u - 1)); // ceil(total / (u-1))
    return static_cast<long>(g.degree()) * K;
}

long min_set_dimension(const SpectrumSpec& spec) {
    const PVerdict v = check_properties_P(spec);
    if (!v.satisfied)
        throw certificate_error("no self-similar cut-and-project set exists: " + describe(v));
    long s = 0;
    for (const SpectrumGroup& g : spec.groups()) {
        const long d = g.degree();
        const long M = g.max_mult();
        if (g.cyclotomic && g.min_mult() == M)
            s += (M + 1) * d;
        else
            s += M * d;
    }
    return s;
}

} // namespace cps
