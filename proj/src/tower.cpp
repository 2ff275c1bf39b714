#include "cps/tower.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "cps/cyclotomic.hpp"
#include "cps/factor.hpp"
#include "cps/poly.hpp"

namespace cps {

namespace {

using EPoly = std::vector<TowerElem>; // dense univariate, tower coefficients

const std::shared_ptr<Tower>& common_tower(const TowerElem& a, const TowerElem& b) {
    if (a.tower() && b.tower() && a.tower() != b.tower())
        throw domain_error("mixing elements of different field towers");
    return a.tower() ? a.tower() : b.tower();
}

// Remainder modulo a monic polynomial (no coefficient inversions needed).
std::vector<TowerElem> reduce_mod(std::vector<TowerElem> v, const std::vector<TowerElem>& m) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(v.size()) - 1; i >= dm; --i) {
        if (v[i].is_zero()) continue;
        TowerElem c = v[i];
        v[i] = TowerElem(0);
        for (int j = 0; j < dm; ++j) v[i - dm + j] = v[i - dm + j] - c * m[j];
    }
    return v;
}

EPoly epoly_divide_exact(const EPoly& a, const EPoly& b) {
    auto [q, r] = polyv::divmod(a, b);
    if (!r.empty()) throw domain_error("internal: inexact polynomial division over tower");
    return q;
}

// p(q(X)) by Horner over the tower.
EPoly epoly_compose(const EPoly& p, const EPoly& q) {
    EPoly acc;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = polyv::mul(acc, q);
        acc = polyv::add(acc, EPoly{p[i]});
    }
    return acc;
}

CInterval eval_epoly_box(const EPoly& p, const CInterval& x, long bits) {
    CInterval acc(static_cast<mpfr_prec_t>(bits));
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + eval_box(p[i], bits);
    return acc;
}

// Res_Y(a, b) for Y-polynomials whose coefficients are polynomials over the
// tower (elements of L[X]): Sylvester matrix, fraction-free elimination.
EPoly resultant_y(const std::vector<EPoly>& a, const std::vector<EPoly>& b) {
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    const int n = da + db;
    std::vector<std::vector<EPoly>> M(n, std::vector<EPoly>(n));
    for (int r = 0; r < db; ++r)
        for (int j = 0; j <= da; ++j) M[r][r + j] = a[da - j];
    for (int r = 0; r < da; ++r)
        for (int j = 0; j <= db; ++j) M[db + r][r + j] = b[db - j];

    int sign = 1;
    EPoly prev = {TowerElem(1)};
    for (int k = 0; k < n - 1; ++k) {
        if (polyv::is_zero(M[k][k])) {
            int pr = -1;
            for (int i = k + 1; i < n; ++i)
                if (!polyv::is_zero(M[i][k])) { pr = i; break; }
            if (pr < 0) return {};
            std::swap(M[k], M[pr]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                EPoly t = polyv::sub(polyv::mul(M[k][k], M[i][j]), polyv::mul(M[i][k], M[k][j]));
                M[i][j] = t.empty() ? EPoly{} : epoly_divide_exact(t, prev);
            }
            M[i][k] = {};
        }
        prev = M[k][k];
    }
    EPoly det = M[n - 1][n - 1];
    return sign < 0 ? polyv::neg(det) : det;
}

// Irreducible monic factors of a squarefree monic polynomial over level k of
// T, by Trager's norm descent: shift by a multiple of the level generator
// until the norm (a resultant against the level's minimal polynomial) is
// squarefree one level down, factor there, and pull factors back up as gcds.
std::vector<EPoly> trager_squarefree(const std::shared_ptr<Tower>& T, const EPoly& s, int k) {
    if (polyv::deg(s) == 1) return {s};
    if (k == 0) {
        QPoly q(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) q[i] = s[i].rat();
        std::vector<EPoly> out;
        for (const auto& [f, mult] : factor_monic_rational(q)) {
            (void)mult; // squarefree input
            EPoly lifted(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) lifted[i] = TowerElem(f[i]);
            out.push_back(std::move(lifted));
        }
        return out;
    }

    const EPoly& m = T->level(k).minpoly;
    const TowerElem theta = TowerElem::generator(T, k);
    long c = 0;
    for (int trial = 0; trial < 200; ++trial, c = (c <= 0 ? -c + 1 : -c)) {
        EPoly hK = s;
        if (c != 0) {
            EPoly shift = {TowerElem(Rat(-c)) * theta, TowerElem(1)}; // X - c*theta
            hK = epoly_compose(s, shift);
        }

        // View hK in (L[X])[Y]: Y-coefficient j collects the theta^j parts.
        std::vector<EPoly> hY;
        for (std::size_t i = 0; i < hK.size(); ++i) {
            std::vector<TowerElem> tc; // theta-coefficients of hK[i]
            if (hK[i].level() == k)
                tc = hK[i].coeffs();
            else
                tc = {hK[i]};
            for (std::size_t j = 0; j < tc.size(); ++j) {
                if (tc[j].is_zero()) continue;
                if (hY.size() <= j) hY.resize(j + 1);
                if (hY[j].size() <= i) hY[j].resize(i + 1, TowerElem(0));
                hY[j][i] = tc[j];
            }
        }
        for (EPoly& row : hY) polyv::trim(row);
        while (!hY.empty() && hY.back().empty()) hY.pop_back();
        if (hY.size() <= 1) continue; // no theta dependence: shift again

        std::vector<EPoly> mY(m.size());
        for (std::size_t j = 0; j < m.size(); ++j)
            if (!m[j].is_zero()) mY[j] = {m[j]};

        EPoly N = resultant_y(mY, hY);
        if (N.empty()) continue;
        N = polyv::make_monic(std::move(N));
        if (polyv::deg(polyv::gcd_monic(N, polyv::derivative(N))) != 0) continue;

        std::vector<EPoly> sub;
        try {
            sub = trager_squarefree(T, N, k - 1);
        } catch (const precision_error&) {
            continue; // a different shift yields a better-conditioned norm
        }

        std::vector<EPoly> out;
        EPoly rem = hK;
        for (const EPoly& Hi : sub) {
            if (polyv::deg(rem) < 1) break;
            EPoly hi = polyv::gcd_monic(rem, Hi);
            if (polyv::deg(hi) < 1) continue; // this norm factor meets only conjugate shifts
            rem = epoly_divide_exact(rem, hi);
            if (c != 0) {
                EPoly unshift = {TowerElem(Rat(c)) * theta, TowerElem(1)}; // X + c*theta
                hi = epoly_compose(hi, unshift);
            }
            out.push_back(std::move(hi));
        }
        if (polyv::deg(rem) != 0)
            throw domain_error("internal: norm factors did not exhaust the polynomial");

        EPoly check = {TowerElem(1)};
        for (const EPoly& g : out) check = polyv::mul(check, g);
        if (!(check == s)) throw domain_error("internal: tower factorization product mismatch");
        return out;
    }
    throw domain_error("no shift separated the conjugates during norm descent");
}

// Indices of the not-yet-matched boxes that carry the roots of g: certified
// by count, since the deg(g) roots all sit in unmatched boxes and a box whose
// evaluation excludes zero cannot hold one.
std::vector<int> attribute_boxes(const EPoly& g, const std::shared_ptr<IsolatedRoots>& source,
                                 const std::vector<bool>& unmatched) {
    long bits = std::max<long>(source->precision_bits, 128);
    for (int attempt = 0; attempt < 24; ++attempt, bits *= 2) {
        refine_roots(*source, bits);
        std::vector<int> cands;
        for (int i = 0; i < source->count(); ++i) {
            if (!unmatched[i]) continue;
            if (eval_epoly_box(g, source->box[i], bits).contains_zero()) cands.push_back(i);
        }
        if (static_cast<int>(cands.size()) == polyv::deg(g)) return cands;
    }
    throw precision_error("could not attribute factor roots to isolated boxes");
}

// Index of the source root equal to `value` (which must be one of them),
// certified by escalating precision until exactly one box intersects.
int match_root_box(const TowerElem& value, const std::shared_ptr<IsolatedRoots>& source) {
    long bits = std::max<long>(source->precision_bits, 128);
    for (int attempt = 0; attempt < 24; ++attempt, bits *= 2) {
        refine_roots(*source, bits);
        CInterval vb = eval_box(value, bits);
        int hit = -1, nhits = 0;
        for (int i = 0; i < source->count(); ++i) {
            if (!vb.disjoint(source->box[i])) {
                hit = i;
                ++nhits;
            }
        }
        if (nhits == 1) return hit;
    }
    throw precision_error("could not match an exact root expression to an isolated root");
}

} // namespace

// ---------------------------------------------------------------- TowerElem

TowerElem TowerElem::make(std::shared_ptr<Tower> t, int level, std::vector<TowerElem> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) return TowerElem(0);
    if (coeffs.size() == 1) return coeffs[0];
    TowerElem e;
    e.tower_ = std::move(t);
    e.level_ = level;
    e.coeffs_ = std::move(coeffs);
    return e;
}

TowerElem TowerElem::generator(std::shared_ptr<Tower> t, int k) {
    return make(std::move(t), k, {TowerElem(0), TowerElem(1)});
}

const Rat& TowerElem::rat() const {
    if (level_ != 0) throw domain_error("tower element is not rational");
    return rat_;
}

TowerElem TowerElem::operator-() const {
    if (level_ == 0) return TowerElem(Rat(-rat_));
    std::vector<TowerElem> c(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
    return make(tower_, level_, std::move(c));
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) {
    if (a.level_ == 0 && b.level_ == 0) return TowerElem(Rat(a.rat_ + b.rat_));
    if (a.level_ == b.level_) {
        const auto& t = common_tower(a, b);
        std::vector<TowerElem> c(std::max(a.coeffs_.size(), b.coeffs_.size()), TowerElem(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return TowerElem::make(t, a.level_, std::move(c));
    }
    const TowerElem& hi = a.level_ > b.level_ ? a : b;
    const TowerElem& lo = a.level_ > b.level_ ? b : a;
    common_tower(hi, lo);
    std::vector<TowerElem> c = hi.coeffs_;
    c[0] = c[0] + lo;
    return TowerElem::make(hi.tower_, hi.level_, std::move(c));
}

TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    if (a.level_ == 0 && b.level_ == 0) return TowerElem(Rat(a.rat_ * b.rat_));
    if (a.is_zero() || b.is_zero()) return TowerElem(0);
    if (a.level_ == b.level_) {
        const auto& t = common_tower(a, b);
        std::vector<TowerElem> c(a.coeffs_.size() + b.coeffs_.size() - 1, TowerElem(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
        c = reduce_mod(std::move(c), t->level(a.level_).minpoly);
        return TowerElem::make(t, a.level_, std::move(c));
    }
    const TowerElem& hi = a.level_ > b.level_ ? a : b;
    const TowerElem& lo = a.level_ > b.level_ ? b : a;
    common_tower(hi, lo);
    std::vector<TowerElem> c(hi.coeffs_.size());
    for (std::size_t i = 0; i < hi.coeffs_.size(); ++i) c[i] = hi.coeffs_[i] * lo;
    return TowerElem::make(hi.tower_, hi.level_, std::move(c));
}

TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * b.inv(); }

bool operator==(const TowerElem& a, const TowerElem& b) {
    if (a.level_ != b.level_) return false;
    if (a.level_ == 0) return a.rat_ == b.rat_;
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
}

TowerElem TowerElem::inv() const {
    if (level_ == 0) {
        if (rat_ == 0) throw domain_error("division by zero in tower arithmetic");
        return TowerElem(Rat(1 / rat_));
    }
    // Extended Euclid against the level's minimal polynomial; coefficient
    // divisions recurse one level down.
    const EPoly& m = tower_->level(level_).minpoly;
    EPoly r0 = m, r1 = coeffs_;
    EPoly s0, s1 = {TowerElem(1)};
    while (!r1.empty()) {
        auto [q, r] = polyv::divmod(r0, r1);
        EPoly s2 = polyv::sub(s0, polyv::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (polyv::deg(r0) != 0)
        throw domain_error("tower inverse failed: level polynomial is not irreducible");
    EPoly u = polyv::mul_scalar(s0, r0[0].inv());
    return make(tower_, level_, reduce_mod(std::move(u), m));
}

TowerElem TowerElem::pow(unsigned long e) const {
    TowerElem acc(1), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// -------------------------------------------------------------------- Tower

long Tower::total_degree() const {
    long d = 1;
    for (const TowerLevel& lv : levels_) d *= static_cast<long>(lv.minpoly.size()) - 1;
    return d;
}

CInterval Tower::generator_box(int k, long bits) {
    TowerLevel& lv = levels_.at(k - 1);
    if (lv.source->precision_bits < bits) refine_roots(*lv.source, bits);
    return lv.source->box[lv.source_index];
}

int Tower::push_level(TowerLevel lv) {
    levels_.push_back(std::move(lv));
    if (total_degree() > 256) {
        levels_.pop_back();
        throw domain_error("field tower degree cap (256) exceeded");
    }
    return num_levels();
}

// ----------------------------------------------------------- free functions

CInterval eval_box(const TowerElem& e, long bits) {
    const mpfr_prec_t wp = static_cast<mpfr_prec_t>(bits + 32);
    if (e.level() == 0) return CInterval::from_rat(e.rat(), wp);
    CInterval th = e.tower()->generator_box(e.level(), bits);
    CInterval acc = eval_box(e.coeffs().back(), bits);
    for (std::size_t i = e.coeffs().size() - 1; i-- > 0;)
        acc = acc * th + eval_box(e.coeffs()[i], bits);
    return acc;
}

std::vector<std::pair<std::vector<TowerElem>, int>>
factor_over_tower(const std::shared_ptr<Tower>& T, const std::vector<TowerElem>& g, int level) {
    EPoly p = g;
    polyv::trim(p);
    if (polyv::deg(p) < 1) throw domain_error("tower factorization requires degree >= 1");
    p = polyv::make_monic(std::move(p));

    EPoly sf = epoly_divide_exact(p, polyv::gcd_monic(p, polyv::derivative(p)));
    std::vector<EPoly> irr = trager_squarefree(T, sf, level);

    std::vector<std::pair<EPoly, int>> out;
    EPoly rest = p;
    for (EPoly& f : irr) {
        int mult = 0;
        while (true) {
            auto [q, r] = polyv::divmod(rest, f);
            if (!r.empty()) break;
            rest = std::move(q);
            ++mult;
        }
        out.emplace_back(std::move(f), mult);
    }
    if (polyv::deg(rest) != 0)
        throw domain_error("internal: factor multiplicities did not exhaust the polynomial");
    return out;
}

TowerElem adjoin_root(const std::shared_ptr<Tower>& T,
                      const std::shared_ptr<IsolatedRoots>& source, int index,
                      const std::string& name_hint) {
    EPoly g(source->poly.c.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = TowerElem(Rat(source->poly.c[i]));
    auto factors = factor_over_tower(T, g, T->num_levels());

    // The chosen root is a root of exactly one factor; certify by exclusion.
    int chosen = -1;
    long bits = std::max<long>(source->precision_bits, 128);
    for (int attempt = 0; attempt < 24 && chosen < 0; ++attempt, bits *= 2) {
        refine_roots(*source, bits);
        const CInterval rb = source->box[index];
        int hit = -1, nhits = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (eval_epoly_box(factors[i].first, rb, bits).contains_zero()) {
                hit = static_cast<int>(i);
                ++nhits;
            }
        }
        if (nhits == 1) chosen = hit;
    }
    if (chosen < 0)
        throw precision_error("could not attribute the requested root to a unique factor");

    const EPoly& f = factors[chosen].first;
    if (polyv::deg(f) == 1) return -f[0]; // monic linear: root is -constant term

    TowerLevel lv;
    lv.name = name_hint.empty() ? "a" + std::to_string(T->num_levels() + 1) : name_hint;
    lv.minpoly = f;
    lv.source = source;
    lv.source_index = index;
    const int k = T->push_level(std::move(lv));
    return TowerElem::generator(T, k);
}

std::vector<TowerElem> all_roots(const std::shared_ptr<Tower>& T,
                                 const std::shared_ptr<IsolatedRoots>& source) {
    const IntPoly& f = source->poly;
    const int d = f.degree();
    std::vector<TowerElem> out(d);
    if (d < 1) throw domain_error("no roots to express for a constant polynomial");
    if (d == 1) {
        out[0] = TowerElem(Rat(-f.c[0]));
        return out;
    }
    if (auto k = is_cyclotomic(f)) {
        // Every root is a power of any single primitive k-th root of unity.
        const auto kk = static_cast<unsigned long>(*k);
        TowerElem z = adjoin_root(T, source, 0, "zeta" + std::to_string(kk));
        std::vector<bool> used(d, false);
        for (unsigned long e = 1; e < kk; ++e) {
            if (std::gcd(e, kk) != 1) continue;
            TowerElem p = z.pow(e);
            int idx = match_root_box(p, source);
            if (used[idx]) throw domain_error("internal: cyclotomic power matched twice");
            used[idx] = true;
            out[idx] = p;
        }
        return out;
    }
    if (d == 2) {
        // Trace gives the second root for free.
        out[0] = adjoin_root(T, source, 0);
        out[1] = TowerElem(Rat(-f.c[1])) - out[0];
        return out;
    }
    // Peel the roots off incrementally. Each pass factors one pending
    // cofactor over the tower as it stands, records the roots of linear
    // factors directly, and adjoins a root of at most one irreducible factor
    // before dividing it out. Working with shrinking cofactors keeps the
    // norms that the factorization pushes down to the rationals small; the
    // final root always falls out of a linear quotient for free.
    std::vector<bool> unmatched(d, true);
    EPoly full(f.c.size());
    for (std::size_t i = 0; i < full.size(); ++i) full[i] = TowerElem(Rat(f.c[i]));
    std::deque<EPoly> work;
    work.push_back(std::move(full));
    while (!work.empty()) {
        EPoly g = std::move(work.front());
        work.pop_front();
        if (polyv::deg(g) < 1) continue;
        if (polyv::deg(g) == 1) {
            TowerElem r = -g[0] / g[1];
            int idx = match_root_box(r, source);
            if (!unmatched[idx]) throw domain_error("internal: root matched twice");
            unmatched[idx] = false;
            out[idx] = r;
            continue;
        }
        auto fs = factor_over_tower(T, g, T->num_levels());
        if (fs.size() > 1 || fs[0].second > 1 ||
            polyv::deg(fs[0].first) < polyv::deg(g)) {
            for (auto& fm : fs) work.push_back(std::move(fm.first));
            continue;
        }
        // Irreducible over the current tower: adjoin its lowest-index root,
        // then queue the quotient so the remaining roots reuse the new level.
        EPoly g0 = std::move(fs[0].first);
        const std::vector<int> idxs = attribute_boxes(g0, source, unmatched);
        TowerLevel lv;
        lv.name = "a" + std::to_string(T->num_levels() + 1);
        lv.minpoly = g0;
        lv.source = source;
        lv.source_index = idxs.front();
        const int k = T->push_level(std::move(lv));
        TowerElem theta = TowerElem::generator(T, k);
        unmatched[idxs.front()] = false;
        out[idxs.front()] = theta;
        work.push_front(epoly_divide_exact(g0, EPoly{-theta, TowerElem(1)}));
    }
    return out;
}

TowerElem imaginary_unit(const std::shared_ptr<Tower>& T) {
    auto iso = std::make_shared<IsolatedRoots>(
        isolate_roots(IntPoly::from_int_list({1, 0, 1}), 192));
    return adjoin_root(T, iso, 1, "i"); // canonical order puts +i second
}

TowerElem TowerEmbedding::apply(const TowerElem& e) const {
    if (e.level() == 0) return TowerElem(e.rat());
    const TowerElem& gen = generator_image.at(e.level() - 1);
    TowerElem acc = apply(e.coeffs().back());
    for (std::size_t i = e.coeffs().size() - 1; i-- > 0;)
        acc = acc * gen + apply(e.coeffs()[i]);
    return acc;
}

TowerEmbedding embed_tower(const std::shared_ptr<Tower>& target,
                           const std::shared_ptr<Tower>& source) {
    TowerEmbedding em;
    em.target = target;
    for (int k = 1; k <= source->num_levels(); ++k) {
        const TowerLevel& lv = source->level(k);
        em.generator_image.push_back(adjoin_root(target, lv.source, lv.source_index, lv.name));
    }
    return em;
}

namespace {
void expand_coords(const TowerElem& e, const std::vector<long>& stride, long base,
                   std::vector<Rat>& out) {
    if (e.level() == 0) {
        out[base] += e.rat();
        return;
    }
    const long st = stride[e.level() - 1];
    for (std::size_t j = 0; j < e.coeffs().size(); ++j)
        expand_coords(e.coeffs()[j], stride, base + static_cast<long>(j) * st, out);
}
} // namespace

std::vector<Rat> q_coordinates(const TowerElem& e, const std::shared_ptr<Tower>& T) {
    if (e.level() > 0 && e.tower() != T)
        throw domain_error("element does not belong to the given tower");
    std::vector<long> stride(T->num_levels());
    long acc = 1;
    for (int k = 1; k <= T->num_levels(); ++k) {
        stride[k - 1] = acc;
        acc *= static_cast<long>(T->level(k).minpoly.size()) - 1;
    }
    std::vector<Rat> out(acc, Rat(0));
    expand_coords(e, stride, 0, out);
    return out;
}

ConjugationMap conjugation_map(const TowerElem& src, const TowerElem& dst) {
    if (src.level() == 0 || !(src == TowerElem::generator(src.tower(), src.level())))
        throw domain_error("conjugation source must be a tower generator");
    const TowerLevel& lv = src.tower()->level(src.level());
    std::vector<Rat> f;
    for (const TowerElem& c : lv.minpoly) {
        if (!c.is_rational())
            throw domain_error("conjugation source's minimal polynomial is not rational");
        f.push_back(c.rat());
    }
    TowerElem val;
    for (std::size_t i = f.size(); i-- > 0;) val = val * dst + TowerElem(f[i]);
    if (!val.is_zero())
        throw domain_error("conjugation destination is not a root of the same minimal polynomial");
    return ConjugationMap{std::move(f), src.level(), dst};
}

TowerElem ConjugationMap::apply(const TowerElem& e) const {
    if (e.level() == 0) return e;
    if (e.level() != src_level)
        throw domain_error("element lies outside the conjugated subfield");
    TowerElem acc;
    for (std::size_t i = e.coeffs().size(); i-- > 0;) {
        const TowerElem& c = e.coeffs()[i];
        if (!c.is_rational())
            throw domain_error("element lies outside the conjugated subfield");
        acc = acc * dst + c;
    }
    return acc;
}

std::string str(const TowerElem& e) {
    if (e.level() == 0) return to_string(e.rat());
    const std::string& nm = e.tower()->level(e.level()).name;
    std::string s;
    for (std::size_t i = e.coeffs().size(); i-- > 0;) {
        const TowerElem& c = e.coeffs()[i];
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += str(c);
            continue;
        }
        if (c == TowerElem(1))
            s += nm;
        else
            s += "(" + str(c) + ")*" + nm;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

} // namespace cps
