#include "cps/scheme.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cps/errors.hpp"
#include "cps/factor.hpp"

namespace cps {

namespace {

// Deterministic rational substitution values for formal symbols: exact
// decimal surrogates pi * phi^idx. Any values work for point generation;
// certificates never consult them.
Rat surrogate_value(int idx) {
    static const Rat pi_s =
        Rat(Int("314159265358979323846")) / Rat(Int("100000000000000000000"));
    static const Rat phi_s =
        Rat(Int("161803398874989484820")) / Rat(Int("100000000000000000000"));
    Rat v = pi_s;
    for (int i = 0; i < idx; ++i) v *= phi_s;
    v.canonicalize();
    return v;
}

std::vector<TPoly> conv(const std::vector<TPoly>& a, const std::vector<TPoly>& b) {
    std::vector<TPoly> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

ExactMatrix submatrix(const ExactMatrix& m, int r0, int c0, int h, int w) {
    ExactMatrix out(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
    out.den = m.den;
    return out;
}

ExactMatrix fold_blockdiag(const std::vector<ExactMatrix>& blocks) {
    if (blocks.empty()) throw domain_error("empty block list");
    ExactMatrix acc = blocks[0];
    for (std::size_t i = 1; i < blocks.size(); ++i) acc = blockdiag(acc, blocks[i]);
    return acc;
}

// Conjugate classes in canonical block order (ascending first member),
// mirroring the column layout of real_basis_from_roots: each class occupies
// `width` adjacent columns starting at `offset`.
struct RootClass {
    int first;
    int partner;  // == first for a real root
    int offset;
    int width;
};

std::vector<RootClass> root_classes(const IsolatedRoots& iso) {
    std::vector<RootClass> out;
    int col = 0;
    for (int j = 0; j < iso.count(); ++j) {
        if (iso.is_real[j]) {
            out.push_back({j, j, col, 1});
            ++col;
            continue;
        }
        const int jb = iso.conj_index[j];
        if (jb < j) continue;
        out.push_back({j, jb, col, 2});
        col += 2;
    }
    return out;
}

std::vector<SpectrumEntry> entries_of(const SpectrumSpec& sp) {
    std::vector<SpectrumEntry> es;
    for (const auto& g : sp.groups())
        for (int r = 0; r < g.iso->count(); ++r)
            if (g.mult[r] > 0) es.push_back({g.f, r, g.mult[r]});
    return es;
}

// Union of two spectra: multiplicities of identical eigenvalues add up.
SpectrumSpec merge_specs(const SpectrumSpec& x, const SpectrumSpec& y, long bits) {
    std::map<std::pair<std::vector<Int>, int>, SpectrumEntry> acc;
    auto add = [&acc](const std::vector<SpectrumEntry>& es) {
        for (const auto& e : es) {
            auto key = std::make_pair(e.min_poly.c, e.root_index);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, e);
            else
                it->second.multiplicity += e.multiplicity;
        }
    };
    add(entries_of(x));
    add(entries_of(y));
    std::vector<SpectrumEntry> es;
    for (auto& [k, e] : acc) es.push_back(e);
    return SpectrumSpec::from_entries(es, bits);
}

Monomial rename_monomial(const Monomial& m, const std::map<std::string, std::string>& ren) {
    Monomial out = m;
    bool changed = false;
    for (auto& [name, exp] : out.v) {
        auto it = ren.find(name);
        if (it != ren.end()) {
            name = it->second;
            changed = true;
        }
    }
    if (changed) std::sort(out.v.begin(), out.v.end());
    return out;
}

TPoly rename_vars(const TPoly& p, const std::map<std::string, std::string>& ren) {
    if (ren.empty()) return p;
    TPoly out;
    for (const auto& [m, c] : p.terms()) out = out + TPoly::term(c, rename_monomial(m, ren));
    return out;
}

ExactMatrix rename_vars(const ExactMatrix& m, const std::map<std::string, std::string>& ren) {
    if (ren.empty()) return m;
    ExactMatrix out = m;
    for (auto& p : out.e) p = rename_vars(p, ren);
    out.den = rename_vars(out.den, ren);
    return out;
}

TPoly map_coeffs(const TPoly& p, const TowerEmbedding& emb) {
    TPoly out;
    for (const auto& [m, c] : p.terms()) out = out + TPoly::term(emb.apply(c), m);
    return out;
}

ExactMatrix map_coeffs(const ExactMatrix& m, const TowerEmbedding& emb) {
    ExactMatrix out = m;
    for (auto& p : out.e) p = map_coeffs(p, emb);
    out.den = map_coeffs(out.den, emb);
    return out;
}

// Monic polynomial with integer coefficients applied to a matrix (den 1).
ExactMatrix eval_at(const IntPoly& f, const ExactMatrix& m) {
    ExactMatrix acc(m.rows, m.cols);
    for (int k = f.degree(); k >= 0; --k) {
        acc = acc * m;
        for (int i = 0; i < m.rows; ++i) acc.at(i, i) = acc.at(i, i) + TPoly(Rat(f.c[k]));
    }
    return acc;
}

TPoly power_term(const std::string& var, int exp) {
    if (exp == 0) return TPoly(1);
    return TPoly::term(TowerElem(1), Monomial{{{var, exp}}});
}

// The bidiagonal coupling H (ones on the diagonal, -t_i above it) and its
// explicit inverse (consecutive products of the t_i in the upper triangle).
void bidiagonal_coupling(int K, const std::string& prefix, ExactMatrix& H, ExactMatrix& Hinv,
                         std::map<std::string, Rat>& vals) {
    H = ExactMatrix::identity(K);
    Hinv = ExactMatrix::identity(K);
    for (int i = 0; i + 1 < K; ++i)
        H.at(i, i + 1) = -TPoly::var(prefix + "t" + std::to_string(i + 1));
    for (int i = 0; i < K; ++i) {
        Monomial m = Monomial::one();
        for (int j = i + 1; j < K; ++j) {
            m = m * Monomial::var(prefix + "t" + std::to_string(j));
            Hinv.at(i, j) = TPoly::term(TowerElem(1), m);
        }
    }
    for (int v = 1; v < K; ++v)
        vals[prefix + "t" + std::to_string(v)] = surrogate_value(v - 1);
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

void require_generic(Scheme& sch) {
    sch.certificate = certify_generic(sch.Y, sch.n, sch.tower);
    if (!sch.certificate.all()) {
        std::ostringstream os;
        os << "constructed basis failed its genericity certificate (" << sch.provenance << "):";
        if (!sch.certificate.nondegenerate) os << " rational vector in the internal span;";
        if (!sch.certificate.aperiodic) os << " rational vector in the physical span;";
        if (!sch.certificate.irreducible) os << " rational annihilator of the physical span;";
        throw certificate_error(os.str());
    }
}

// Shared core of the elementary constructions: split the real root basis of
// one companion block into physical and internal class columns.
Scheme vandermonde_core(const std::shared_ptr<Tower>& T, const RealBasis& rb,
                        const std::shared_ptr<IsolatedRoots>& iso, const IntPoly& f,
                        const std::vector<int>& phys_classes, long bits) {
    const auto classes = root_classes(*iso);
    const int d = f.degree();
    const std::set<int> pc(phys_classes.begin(), phys_classes.end());
    if (pc.empty() || pc.size() >= classes.size())
        throw domain_error("physical classes must form a nonempty proper subset of the conjugate classes");

    Scheme sch;
    std::vector<int> cols;
    std::vector<ExactMatrix> ablocks, bblocks;
    std::vector<SpectrumEntry> aents, bents;
    int n = 0;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            const bool phys = pc.count(static_cast<int>(ci)) > 0;
            if (phys != (pass == 0)) continue;
            const auto& cl = classes[ci];
            for (int c = 0; c < cl.width; ++c) cols.push_back(cl.offset + c);
            (phys ? ablocks : bblocks)
                .push_back(submatrix(rb.D, cl.offset, cl.offset, cl.width, cl.width));
            auto& ents = phys ? aents : bents;
            ents.push_back({f, cl.first, 1});
            if (cl.width == 2) ents.push_back({f, cl.partner, 1});
            if (phys) n += cl.width;
        }
    }
    sch.n = n;
    sch.s = d;
    sch.tower = T;
    sch.Y = rb.Y * permutation_matrix(cols);
    sch.L = transpose(permutation_matrix(cols)) * invert(rb.Y);
    sch.C = companion(f);
    sch.A = fold_blockdiag(ablocks);
    sch.B = fold_blockdiag(bblocks);
    sch.a_spec = SpectrumSpec::from_entries(aents, bits);
    sch.b_spec = SpectrumSpec::from_entries(bents, bits);
    sch.perm = cols;
    sch.provenance = "elementary[" + f.str() + "; physical classes " + join_ints(phys_classes) + "]";
    require_generic(sch);
    return sch;
}

} // namespace

int well_distributing_lower_bound(const std::vector<int>& l) {
    const int u = static_cast<int>(l.size());
    if (u < 2) throw domain_error("need at least two conjugate classes to distribute");
    int M = 0;
    long total = 0;
    for (int v : l) {
        if (v < 0) throw domain_error("negative multiplicity");
        M = std::max(M, v);
        total += v;
    }
    const long ceil_share = (total + u - 2) / (u - 1);
    return static_cast<int>(std::max<long>(M, ceil_share));
}

bool is_well_distributing(const WellDistributingMatrix& w, const std::vector<int>& l, int K) {
    const int u = static_cast<int>(l.size());
    if (w.rows() != u || w.cols() != K) return false;
    for (int i = 0; i < u; ++i) {
        int sum = 0;
        for (int c = 0; c < K; ++c) {
            if (w.m[i][c] != 0 && w.m[i][c] != 1) return false;
            sum += w.m[i][c];
        }
        if (sum != l[i]) return false;
    }
    for (int c = 0; c < K; ++c) {
        int sum = 0;
        for (int i = 0; i < u; ++i) sum += w.m[i][c];
        if (sum < 1 || sum > u - 1) return false;
    }
    return true;
}

WellDistributingMatrix well_distributing(const std::vector<int>& l, int K) {
    const int lb = well_distributing_lower_bound(l);
    const int u = static_cast<int>(l.size());
    long total = 0;
    for (int v : l) total += v;
    if (K < lb) {
        std::ostringstream os;
        os << "no well-distributing matrix with " << K << " columns: the row sums force at least "
           << lb << " (max multiplicity " << *std::max_element(l.begin(), l.end())
           << ", ceil(" << total << "/" << (u - 1) << ") = " << (total + u - 2) / (u - 1) << ")";
        throw domain_error(os.str());
    }
    if (total < K) {
        std::ostringstream os;
        os << "no well-distributing matrix with " << K << " columns: only " << total
           << " ones available, so some column would stay empty";
        throw domain_error(os.str());
    }
    WellDistributingMatrix w;
    w.m.assign(u, std::vector<int>(K, 0));
    // Ones are placed consecutively, each row continuing cyclically where the
    // previous one ended; every column then holds floor or ceil of total/K
    // ones, which lies in [1, u-1] by the two feasibility bounds.
    int pos = 0;
    for (int i = 0; i < u; ++i) {
        for (int c = 0; c < l[i]; ++c) w.m[i][(pos + c) % K] = 1;
        pos = (pos + l[i]) % K;
    }
    if (!is_well_distributing(w, l, K))
        throw certificate_error("internal: cyclic filling produced an invalid distribution");
    return w;
}

GenericityCertificate certify_generic(const ExactMatrix& Y, int n,
                                      const std::shared_ptr<Tower>& T) {
    if (Y.rows != Y.cols) throw domain_error("genericity check needs a square basis matrix");
    const int s = Y.rows;
    if (n < 1 || n >= s)
        throw domain_error("physical dimension must lie strictly between 0 and the lattice dimension");
    std::vector<int> phys, internal;
    for (int j = 0; j < n; ++j) phys.push_back(j);
    for (int j = n; j < s; ++j) internal.push_back(j);
    const ExactMatrix Y1 = take_columns(Y, phys);
    const ExactMatrix Y2 = take_columns(Y, internal);

    GenericityCertificate c;
    c.internal_rationals = rational_vectors_in_span(Y2, T);
    c.nondegenerate = c.internal_rationals.empty();
    c.physical_rationals = rational_vectors_in_span(Y1, T);
    c.aperiodic = c.physical_rationals.empty();
    c.annihilators = rational_left_annihilators(Y1, T);
    c.irreducible = c.annihilators.empty();
    c.witness.resize(s);
    for (int i = 0; i < s; ++i) {
        TPoly y;
        for (int j = 0; j < n; ++j)
            y = y + Y.at(i, j) * TPoly::var("w" + std::to_string(j + 1));
        c.witness[i] = y;
    }
    return c;
}

Scheme build_vandermonde_scheme(const IntPoly& f, const std::vector<int>& physical_roots,
                                long precision_bits) {
    if (!f.is_monic() || f.degree() < 2)
        throw domain_error("elementary scheme needs a monic polynomial of degree >= 2");
    if (f.c[0] == 0) throw domain_error("zero eigenvalue: the polynomial is divisible by x");
    if (!is_irreducible(f, precision_bits))
        throw domain_error("elementary scheme needs an irreducible polynomial: " + f.str());
    auto iso = std::make_shared<IsolatedRoots>(isolate_roots(f, precision_bits));
    const int d = f.degree();
    std::set<int> rs;
    for (int r : physical_roots) {
        if (r < 0 || r >= d) throw domain_error("root index out of range");
        rs.insert(r);
    }
    for (int r : rs)
        if (!rs.count(iso->conj_index[r]))
            throw domain_error("physical roots must be closed under conjugation (missing partner of index " +
                               std::to_string(r) + ")");
    const auto classes = root_classes(*iso);
    std::vector<int> phys_classes;
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
        if (rs.count(classes[ci].first)) phys_classes.push_back(static_cast<int>(ci));

    auto T = Tower::make();
    const auto roots = all_roots(T, iso);
    const RealBasis rb = real_basis_from_roots(T, roots, *iso);
    return vandermonde_core(T, rb, iso, f, phys_classes, precision_bits);
}

Scheme build_trivial_integer(const Int& k, int n, const std::string& var_prefix) {
    if (k == 0) throw domain_error("zero is not an invertible self-similarity");
    if (n < 1) throw domain_error("physical dimension must be positive");
    const int s = n + 1;
    const std::string gv = var_prefix + "g";

    // Identity on top; the last two rows hold distinct powers of one formal
    // symbol, so each has entries linearly independent over the rationals.
    ExactMatrix L(s, s);
    for (int i = 0; i + 2 < s; ++i) L.at(i, i) = TPoly(1);
    for (int j = 0; j < s; ++j) {
        L.at(s - 2, j) = power_term(gv, j + 1);
        L.at(s - 1, j) = power_term(gv, s + 1 + 2 * j);
    }

    Scheme sch;
    sch.n = n;
    sch.s = s;
    sch.tower = Tower::make();
    sch.L = L;
    sch.Y = invert(L);
    sch.C = ExactMatrix(s, s);
    for (int i = 0; i < s; ++i) sch.C.at(i, i) = TPoly(Rat(k));
    sch.A = ExactMatrix(n, n);
    for (int i = 0; i < n; ++i) sch.A.at(i, i) = TPoly(Rat(k));
    sch.B = ExactMatrix(1, 1);
    sch.B.at(0, 0) = TPoly(Rat(k));
    IntPoly lin;
    lin.c = {-k, Int(1)};
    sch.a_spec = SpectrumSpec::from_entries({{lin, 0, n}});
    sch.b_spec = SpectrumSpec::from_entries({{lin, 0, 1}});
    for (int j = 0; j < s; ++j) sch.perm.push_back(j);
    sch.var_values[gv] = surrogate_value(0);
    {
        std::ostringstream os;
        os << "integer-multiple[k=" << k << ", n=" << n << "]";
        sch.provenance = os.str();
    }
    require_generic(sch);
    return sch;
}

Scheme build_trivial_quadratic(const IntPoly& f, int n, const std::string& var_prefix,
                               long precision_bits) {
    if (!f.is_monic() || f.degree() != 2)
        throw domain_error("rotation-scaling scheme needs a monic quadratic");
    const Int disc = f.c[1] * f.c[1] - 4 * f.c[0];
    if (disc >= 0)
        throw domain_error("rotation-scaling scheme needs a non-real eigenvalue "
                           "(negative discriminant); got " + f.str());
    if (n < 2 || n % 2 != 0)
        throw domain_error("physical dimension must be a positive even number "
                           "(rotation-scaling blocks act on coordinate pairs)");
    const int mh = n / 2;
    const int s = n + 2;
    auto iso = std::make_shared<IsolatedRoots>(isolate_roots(f, precision_bits));
    auto T = Tower::make();
    const auto roots = all_roots(T, iso);
    const RealBasis rb = real_basis_from_roots(T, roots, *iso);
    const ExactMatrix Db = submatrix(rb.D, 0, 0, 2, 2);

    // Coupling with two rows of independent powers of one formal symbol.
    const std::string gv = var_prefix + "g";
    ExactMatrix H(mh + 1, mh + 1);
    for (int i = 0; i + 2 < mh + 1; ++i) H.at(i, i) = TPoly(1);
    for (int j = 0; j < mh + 1; ++j) {
        H.at(mh - 1, j) = power_term(gv, j + 1);
        H.at(mh, j) = power_term(gv, mh + 2 + 2 * j);
    }
    Scheme sch;
    sch.n = n;
    sch.s = s;
    sch.tower = T;
    sch.L = kron(H, invert(rb.Y));
    sch.Y = kron(invert(H), rb.Y);
    sch.C = kron(ExactMatrix::identity(mh + 1), companion(f));
    sch.A = kron(ExactMatrix::identity(mh), Db);
    sch.B = Db;
    sch.a_spec = SpectrumSpec::from_entries({{f, 0, mh}, {f, 1, mh}}, precision_bits);
    sch.b_spec = SpectrumSpec::from_entries({{f, 0, 1}, {f, 1, 1}}, precision_bits);
    for (int j = 0; j < s; ++j) sch.perm.push_back(j);
    sch.var_values[gv] = surrogate_value(0);
    sch.provenance = "quadratic-rotation[" + f.str() + ", n=" + std::to_string(n) + "]";
    require_generic(sch);
    return sch;
}

Scheme direct_sum(const Scheme& a, const Scheme& b) {
    Scheme out;
    out.n = a.n + b.n;
    out.s = a.s + b.s;

    // Formal symbols of the two sides must stay algebraically independent:
    // rename the right side's symbols where they collide.
    auto vars_of = [](const Scheme& sc) {
        std::set<std::string> vs;
        auto scan = [&vs](const ExactMatrix& m) {
            for (const TPoly& p : m.e)
                for (const auto& v : p.vars()) vs.insert(v);
            for (const auto& v : m.den.vars()) vs.insert(v);
        };
        scan(sc.Y);
        scan(sc.L);
        for (const auto& [k, v] : sc.var_values) vs.insert(k);
        return vs;
    };
    const auto va = vars_of(a);
    const auto vb = vars_of(b);
    std::map<std::string, std::string> ren;
    std::set<std::string> used = va;
    used.insert(vb.begin(), vb.end());
    for (const auto& v : vb) {
        if (!va.count(v)) continue;
        std::string nv = v + "r";
        while (used.count(nv)) nv += "r";
        ren[v] = nv;
        used.insert(nv);
    }
    ExactMatrix aY = a.Y, aL = a.L, aA = a.A, aB = a.B;
    ExactMatrix bY = rename_vars(b.Y, ren), bL = rename_vars(b.L, ren), bA = b.A, bB = b.B;

    // Merge the number-field towers.
    std::shared_ptr<Tower> T;
    if (a.tower == b.tower || b.tower->num_levels() == 0) {
        T = a.tower;
    } else if (a.tower->num_levels() == 0) {
        T = b.tower;
    } else {
        T = Tower::make();
        const TowerEmbedding ea = embed_tower(T, a.tower);
        const TowerEmbedding eb = embed_tower(T, b.tower);
        aY = map_coeffs(aY, ea);
        aL = map_coeffs(aL, ea);
        aA = map_coeffs(aA, ea);
        aB = map_coeffs(aB, ea);
        bY = map_coeffs(bY, eb);
        bL = map_coeffs(bL, eb);
        bA = map_coeffs(bA, eb);
        bB = map_coeffs(bB, eb);
    }

    // Interleave: physical directions of both parts first, then internal.
    std::vector<int> p;
    for (int j = 0; j < a.n; ++j) p.push_back(j);
    for (int j = 0; j < b.n; ++j) p.push_back(a.s + j);
    for (int j = a.n; j < a.s; ++j) p.push_back(j);
    for (int j = b.n; j < b.s; ++j) p.push_back(a.s + j);
    const ExactMatrix P = permutation_matrix(p);

    out.tower = T;
    out.Y = blockdiag(aY, bY) * P;
    out.L = transpose(P) * blockdiag(aL, bL);
    out.C = blockdiag(a.C, b.C);
    out.A = blockdiag(aA, bA);
    out.B = blockdiag(aB, bB);
    out.a_spec = merge_specs(a.a_spec, b.a_spec, 256);
    out.b_spec = merge_specs(a.b_spec, b.b_spec, 256);
    out.perm = p;
    out.var_values = a.var_values;
    for (const auto& [k, v] : b.var_values) {
        auto it = ren.find(k);
        out.var_values[it == ren.end() ? k : it->second] = v;
    }
    out.provenance = "direct-sum(" + a.provenance + " ; " + b.provenance + ")";
    require_generic(out);
    return out;
}

Scheme build_minimal_scheme(const SpectrumGroup& g, const std::string& var_prefix,
                            long precision_bits) {
    const IntPoly& f = g.f;
    const int d = f.degree();
    const auto classes = root_classes(*g.iso);
    const int u = static_cast<int>(classes.size());
    if (d == 1)
        throw domain_error("rational eigenvalue: use the integer-multiple construction");
    if (d == 2 && u == 1)
        throw domain_error("non-real quadratic eigenvalue: use the rotation-scaling construction");
    const int M = g.max_mult();
    const int m = g.min_mult();
    if (M < 1) throw domain_error("empty spectrum group");
    const int K = (m < M) ? M : M + 1;

    std::vector<int> l(u);
    for (int ci = 0; ci < u; ++ci) l[ci] = g.mult[classes[ci].first];

    // Assignment of class copies to the physical part: every copy feeds the
    // physical block, copy 1 also feeds the internal block.
    std::vector<std::vector<int>> N(u, std::vector<int>(K, 0));
    if (m < M) {
        int first_small = -1;
        for (int ci = 0; ci < u; ++ci)
            if (l[ci] < K) {
                first_small = ci;
                break;
            }
        for (int ci = 0; ci < u; ++ci) {
            if (l[ci] == K)
                std::fill(N[ci].begin(), N[ci].end(), 1);
            else if (ci == first_small)
                for (int c = 1; c <= l[ci]; ++c) N[ci][c] = 1;
            else
                for (int c = 0; c < l[ci]; ++c) N[ci][c] = 1;
        }
    } else {
        for (int ci = 0; ci < u; ++ci) {
            std::fill(N[ci].begin(), N[ci].end(), 1);
            N[ci][ci % K] = 0;
        }
    }
    for (int k = 0; k < K; ++k) {
        int ones = 0;
        for (int ci = 0; ci < u; ++ci) ones += N[ci][k];
        if (ones == 0 || (k == 0 && ones == u))
            throw certificate_error("internal: copy assignment misses a physical or internal block");
    }

    auto T = Tower::make();
    const auto roots = all_roots(T, g.iso);
    const RealBasis rb = real_basis_from_roots(T, roots, *g.iso);

    ExactMatrix H, Hinv;
    std::map<std::string, Rat> vals;
    bidiagonal_coupling(K, var_prefix, H, Hinv, vals);

    Scheme sch;
    std::vector<int> cols;
    std::vector<ExactMatrix> ablocks, bblocks;
    std::vector<SpectrumEntry> aents, bents;
    int n = 0;
    for (int pass = 0; pass < 2; ++pass) {
        for (int ci = 0; ci < u; ++ci) {
            const auto& cl = classes[ci];
            int copies = 0;
            for (int k = 0; k < K; ++k) {
                const bool phys = N[ci][k] == 1;
                if (phys != (pass == 0)) continue;
                ++copies;
                for (int c = 0; c < cl.width; ++c) cols.push_back(k * d + cl.offset + c);
                (phys ? ablocks : bblocks)
                    .push_back(submatrix(rb.D, cl.offset, cl.offset, cl.width, cl.width));
                if (phys) n += cl.width;
            }
            if (copies > 0) {
                auto& ents = pass == 0 ? aents : bents;
                ents.push_back({f, cl.first, copies});
                if (cl.width == 2) ents.push_back({f, cl.partner, copies});
            }
        }
    }
    sch.n = n;
    sch.s = K * d;
    sch.tower = T;
    sch.Y = kron(H, rb.Y) * permutation_matrix(cols);
    sch.L = transpose(permutation_matrix(cols)) * kron(Hinv, invert(rb.Y));
    sch.C = kron(ExactMatrix::identity(K), companion(f));
    sch.A = fold_blockdiag(ablocks);
    sch.B = fold_blockdiag(bblocks);
    sch.a_spec = SpectrumSpec::from_entries(aents, precision_bits);
    sch.b_spec = SpectrumSpec::from_entries(bents, precision_bits);
    sch.perm = cols;
    sch.var_values = vals;
    sch.provenance = "minimal[" + f.str() + "; copies=" + std::to_string(K) + "]";
    require_generic(sch);
    return sch;
}

Scheme build_naive_scheme(const SpectrumGroup& g, long precision_bits) {
    const IntPoly& f = g.f;
    const auto classes = root_classes(*g.iso);
    const int u = static_cast<int>(classes.size());
    if (u < 2)
        throw domain_error("elementary-sum route needs at least two conjugate classes; "
                           "use the dedicated small constructions");
    if (g.max_mult() < 1) throw domain_error("empty spectrum group");

    // Row order: real classes first (canonical order), then conjugate pairs.
    std::vector<int> order;
    for (int pass = 0; pass < 2; ++pass)
        for (int ci = 0; ci < u; ++ci)
            if ((classes[ci].width == 1) == (pass == 0)) order.push_back(ci);
    std::vector<int> l(u);
    for (int i = 0; i < u; ++i) l[i] = g.mult[classes[order[i]].first];

    const int K = well_distributing_lower_bound(l);
    const WellDistributingMatrix W = well_distributing(l, K);

    auto T = Tower::make();
    const auto roots = all_roots(T, g.iso);
    const RealBasis rb = real_basis_from_roots(T, roots, *g.iso);

    std::vector<Scheme> parts;
    for (int k = 0; k < K; ++k) {
        std::vector<int> phys;
        for (int i = 0; i < u; ++i)
            if (W.m[i][k]) phys.push_back(order[i]);
        std::sort(phys.begin(), phys.end());
        parts.push_back(vandermonde_core(T, rb, g.iso, f, phys, precision_bits));
    }
    Scheme total = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) total = direct_sum(total, parts[i]);
    total.provenance =
        "elementary-sum[" + f.str() + "; parts=" + std::to_string(K) + "]";
    return total;
}

BuildResult build_scheme_for(const SpectrumSpec& spec, Route route, long precision_bits) {
    if (spec.groups().empty()) throw domain_error("empty spectrum");
    BuildResult res;
    res.verdict = check_properties_P(spec);
    if (!res.verdict.satisfied)
        res.warnings.push_back(
            "spectral self-similarity conditions fail; the scheme below exists, but no "
            "cut-and-project set is invariant under it:\n" + describe(res.verdict));

    std::vector<Scheme> parts;
    int pidx = 1;
    for (const auto& g : spec.groups()) {
        const std::string prefix = "p" + std::to_string(pidx++) + "_";
        const int d = g.degree();
        if (d == 1) {
            parts.push_back(build_trivial_integer(-g.f.c[0], g.dimension_share(), prefix));
        } else if (d == 2 && !g.iso->is_real[0]) {
            parts.push_back(build_trivial_quadratic(g.f, g.dimension_share(), prefix, precision_bits));
        } else if (route == Route::naive) {
            parts.push_back(build_naive_scheme(g, precision_bits));
        } else {
            parts.push_back(build_minimal_scheme(g, prefix, precision_bits));
        }
    }
    Scheme total = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) total = direct_sum(total, parts[i]);

    // Deterministic global substitution values, one per symbol.
    int vi = 0;
    for (auto& [name, value] : total.var_values) value = surrogate_value(vi++);
    res.scheme = std::move(total);
    return res;
}

VerifyReport verify_scheme(const Scheme& sch) {
    VerifyReport r;
    std::ostringstream detail;
    if (sch.A.rows != sch.n || sch.B.rows != sch.s - sch.n || sch.Y.rows != sch.s ||
        sch.C.rows != sch.s)
        throw domain_error("scheme dimensions are inconsistent");

    const ExactMatrix AB = blockdiag(sch.A, sch.B);
    const ExactMatrix lhs = sch.Y * AB;
    const ExactMatrix rhs = sch.C * sch.Y;
    for (int i = 0; i < sch.s; ++i)
        for (int j = 0; j < sch.s; ++j) {
            const TPoly resid = lhs.at(i, j) * rhs.den - rhs.at(i, j) * lhs.den;
            if (!resid.is_zero()) r.residual.push_back({i, j});
        }
    r.intertwining = r.residual.empty();
    if (!r.intertwining)
        detail << "nonzero intertwining residual at " << r.residual.size()
               << " entries, first at (" << r.residual[0].first << ","
               << r.residual[0].second << "); ";

    r.c_integer = sch.C.den == TPoly(1);
    for (const TPoly& p : sch.C.e) {
        if (p.is_zero()) continue;
        if (!p.is_constant() || !p.constant().is_rational() ||
            p.constant().rat().get_den() != 1) {
            r.c_integer = false;
            break;
        }
    }
    if (!r.c_integer) detail << "C is not an integer matrix; ";

    const bool dens_ok =
        sch.A.den == TPoly(1) && sch.B.den == TPoly(1) && sch.C.den == TPoly(1);
    if (!dens_ok) {
        detail << "quasidiagonal blocks carry nonunit denominators, characteristic "
                  "checks skipped; ";
    } else {
        const auto chiA = faddeev_leverrier(sch.A).charpoly;
        const auto chiB = faddeev_leverrier(sch.B).charpoly;
        const auto chiC = faddeev_leverrier(sch.C).charpoly;
        const auto prod = conv(chiA, chiB);
        r.char_product = prod.size() == chiC.size();
        if (r.char_product)
            for (std::size_t k = 0; k < prod.size(); ++k)
                if (prod[k] != chiC[k]) {
                    r.char_product = false;
                    break;
                }
        if (!r.char_product)
            detail << "characteristic polynomial of C differs from the product over A and B; ";

        if (r.c_integer) {
            QPoly qc(chiC.size());
            bool rational = true;
            for (std::size_t k = 0; k < chiC.size(); ++k) {
                if (!chiC[k].is_zero() &&
                    !(chiC[k].is_constant() && chiC[k].constant().is_rational())) {
                    rational = false;
                    break;
                }
                qc[k] = chiC[k].is_zero() ? Rat(0) : chiC[k].constant().rat();
            }
            if (rational) {
                const IntPoly F = from_q_integral(qc);
                const FactorList fl = factor_over_q(F);
                std::vector<ExactMatrix> fA, fB, fC;
                for (const auto& [fac, mult] : fl.factors) {
                    fA.push_back(eval_at(fac, sch.A));
                    fB.push_back(eval_at(fac, sch.B));
                    fC.push_back(eval_at(fac, sch.C));
                }
                auto radical_annihilates = [](const std::vector<ExactMatrix>& ms, int dim) {
                    ExactMatrix acc = ExactMatrix::identity(dim);
                    for (const auto& m : ms) acc = acc * m;
                    return is_zero(acc);
                };
                r.minpoly_match = radical_annihilates(fA, sch.n) &&
                                  radical_annihilates(fB, sch.s - sch.n) &&
                                  radical_annihilates(fC, sch.s);
                if (!r.minpoly_match)
                    detail << "squarefree part of charpoly(C) fails to annihilate A, B or C; ";
                // Every irreducible factor must contribute eigenvalues to
                // both A and B, otherwise their rational minimal polynomials
                // differ from C's.
                for (std::size_t i = 0; i < fl.factors.size() && r.minpoly_match; ++i) {
                    auto partial_nonzero = [&](const std::vector<ExactMatrix>& ms, int dim) {
                        ExactMatrix acc = ExactMatrix::identity(dim);
                        for (std::size_t j = 0; j < ms.size(); ++j)
                            if (j != i) acc = acc * ms[j];
                        return !is_zero(acc);
                    };
                    if (!partial_nonzero(fA, sch.n) || !partial_nonzero(fB, sch.s - sch.n)) {
                        r.minpoly_match = false;
                        detail << "factor " << fl.factors[i].first.str()
                               << " is missing from the spectrum of A or B; ";
                    }
                }
            }
        }
    }
    r.detail = detail.str();
    return r;
}

} // namespace cps
