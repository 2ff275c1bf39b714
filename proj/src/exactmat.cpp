#include "cps/exactmat.hpp"

#include <algorithm>
#include <map>

#include "cps/errors.hpp"

namespace cps {

namespace {

void check_same_shape(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw domain_error("matrix shape mismatch");
}

void check_square_plain(const ExactMatrix& m) {
    if (m.rows != m.cols) throw domain_error("matrix is not square");
    if (!(m.den == TPoly(1)))
        throw domain_error("operation requires a denominator-free matrix");
}

TPoly bareiss_div(const TPoly& num, const TPoly& d) {
    auto q = divide_exact(num, d);
    if (!q) throw domain_error("internal: fraction-free elimination division not exact");
    return *q;
}

} // namespace

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = TPoly(1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<TPoly>>& rows) {
    ExactMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols) throw domain_error("ragged matrix rows");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

ExactMatrix ExactMatrix::from_rational_rows(const std::vector<std::vector<Rat>>& rows) {
    std::vector<std::vector<TPoly>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const Rat& v : rows[i]) out[i].push_back(TPoly(v));
    return from_rows(out);
}

ExactMatrix ExactMatrix::from_int_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<TPoly>> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (long v : rows[i]) out[i].push_back(TPoly(Rat(v)));
    return from_rows(out);
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_shape(a, b);
    ExactMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = a.e[i] * b.den + b.e[i] * a.den;
    m.den = a.den * b.den;
    return m;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_shape(a, b);
    ExactMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = a.e[i] * b.den - b.e[i] * a.den;
    m.den = a.den * b.den;
    return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols != b.rows) throw domain_error("matrix product shape mismatch");
    ExactMatrix m(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const TPoly& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j) {
                if (b.at(k, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) + aik * b.at(k, j);
            }
        }
    m.den = a.den * b.den;
    return m;
}

ExactMatrix operator*(const TPoly& s, const ExactMatrix& m) {
    ExactMatrix out = m;
    for (auto& v : out.e) v = s * v;
    return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] * b.den != b.e[i] * a.den) return false;
    return true;
}

ExactMatrix transpose(const ExactMatrix& m) {
    ExactMatrix t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    t.den = m.den;
    return t;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int p = 0; p < b.rows; ++p)
                for (int q = 0; q < b.cols; ++q)
                    m.at(i * b.rows + p, j * b.cols + q) = a.at(i, j) * b.at(p, q);
        }
    m.den = a.den * b.den;
    return m;
}

ExactMatrix blockdiag(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix m(a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j) * b.den;
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j) * a.den;
    m.den = a.den * b.den;
    return m;
}

ExactMatrix permutation_matrix(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    ExactMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        if (p[j] < 0 || p[j] >= n || seen[p[j]]) throw domain_error("not a permutation");
        seen[p[j]] = true;
        m.at(p[j], j) = TPoly(1);
    }
    return m;
}

ExactMatrix take_columns(const ExactMatrix& m, const std::vector<int>& idx) {
    ExactMatrix out(m.rows, static_cast<int>(idx.size()));
    for (int j = 0; j < out.cols; ++j) {
        if (idx[j] < 0 || idx[j] >= m.cols) throw domain_error("column index out of range");
        for (int i = 0; i < m.rows; ++i) out.at(i, j) = m.at(i, idx[j]);
    }
    out.den = m.den;
    return out;
}

bool is_zero(const ExactMatrix& m) {
    for (const auto& v : m.e)
        if (!v.is_zero()) return false;
    return true;
}

CharData faddeev_leverrier(const ExactMatrix& a) {
    check_square_plain(a);
    const int n = a.rows;
    CharData out;
    out.charpoly.assign(n + 1, TPoly());
    out.charpoly[n] = TPoly(1);
    if (n == 0) {
        out.det = TPoly(1);
        return out;
    }
    ExactMatrix m = ExactMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        if (k == n) out.adjugate = (n % 2 == 1 ? TPoly(1) : TPoly(-1)) * m;
        ExactMatrix am = a * m;
        TPoly tr;
        for (int i = 0; i < n; ++i) tr = tr + am.at(i, i);
        TPoly ck = TPoly(Rat(-1) / k) * tr;
        out.charpoly[n - k] = ck;
        m = am;
        for (int i = 0; i < n; ++i) m.at(i, i) = m.at(i, i) + ck;
    }
    if (!is_zero(m))
        throw domain_error("internal: Cayley-Hamilton residual nonzero");
    out.det = (n % 2 == 0 ? TPoly(1) : TPoly(-1)) * out.charpoly[0];
    return out;
}

TPoly det(const ExactMatrix& m) { return faddeev_leverrier(m).det; }

ExactMatrix invert(const ExactMatrix& m) {
    if (m.rows != m.cols) throw domain_error("matrix is not square");
    ExactMatrix plain = m;
    plain.den = TPoly(1);
    CharData cd = faddeev_leverrier(plain);
    if (cd.det.is_zero()) {
        // Identify a kernel vector for the error message.
        auto w = left_kernel(transpose(plain));
        std::string v = "(";
        if (!w.empty())
            for (std::size_t i = 0; i < w[0].size(); ++i)
                v += (i ? ", " : "") + str(w[0][i]);
        throw domain_error("matrix is singular; kernel vector " + v + ")");
    }
    ExactMatrix inv = m.den * cd.adjugate;
    inv.den = cd.det;
    return inv;
}

std::vector<std::vector<TPoly>> left_kernel(const ExactMatrix& m) {
    const int rows = m.rows, cols = m.cols;
    // Fraction-free echelon pass on [M | I]; rows whose M-part vanishes carry
    // kernel combinations in the identity part.
    std::vector<std::vector<TPoly>> w(rows, std::vector<TPoly>(cols + rows));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) w[i][j] = m.at(i, j);
        w[i][cols + i] = TPoly(1);
    }
    TPoly prev(1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!w[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(w[pr], w[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = 0; j < cols + rows; ++j) {
                if (j == c) continue;
                w[i][j] = bareiss_div(w[r][c] * w[i][j] - w[i][c] * w[r][j], prev);
            }
            w[i][c] = TPoly();
        }
        prev = w[r][c];
        ++r;
    }
    std::vector<std::vector<TPoly>> out;
    for (int i = r; i < rows; ++i)
        out.emplace_back(w[i].begin() + cols, w[i].end());
    return out;
}

std::vector<std::vector<Rat>> rat_kernel(const std::vector<std::vector<Rat>>& rows, int ncols) {
    std::vector<std::vector<Rat>> a = rows;
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != ncols) throw domain_error("ragged constraint rows");
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t pr = r;
        while (pr < a.size() && a[pr][c] == 0) ++pr;
        if (pr == a.size()) continue;
        std::swap(a[pr], a[r]);
        const Rat piv = a[r][c];
        for (int j = 0; j < ncols; ++j) a[r][j] /= piv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> rational_vectors_in_span(const ExactMatrix& cols,
                                                       const std::shared_ptr<Tower>& T) {
    const int s = cols.rows;
    auto kernel = left_kernel(cols); // denominator is irrelevant for the span
    if (kernel.empty()) {
        // Full row rank: the span is the whole space.
        std::vector<std::vector<Rat>> all;
        for (int i = 0; i < s; ++i) {
            std::vector<Rat> v(s, Rat(0));
            v[i] = 1;
            all.push_back(std::move(v));
        }
        return all;
    }
    // r lies in the span iff w . r = 0 for every kernel vector w; expand each
    // equation over (formal monomial) x (tower basis element) coordinates.
    std::vector<std::vector<Rat>> constraints;
    for (const auto& w : kernel) {
        std::map<std::pair<std::string, long>, std::vector<Rat>> rows;
        for (int i = 0; i < s; ++i) {
            for (const auto& [mono, coeff] : w[i].terms()) {
                const std::vector<Rat> qc = q_coordinates(coeff, T);
                for (long b = 0; b < static_cast<long>(qc.size()); ++b) {
                    if (qc[b] == 0) continue;
                    auto& row = rows[{str(mono), b}];
                    if (row.empty()) row.assign(s, Rat(0));
                    row[i] += qc[b];
                }
            }
        }
        for (auto& [key, row] : rows) constraints.push_back(std::move(row));
    }
    return rat_kernel(constraints, s);
}

std::vector<std::vector<Rat>> rational_left_annihilators(const ExactMatrix& m,
                                                         const std::shared_ptr<Tower>& T) {
    std::vector<std::vector<Rat>> constraints;
    for (int c = 0; c < m.cols; ++c) {
        // sum_i q_i m(i,c) = 0, one rational row per (monomial, basis) slot.
        std::map<std::pair<std::string, long>, std::vector<Rat>> rows;
        for (int i = 0; i < m.rows; ++i) {
            for (const auto& [mono, coeff] : m.at(i, c).terms()) {
                const std::vector<Rat> qc = q_coordinates(coeff, T);
                for (long b = 0; b < static_cast<long>(qc.size()); ++b) {
                    if (qc[b] == 0) continue;
                    auto& row = rows[{str(mono), b}];
                    if (row.empty()) row.assign(m.rows, Rat(0));
                    row[i] += qc[b];
                }
            }
        }
        for (auto& [key, row] : rows) constraints.push_back(std::move(row));
    }
    return rat_kernel(constraints, m.rows);
}

ExactMatrix companion(const IntPoly& f) {
    if (!f.is_monic()) throw domain_error("companion matrix requires a monic polynomial");
    const int d = f.degree();
    if (d < 1) throw domain_error("companion matrix requires degree >= 1");
    ExactMatrix m(d, d);
    for (int i = 0; i + 1 < d; ++i) m.at(i, i + 1) = TPoly(1);
    for (int j = 0; j < d; ++j) m.at(d - 1, j) = TPoly(Rat(-f.c[j]));
    return m;
}

ExactMatrix vandermonde_from_roots(const std::vector<TowerElem>& roots) {
    const int d = static_cast<int>(roots.size());
    ExactMatrix m(d, d);
    for (int j = 0; j < d; ++j) {
        TowerElem p(1);
        for (int i = 0; i < d; ++i) {
            m.at(i, j) = TPoly(p);
            if (i + 1 < d) p = p * roots[j];
        }
    }
    return m;
}

ExactMatrix diag(const std::vector<TowerElem>& d) {
    ExactMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i)) = TPoly(d[i]);
    return m;
}

RealBasis real_basis_from_roots(const std::shared_ptr<Tower>& T,
                                const std::vector<TowerElem>& roots,
                                const IsolatedRoots& structure) {
    const int d = static_cast<int>(roots.size());
    if (structure.count() != d) throw domain_error("root list does not match the isolation data");
    RealBasis out;
    out.Y = ExactMatrix(d, d);
    out.D = ExactMatrix(d, d);
    TowerElem ii;
    bool have_i = false;
    int col = 0;
    for (int j = 0; j < d; ++j) {
        if (structure.is_real[j]) {
            TowerElem p(1);
            for (int i = 0; i < d; ++i) {
                out.Y.at(i, col) = TPoly(p);
                if (i + 1 < d) p = p * roots[j];
            }
            out.D.at(col, col) = TPoly(roots[j]);
            ++col;
            continue;
        }
        const int jb = structure.conj_index[j];
        if (jb < j) continue; // pair already handled at its first member
        // Canonical order puts the negative-imaginary member first.
        const TowerElem bm = roots[j], bp = roots[jb];
        if (!have_i) {
            ii = imaginary_unit(T);
            have_i = true;
        }
        const TowerElem half = TowerElem(Rat(Rat(1) / 2));
        TowerElem pm(1), pp(1);
        for (int i = 0; i < d; ++i) {
            out.Y.at(i, col) = TPoly((pp + pm) * half);
            out.Y.at(i, col + 1) = TPoly((pp - pm) * half / ii);
            if (i + 1 < d) {
                pm = pm * bm;
                pp = pp * bp;
            }
        }
        const TowerElem re = (bp + bm) * half;
        const TowerElem im = (bp - bm) * half / ii;
        out.D.at(col, col) = TPoly(re);
        out.D.at(col, col + 1) = TPoly(im);
        out.D.at(col + 1, col) = TPoly(-im);
        out.D.at(col + 1, col + 1) = TPoly(re);
        col += 2;
    }
    return out;
}

std::string str(const ExactMatrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < m.cols; ++j) s += (j ? ", " : "") + str(m.at(i, j));
    }
    s += "]";
    if (!(m.den == TPoly(1))) s += " / (" + str(m.den) + ")";
    return s;
}

} // namespace cps
