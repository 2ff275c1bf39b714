#include "cps/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cps/errors.hpp"
#include "cps/exactmat.hpp"

namespace cps {
namespace {

constexpr long kMaxSignBits = 1L << 20;

// Certified sign of a real field element: zero is decided by the canonical
// representation, otherwise the enclosure refines until it excludes zero.
int sign_exact(const TowerElem& e, long bits) {
    if (e.is_zero()) return 0;
    for (long b = std::max(64L, bits); b <= kMaxSignBits; b *= 2) {
        CInterval box = eval_box(e, b);
        if (!box.im().contains_zero())
            throw domain_error("sign requested for a quantity that is not real");
        int sg = box.re().definite_sign();
        if (sg != 0) return sg;
    }
    throw precision_error("cannot certify the sign of a nonzero quantity within " +
                          std::to_string(kMaxSignBits) + " bits");
}

RInterval real_box(const TowerElem& e, long bits) {
    CInterval box = eval_box(e, bits);
    if (!box.im().contains_zero())
        throw domain_error("expected a real quantity");
    return box.re();
}

// Enclosure of a provably nonzero real element, refined until it excludes 0.
RInterval nonzero_real_box(const TowerElem& e, long bits) {
    for (long b = bits; b <= kMaxSignBits; b *= 2) {
        RInterval x = real_box(e, b);
        if (!x.contains_zero()) return x;
    }
    throw precision_error("cannot separate a nonzero quantity from zero within " +
                          std::to_string(kMaxSignBits) + " bits");
}

// Quasidiagonal layout of B: 1x1 real factors and 2x2 rotation-scaling
// factors [[re, im], [-im, re]], read off the superdiagonal.
struct BBlock {
    int offset = 0;
    int width = 1;
    TowerElem value;    // width 1
    TowerElem re, im;   // width 2
};

TowerElem const_entry(const TPoly& p) {
    if (p.is_zero()) return TowerElem(0);
    if (!p.is_constant())
        throw domain_error("internal block matrix contains an unresolved formal symbol");
    return p.constant();
}

std::vector<BBlock> b_blocks(const Scheme& sch) {
    const ExactMatrix& B = sch.B;
    if (B.rows != B.cols || B.rows != sch.s - sch.n || B.rows <= 0)
        throw domain_error("internal block matrix has inconsistent dimensions");
    if (!(B.den == TPoly(1)))
        throw domain_error("internal block matrix must have denominator one");
    std::vector<BBlock> out;
    std::vector<int> block_of(B.rows, -1);
    int i = 0;
    while (i < B.rows) {
        BBlock blk;
        blk.offset = i;
        if (i + 1 < B.rows && !B.at(i, i + 1).is_zero()) {
            blk.width = 2;
            blk.re = const_entry(B.at(i, i));
            blk.im = const_entry(B.at(i, i + 1));
            if (const_entry(B.at(i + 1, i + 1)) != blk.re ||
                const_entry(B.at(i + 1, i)) != -blk.im)
                throw domain_error("internal 2x2 block is not in rotation-scaling form");
            block_of[i] = block_of[i + 1] = static_cast<int>(out.size());
            i += 2;
        } else {
            blk.width = 1;
            blk.value = const_entry(B.at(i, i));
            block_of[i] = static_cast<int>(out.size());
            i += 1;
        }
        out.push_back(blk);
    }
    for (int r = 0; r < B.rows; ++r)
        for (int c = 0; c < B.cols; ++c)
            if (block_of[r] != block_of[c] && !B.at(r, c).is_zero())
                throw domain_error("internal matrix is not quasidiagonal");
    return out;
}

void require_window_shape(const std::vector<BBlock>& blocks, const WindowSpec& w, int dim) {
    if (w.dim != dim)
        throw domain_error("window covers " + std::to_string(w.dim) +
                           " internal coordinates, the scheme has " + std::to_string(dim));
    if (w.blocks.size() != blocks.size())
        throw domain_error("window has " + std::to_string(w.blocks.size()) +
                           " factors, the internal map has " + std::to_string(blocks.size()) +
                           " blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (w.blocks[i].disk != (blocks[i].width == 2))
            throw domain_error("window factor " + std::to_string(i) +
                               " does not match the internal block shape");
}

std::string fmt_r(const std::vector<long>& r) {
    std::string out = "(";
    for (std::size_t i = 0; i < r.size(); ++i)
        out += (i ? "," : "") + std::to_string(r[i]);
    return out + ")";
}

// Nearest-neighbor distances through a uniform cell grid (2D); quadratic
// scan for other dimensions (desk-scale sets).
std::vector<double> nearest_neighbor_distances(const std::vector<LatticePoint>& pts) {
    const std::size_t N = pts.size();
    std::vector<double> nn(N, std::numeric_limits<double>::infinity());
    const int n = static_cast<int>(pts[0].x.size());
    auto dist = [&](std::size_t a, std::size_t b) {
        double d2 = 0;
        for (int i = 0; i < n; ++i) {
            double d = pts[a].x[i] - pts[b].x[i];
            d2 += d * d;
        }
        return std::sqrt(d2);
    };
    if (n != 2 || N < 64) {
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = a + 1; b < N; ++b) {
                double d = dist(a, b);
                nn[a] = std::min(nn[a], d);
                nn[b] = std::min(nn[b], d);
            }
        return nn;
    }
    double xmin = pts[0].x[0], xmax = xmin, ymin = pts[0].x[1], ymax = ymin;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x[0]);
        xmax = std::max(xmax, p.x[0]);
        ymin = std::min(ymin, p.x[1]);
        ymax = std::max(ymax, p.x[1]);
    }
    double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    double cell = span / std::max(1.0, std::floor(std::sqrt(static_cast<double>(N))));
    auto key = [&](double x, double y) {
        long cx = static_cast<long>(std::floor((x - xmin) / cell));
        long cy = static_cast<long>(std::floor((y - ymin) / cell));
        return cx * 1000003L + cy;
    };
    std::unordered_map<long, std::vector<std::size_t>> grid;
    for (std::size_t a = 0; a < N; ++a) grid[key(pts[a].x[0], pts[a].x[1])].push_back(a);
    for (std::size_t a = 0; a < N; ++a) {
        long cx = static_cast<long>(std::floor((pts[a].x[0] - xmin) / cell));
        long cy = static_cast<long>(std::floor((pts[a].x[1] - ymin) / cell));
        double best = std::numeric_limits<double>::infinity();
        for (long ring = 0;; ++ring) {
            for (long dx = -ring; dx <= ring; ++dx)
                for (long dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::labs(dx), std::labs(dy)) != ring) continue;
                    auto it = grid.find((cx + dx) * 1000003L + (cy + dy));
                    if (it == grid.end()) continue;
                    for (std::size_t b : it->second)
                        if (b != a) best = std::min(best, dist(a, b));
                }
            if (best < ring * cell || ring > 2 * static_cast<long>(span / cell) + 2) break;
        }
        nn[a] = best;
    }
    return nn;
}

} // namespace

WindowSpec build_window(const Scheme& sch, const Rat& scale) {
    if (scale < 0) throw domain_error("window scale must be nonnegative");
    WindowSpec w;
    w.dim = sch.s - sch.n;
    for (const BBlock& blk : b_blocks(sch)) {
        WindowBlock wb;
        if (blk.width == 1) {
            if (sign_exact(TowerElem(1) - blk.value, 128) < 0 ||
                sign_exact(blk.value + TowerElem(1), 128) < 0)
                throw domain_error("no bounded invariant window exists: an internal "
                                   "eigenvalue has modulus > 1");
            wb.disk = false;
            wb.lo = TowerElem(-scale);
            wb.hi = TowerElem(scale);
        } else {
            if (sign_exact(TowerElem(1) - (blk.re * blk.re + blk.im * blk.im), 128) < 0)
                throw domain_error("no bounded invariant window exists: an internal "
                                   "eigenvalue has modulus > 1");
            wb.disk = true;
            wb.radius = TowerElem(scale);
        }
        w.blocks.push_back(wb);
    }
    return w;
}

bool window_invariant(const Scheme& sch, const WindowSpec& w) {
    const auto blocks = b_blocks(sch);
    require_window_shape(blocks, w, sch.s - sch.n);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const BBlock& b = blocks[i];
        const WindowBlock& wb = w.blocks[i];
        if (!wb.disk) {
            if (sign_exact(wb.hi - wb.lo, 128) < 0) return false;
            for (const TowerElem& end : {wb.lo, wb.hi}) {
                TowerElem img = b.value * end;
                if (sign_exact(img - wb.lo, 128) < 0 || sign_exact(wb.hi - img, 128) < 0)
                    return false;
            }
        } else {
            if (sign_exact(wb.radius, 128) < 0) return false;
            if (sign_exact(TowerElem(1) - (b.re * b.re + b.im * b.im), 128) < 0) return false;
        }
    }
    return true;
}

PointSet generate(const Scheme& sch, const WindowSpec& w, long enum_radius,
                  long precision_bits) {
    if (enum_radius < 0) throw domain_error("enumeration radius must be nonnegative");
    if (precision_bits < 32) throw domain_error("precision must be at least 32 bits");
    if (!sch.certificate.all())
        throw domain_error("scheme is not generic (certificate fails: " +
                           std::string(sch.certificate.nondegenerate ? "" : "non-degeneracy ") +
                           std::string(sch.certificate.aperiodic ? "" : "aperiodicity ") +
                           std::string(sch.certificate.irreducible ? "" : "irreducibility ") +
                           "); refusing to generate points");
    const int s = sch.s, n = sch.n, dim = s - n;
    const auto blocks = b_blocks(sch);
    require_window_shape(blocks, w, dim);
    for (const WindowBlock& wb : w.blocks)
        for (const TowerElem* e : {&wb.lo, &wb.hi, &wb.radius})
            if (e->tower() && e->tower() != sch.tower)
                throw domain_error("window bounds live in a different number field "
                                   "than the scheme");

    // Exact numeric instantiation of the lattice basis.
    std::map<std::string, TowerElem> vals;
    for (const auto& [k, v] : sch.var_values) vals[k] = TowerElem(v);
    auto subst = [&vals](const TPoly& p) {
        return p.is_zero() ? TowerElem(0) : p.substitute(vals);
    };
    std::vector<std::vector<TowerElem>> Lnum(s, std::vector<TowerElem>(s));
    for (int i = 0; i < s; ++i)
        for (int k = 0; k < s; ++k) Lnum[i][k] = subst(sch.L.at(i, k));
    const TowerElem den = subst(sch.L.den);
    if (den.is_zero())
        throw domain_error("the chosen symbol values make the lattice basis singular; "
                           "pick different substitution values");
    const int den_sign = sign_exact(den, 128);

    // Screening enclosures of the internal rows of L/den, as per-coordinate
    // contribution tables tab[j][k][v+R] = (row n+j of L/den)[k] * v.
    const long sb = 128;
    const RInterval denb = nonzero_real_box(den, sb);
    const long W = 2 * enum_radius + 1;
    std::vector<std::vector<std::vector<RInterval>>> tab(
        dim, std::vector<std::vector<RInterval>>(s));
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < s; ++k) {
            RInterval entry = real_box(Lnum[n + j][k], sb) / denb;
            tab[j][k].reserve(W);
            for (long v = -enum_radius; v <= enum_radius; ++v)
                tab[j][k].push_back(entry * RInterval::exact_int(v, sb));
        }

    // Window bound enclosures and exact denominator-cleared combinations.
    struct BlockData {
        RInterval lo_box, hi_box, rad2_box;
        TowerElem lo_den, hi_den, rad2_den2;  // lo*den, hi*den, radius^2*den^2
    };
    std::vector<BlockData> bd;
    for (const WindowBlock& wb : w.blocks) {
        BlockData d{RInterval(sb), RInterval(sb), RInterval(sb), {}, {}, {}};
        if (!wb.disk) {
            if (sign_exact(wb.hi - wb.lo, 128) < 0)
                throw domain_error("window interval factor has negative length");
            d.lo_box = real_box(wb.lo, sb);
            d.hi_box = real_box(wb.hi, sb);
            d.lo_den = wb.lo * den;
            d.hi_den = wb.hi * den;
        } else {
            if (sign_exact(wb.radius, 128) < 0)
                throw domain_error("window disk factor has negative radius");
            d.rad2_box = real_box(wb.radius * wb.radius, sb);
            d.rad2_den2 = wb.radius * wb.radius * den * den;
        }
        bd.push_back(std::move(d));
    }

    // Odometer over r with prefix sums of the screening enclosures:
    // pref[k][j] encloses sum over the first k coordinates.
    std::vector<long> r(s, -enum_radius);
    std::vector<std::vector<RInterval>> pref(s + 1, std::vector<RInterval>(dim, RInterval(sb)));
    auto rebuild = [&](int from) {
        for (int k = from; k < s; ++k)
            for (int j = 0; j < dim; ++j)
                pref[k + 1][j] = pref[k][j] + tab[j][k][r[k] + enum_radius];
    };
    rebuild(0);

    // Exact star numerator for the straddling cases.
    auto star_num = [&](int j) {
        TowerElem acc(0);
        for (int k = 0; k < s; ++k)
            if (r[k] != 0) acc = acc + Lnum[n + j][k] * TowerElem(Rat(r[k]));
        return acc;
    };
    // Sign of (x - bound) where x = num/den and bound*den is precomputed.
    auto cmp_exact = [&](const TowerElem& num, const TowerElem& bound_den) {
        int sg = sign_exact(num - bound_den, sb);
        return den_sign > 0 ? sg : -sg;
    };

    PointSet ps;
    ps.n = n;
    ps.s = s;
    ps.enum_radius = enum_radius;
    ps.precision_bits = precision_bits;
    ps.provenance = sch.provenance;
    ps.var_values = sch.var_values;

    std::vector<std::pair<std::vector<long>, bool>> kept;  // (r, boundary)
    while (true) {
        const std::vector<RInterval>& star = pref[s];
        bool inside = true, boundary = false;
        int coord = 0;
        for (std::size_t bi = 0; bi < w.blocks.size() && inside; ++bi) {
            const WindowBlock& wb = w.blocks[bi];
            const BlockData& d = bd[bi];
            if (!wb.disk) {
                const RInterval& xb = star[coord];
                if (xb.definitely_less(d.lo_box) || d.hi_box.definitely_less(xb)) {
                    inside = false;
                } else if (!(d.lo_box.definitely_leq(xb) && xb.definitely_leq(d.hi_box))) {
                    TowerElem num = star_num(coord);
                    int s1 = cmp_exact(num, d.lo_den);   // sign of x - lo
                    int s2 = -cmp_exact(num, d.hi_den);  // sign of hi - x
                    if (s1 < 0 || s2 < 0)
                        inside = false;
                    else if (s1 == 0 || s2 == 0)
                        boundary = true;
                }
                coord += 1;
            } else {
                RInterval sum = star[coord].sq() + star[coord + 1].sq();
                if (d.rad2_box.definitely_less(sum)) {
                    inside = false;
                } else if (!sum.definitely_leq(d.rad2_box)) {
                    TowerElem nx = star_num(coord), ny = star_num(coord + 1);
                    int sg = sign_exact(nx * nx + ny * ny - d.rad2_den2, sb);
                    if (sg > 0)
                        inside = false;
                    else if (sg == 0)
                        boundary = true;
                }
                coord += 2;
            }
        }
        if (inside) kept.emplace_back(r, boundary);

        int p = s - 1;
        while (p >= 0 && r[p] == enum_radius) r[p--] = -enum_radius;
        if (p < 0) break;
        ++r[p];
        rebuild(p);
    }

    // Output coordinates at the requested precision.
    const RInterval den_out = nonzero_real_box(den, precision_bits);
    std::vector<std::vector<RInterval>> Lout(s, std::vector<RInterval>(s, RInterval(precision_bits)));
    for (int i = 0; i < s; ++i)
        for (int k = 0; k < s; ++k)
            Lout[i][k] = real_box(Lnum[i][k], precision_bits) / den_out;
    ps.points.reserve(kept.size());
    for (const auto& [rv, flag] : kept) {
        LatticePoint p;
        p.r = rv;
        p.boundary = flag;
        for (int i = 0; i < s; ++i) {
            RInterval acc(static_cast<mpfr_prec_t>(precision_bits));
            for (int k = 0; k < s; ++k)
                if (rv[k] != 0)
                    acc = acc + Lout[i][k] * RInterval::exact_int(rv[k], precision_bits);
            (i < n ? p.x : p.x_star).push_back(acc.mid_double());
        }
        ps.points.push_back(std::move(p));
    }
    return ps;
}

SelfSimilarityReport verify_selfsimilarity(const PointSet& ps, const Scheme& sch, double tol) {
    if (ps.s != sch.s || ps.n != sch.n)
        throw domain_error("point set does not match the scheme dimensions");
    const int s = sch.s, n = sch.n;
    if (!(sch.C.den == TPoly(1)))
        throw domain_error("self-map matrix must be an integer matrix");
    std::vector<std::vector<long>> C(s, std::vector<long>(s, 0));
    for (int i = 0; i < s; ++i)
        for (int k = 0; k < s; ++k) {
            const TPoly& e = sch.C.at(i, k);
            if (e.is_zero()) continue;
            const TowerElem& v = e.constant();
            if (!v.is_rational() || v.rat().get_den() != 1)
                throw domain_error("self-map matrix must be an integer matrix");
            C[i][k] = static_cast<long>(v.rat().get_num().get_si());
        }
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (!sch.A.at(i, k).is_zero())
                A[i][k] = real_box(const_entry(sch.A.at(i, k)), 128).mid_double();

    std::map<std::vector<long>, const LatticePoint*> index;
    for (const auto& p : ps.points) index[p.r] = &p;

    SelfSimilarityReport rep;
    std::ostringstream detail;
    int reported = 0;
    for (const auto& p : ps.points) {
        if (p.boundary) {
            ++rep.skipped_boundary;
            continue;
        }
        std::vector<long> r2(s, 0);
        bool in_box = true;
        for (int i = 0; i < s; ++i) {
            long acc = 0;
            for (int k = 0; k < s; ++k) acc += C[i][k] * p.r[k];
            r2[i] = acc;
            if (std::labs(acc) > ps.enum_radius) in_box = false;
        }
        if (!in_box) {
            ++rep.out_of_box;
            continue;
        }
        ++rep.checked;
        auto it = index.find(r2);
        if (it == index.end()) {
            ++rep.violations;
            if (reported++ < 5)
                detail << "image " << fmt_r(r2) << " of " << fmt_r(p.r) << " is missing; ";
            continue;
        }
        double scale = 1.0;
        for (double xv : it->second->x) scale = std::max(scale, std::abs(xv));
        bool match = true;
        for (int i = 0; i < n; ++i) {
            double want = 0;
            for (int k = 0; k < n; ++k) want += A[i][k] * p.x[k];
            if (std::abs(want - it->second->x[i]) > tol * scale) match = false;
        }
        if (match) {
            ++rep.confirmed;
        } else {
            ++rep.violations;
            if (reported++ < 5)
                detail << "physical image of " << fmt_r(p.r) << " deviates from the map; ";
        }
    }
    rep.detail = detail.str();
    return rep;
}

DeloneStats stats(const PointSet& ps) {
    if (ps.points.empty()) throw domain_error("empty point set has no gap statistics");
    DeloneStats st;
    if (ps.points.size() == 1) {
        st.min_gap = std::numeric_limits<double>::infinity();
        return st;
    }
    if (ps.n == 1) {
        std::vector<double> xs;
        xs.reserve(ps.points.size());
        for (const auto& p : ps.points) xs.push_back(p.x[0]);
        std::sort(xs.begin(), xs.end());
        std::vector<double> diffs;
        for (std::size_t i = 1; i < xs.size(); ++i) diffs.push_back(xs[i] - xs[i - 1]);
        st.min_gap = *std::min_element(diffs.begin(), diffs.end());
        // The gap multiset holds nearest-neighbor distances.  The first and
        // last sample point have only one neighbor, an artifact of the finite
        // enumeration box, so they are left out.
        for (std::size_t i = 1; i < diffs.size(); ++i)
            st.gaps.push_back(std::min(diffs[i - 1], diffs[i]));
        std::sort(st.gaps.begin(), st.gaps.end());
        // Covering radius: half the widest hole away from the box edges.
        if (diffs.size() >= 3) {
            double widest = 0;
            for (std::size_t i = 1; i + 1 < diffs.size(); ++i)
                widest = std::max(widest, diffs[i]);
            st.covering_defined = true;
            st.covering_radius = widest / 2;
        }
        return st;
    }
    st.gaps = nearest_neighbor_distances(ps.points);
    std::sort(st.gaps.begin(), st.gaps.end());
    st.min_gap = st.gaps.front();
    if (ps.n == 2) {
        // Covering radius estimate: deepest grid hole over the sample's
        // bounding box shrunk by one max-nearest-neighbor margin.
        double xmin = ps.points[0].x[0], xmax = xmin, ymin = ps.points[0].x[1], ymax = ymin;
        for (const auto& p : ps.points) {
            xmin = std::min(xmin, p.x[0]);
            xmax = std::max(xmax, p.x[0]);
            ymin = std::min(ymin, p.x[1]);
            ymax = std::max(ymax, p.x[1]);
        }
        const double margin = st.gaps.back();
        if (xmax - xmin > 2 * margin && ymax - ymin > 2 * margin) {
            const double step =
                std::max(st.min_gap / 2, std::max(xmax - xmin, ymax - ymin) / 256);
            double worst = 0;
            for (double gx = xmin + margin; gx <= xmax - margin; gx += step)
                for (double gy = ymin + margin; gy <= ymax - margin; gy += step) {
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& p : ps.points) {
                        double dx = p.x[0] - gx, dy = p.x[1] - gy;
                        best = std::min(best, dx * dx + dy * dy);
                    }
                    worst = std::max(worst, best);
                }
            st.covering_defined = true;
            st.covering_radius = std::sqrt(worst);
        }
    }
    return st;
}

std::vector<std::pair<double, long>> cluster_gaps(const std::vector<double>& gaps, double tol) {
    std::vector<double> g = gaps;
    std::sort(g.begin(), g.end());
    std::vector<std::pair<double, long>> out;
    for (double v : g) {
        if (out.empty() || v - out.back().first > tol)
            out.emplace_back(v, 1);
        else
            ++out.back().second;
    }
    return out;
}

} // namespace cps
