#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cps/rational.hpp"
#include "cps/scheme.hpp"
#include "cps/tower.hpp"

namespace cps {

// One factor of a product window in internal coordinates: a closed interval
// [lo, hi] on a real eigendirection (one coordinate), or a closed disk of
// radius `radius` centered at the origin on a rotation-scaling plane (two
// coordinates). Bounds are exact field elements.
struct WindowBlock {
    bool disk = false;
    TowerElem lo, hi;
    TowerElem radius;
};

// Acceptance window: a product of closed intervals and disks aligned with
// B's quasidiagonal block structure. B is already expressed in its real
// eigenbasis, so the product sits directly in internal coordinates.
struct WindowSpec {
    int dim = 0;  // number of internal coordinates covered (s - n)
    std::vector<WindowBlock> blocks;
};

// Symmetric product window of half-width `scale`: an interval [-scale, scale]
// for every real eigendirection of B and a disk of radius `scale` for every
// rotation-scaling plane. Requires every eigenvalue of B to have certified
// modulus <= 1 (so the closed window maps into itself); otherwise throws
// domain_error("no bounded invariant window exists ...").
WindowSpec build_window(const Scheme& sch, const Rat& scale);

// Exact certificate that B maps the closed window into itself (endpoint
// images inside the interval factors, |eigenvalue| <= 1 on disk factors).
bool window_invariant(const Scheme& sch, const WindowSpec& w);

struct LatticePoint {
    std::vector<double> x;       // physical coordinates, first n of L r
    std::vector<double> x_star;  // internal coordinates, last s-n of L r
    std::vector<long> r;         // lattice coordinates
    bool boundary = false;       // star image certified exactly on the window boundary
};

struct PointSet {
    int n = 0, s = 0;
    long enum_radius = 0;
    long precision_bits = 0;
    std::string provenance;                 // construction line of the scheme used
    std::map<std::string, Rat> var_values;  // numeric instantiation of formal symbols
    std::vector<LatticePoint> points;       // sorted lexicographically by r
};

// Enumerates all r in Z^s with max-norm <= enum_radius and keeps the points
// whose star image pi_perp(L r) lies in the closed window. Membership is
// decided rigorously: interval screening first, exact sign computations for
// any straddling case. Points exactly on the boundary are kept and flagged.
// Requires a generic scheme (throws domain_error otherwise) and substitution
// values for all formal symbols of L that keep the basis invertible.
PointSet generate(const Scheme& sch, const WindowSpec& w, long enum_radius,
                  long precision_bits = 256);

struct SelfSimilarityReport {
    long checked = 0;           // points whose C-image stays in the enumeration box
    long confirmed = 0;         // image point found with matching physical coordinates
    long out_of_box = 0;        // C-image escapes the box: unverifiable at this scale
    long skipped_boundary = 0;  // boundary-flagged points, excluded from assertions
    long violations = 0;        // image missing, or physical image mismatch
    std::string detail;
};

// Checks the inclusion "A maps the point set into itself" at finite scale:
// for each point with coordinates r, the point with coordinates C r must be
// present whenever it stays inside the enumeration box, and its physical
// position must equal A x within `tol` (relative).
SelfSimilarityReport verify_selfsimilarity(const PointSet& ps, const Scheme& sch,
                                           double tol = 1e-9);

struct DeloneStats {
    double min_gap = 0;           // smallest gap (uniform discreteness radius estimate)
    bool covering_defined = false;
    double covering_radius = 0;   // estimated on the interior, away from box edges
    std::vector<double> gaps;     // sorted; consecutive gaps in 1D, else nearest-neighbor distances
};

// Gap statistics of a nonempty point set. With a single point the covering
// radius is reported absent and min_gap is +infinity.
DeloneStats stats(const PointSet& ps);

// Groups near-equal gap values: returns (representative value, count) pairs
// for maximal runs of the sorted gaps where consecutive members differ by at
// most `tol`.
std::vector<std::pair<double, long>> cluster_gaps(const std::vector<double>& gaps, double tol);

} // namespace cps
