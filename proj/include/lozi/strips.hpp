#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lozi/map.hpp"
#include "lozi/polygon.hpp"
#include "lozi/report.hpp"
#include "lozi/rng.hpp"

namespace lozi {

/// Golden ratio; a/(a^2 - 1) < 1 iff a > kPhi.
inline constexpr double kPhi = 1.6180339887498948482;

/// Two polylines are treated as coincident below this Hausdorff distance.
inline constexpr double kCoincidenceTol = 1e-9;

/// Square S = [-R, R]^2.
struct Square {
    double R = 0.5;

    bool contains(Point p, double tol = 0.0) const { return std::abs(p.x) <= R + tol && std::abs(p.y) <= R + tol; }
    bool strictly_contains(Point p) const { return std::abs(p.x) < R && std::abs(p.y) < R; }
    Polygon polygon() const { return axis_box(-R, R, -R, R); }
};

/// R(a) = a / (4 (a - 2)); requires a > 4.
double domain_R(double a);
/// Same formula without the a > 4 gate (plots and the a = 4 tangency case); requires a > 2.
double domain_R_unchecked(double a);

/// Square with R = sup_n R(a(n)) = a / (4 (a - 2)). Requires a > 4.
Square domain_square(const MapParams& params);
Square domain_square_unchecked(const MapParams& params);

enum class Orientation { graph_over_x, graph_over_y };

/// Piecewise-affine graph. For graph_over_x the breakpoints are (x, h(x)); for graph_over_y
/// they are (v(y), y). The graph variable is strictly increasing along the breakpoints.
class PolylineCurve {
public:
    PolylineCurve() = default;
    /// Throws DomainError if fewer than two breakpoints or the graph variable is not strictly increasing.
    PolylineCurve(Orientation orientation, std::vector<Point> breakpoints, double slope_bound);

    Orientation orientation() const noexcept { return orientation_; }
    const std::vector<Point>& breakpoints() const noexcept { return breakpoints_; }
    double slope_bound() const noexcept { return slope_bound_; }

    double domain_lo() const;
    double domain_hi() const;
    /// Value at graph variable t (linear extrapolation is not performed; t is clamped).
    double eval(double t) const;
    /// Largest |d value / d graph variable| over all segments.
    double max_abs_slope() const;
    bool respects_slope_bound(double tol = 1e-12) const { return max_abs_slope() <= slope_bound_ + tol; }

private:
    double graph_var(const Point& p) const { return orientation_ == Orientation::graph_over_x ? p.x : p.y; }
    double value(const Point& p) const { return orientation_ == Orientation::graph_over_x ? p.y : p.x; }

    Orientation orientation_ = Orientation::graph_over_x;
    std::vector<Point> breakpoints_;
    double slope_bound_ = 0.0;
};

enum class StripKind { horizontal, vertical };

/// Region between two polylines over [lo, hi]: a vertical strip is
/// {lower(y) <= x <= upper(y), y in [lo, hi]}, a horizontal strip is
/// {lower(x) <= y <= upper(x), x in [lo, hi]}.
struct Strip {
    StripKind kind = StripKind::vertical;
    PolylineCurve lower;
    PolylineCurve upper;
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    static Strip make_empty(StripKind kind);
    Polygon polygon() const;
    std::vector<Point> vertices() const;
    /// Largest slope among both boundary curves.
    double max_abs_slope() const;
};

/// Converts a polygon that is known to be a vertical (resp. horizontal) strip back into
/// boundary polylines by slicing at every vertex height (resp. abscissa).
/// The resulting slope bound is the largest boundary slope.
Strip vertical_strip_from_polygon(const Polygon& poly);
Strip horizontal_strip_from_polygon(const Polygon& poly);

/// V1^n, V2^n (time n) and H1^{n+1}, H2^{n+1} = L_n(V_i^n) (time n + 1), all built with a(n).
struct StripFamily {
    long n = 0;
    double R = 0.0;
    double a_n = 0.0;
    Strip V1, V2, H1, H2;

    const Strip& V(int i) const { return i == 1 ? V1 : V2; }
    const Strip& H(int i) const { return i == 1 ? H1 : H2; }
};

/// Requires a > 4.
StripFamily build_strips(const MapParams& params, long n, const Square& square);
/// No parameter gate beyond a(n) > 2 (used for a = 4 and for plots).
StripFamily build_strips_unchecked(const MapParams& params, long n, const Square& square);

enum class BoundarySide { L1, L2, L3, L4 };  // y = R, y = -R, x = R, x = -R
enum class MapDirection { forward, inverse };

/// Exact image of one side of S under L_n or L_n^{-1}, with a breakpoint at the kink.
PolylineCurve map_boundary(const MapParams& params, long n, const Square& square, BoundarySide side,
                           MapDirection direction);

/// d(strip): max gap between the boundary polylines, evaluated at the merged breakpoints.
double strip_width(const Strip& s);

/// a / (a^2 - 1); requires a > Phi.
double nu_v(double a);

/// L_n^{-1}(V) ∩ V_i^n, computed as L_n^{-1}(V ∩ H_i^{n+1}). V is a vertical strip at time n + 1.
/// The result's slope bound is the largest slope among its boundary segments.
Strip pullback_strip(const MapParams& params, long n, const Strip& V, const StripFamily& family, int i);

/// L_n(H ∩ V_i^n): the forward counterpart used for horizontal refinement. H lives at time n.
Strip pushforward_strip(const MapParams& params, long n, const Strip& H, const StripFamily& family, int i);

struct TransitionMatrix {
    long n = 0;
    std::array<std::array<std::uint8_t, 2>, 2> entries{};
    /// Area of H_i^{n+1} ∩ V_j^{n+1}.
    std::array<std::array<double, 2>, 2> overlap_area{};

    bool all_ones() const;
};

/// Entry (i, j) is 1 iff H_i^{n+1} ∩ V_j^{n+1} has positive area. Requires a > 4.
TransitionMatrix transition_matrix(const MapParams& params, long n);

/// Strip-mapping clauses at time n. Returns a single not_applicable check when a <= 4.
Report verify_assumption1(const MapParams& params, long n);

/// Random mu-vertical sub-strip of V_i (polyline boundaries, 2 or 3 vertices each).
/// With `parallel_tight` the boundaries are parallel to V_i's own boundaries (the extremal case).
Strip random_vertical_substrip(const StripFamily& family, int i, double slope_bound, Rng& rng,
                               bool parallel_tight = false);

struct ContractionAudit {
    double nu = 0.0;
    double max_ratio = 0.0;
    double max_slope_after = 0.0;
    std::size_t strips = 0;
    std::size_t pullbacks = 0;
    Report report;
};

/// Pulls back `samples` random 1/a-vertical sub-strips of V1 ∪ V2 of the autonomous map with
/// parameter a into both V_1 and V_2 and compares width ratios with a/(a^2 - 1).
ContractionAudit contraction_audit(double a, std::size_t samples, std::uint64_t seed);

}  // namespace lozi
