#include "lozi/strips.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lozi/cone.hpp"
#include "lozi/errors.hpp"

namespace lozi {

double domain_R_unchecked(double a) {
    if (!(a > 2.0)) throw ParameterError("domain_R: requires a > 2");
    return a / (4.0 * (a - 2.0));
}

double domain_R(double a) {
    if (!(a > 4.0)) throw ParameterError("domain_R: parameter out of range, requires a > 4");
    return domain_R_unchecked(a);
}

Square domain_square(const MapParams& params) {
    validate(params);
    return Square{domain_R(params.a)};
}

Square domain_square_unchecked(const MapParams& params) {
    validate(params);
    return Square{domain_R_unchecked(params.a)};
}

// ---------------------------------------------------------------------------
// PolylineCurve

PolylineCurve::PolylineCurve(Orientation orientation, std::vector<Point> breakpoints, double slope_bound)
    : orientation_(orientation), breakpoints_(std::move(breakpoints)), slope_bound_(slope_bound) {
    if (breakpoints_.size() < 2) throw DomainError("PolylineCurve: needs at least two breakpoints");
    for (std::size_t k = 1; k < breakpoints_.size(); ++k)
        if (!(graph_var(breakpoints_[k]) > graph_var(breakpoints_[k - 1])))
            throw DomainError("PolylineCurve: graph variable must be strictly increasing");
}

double PolylineCurve::domain_lo() const { return graph_var(breakpoints_.front()); }
double PolylineCurve::domain_hi() const { return graph_var(breakpoints_.back()); }

double PolylineCurve::eval(double t) const {
    if (t <= domain_lo()) return value(breakpoints_.front());
    if (t >= domain_hi()) return value(breakpoints_.back());
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [this](double v, const Point& p) { return v < graph_var(p); });
    const Point& q = *it;
    const Point& p = *(it - 1);
    const double tp = graph_var(p), tq = graph_var(q);
    if (t == tp) return value(p);
    return value(p) + (t - tp) * (value(q) - value(p)) / (tq - tp);
}

double PolylineCurve::max_abs_slope() const {
    double s = 0.0;
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        const Point& p = breakpoints_[k - 1];
        const Point& q = breakpoints_[k];
        s = std::max(s, std::fabs((value(q) - value(p)) / (graph_var(q) - graph_var(p))));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Strip

Strip Strip::make_empty(StripKind kind) {
    Strip s;
    s.kind = kind;
    s.empty = true;
    return s;
}

Polygon Strip::polygon() const {
    if (empty) return {};
    std::vector<Point> v;
    const auto& lo_pts = lower.breakpoints();
    const auto& up_pts = upper.breakpoints();
    v.reserve(lo_pts.size() + up_pts.size());
    if (kind == StripKind::vertical) {
        v.insert(v.end(), up_pts.begin(), up_pts.end());
        v.insert(v.end(), lo_pts.rbegin(), lo_pts.rend());
    } else {
        v.insert(v.end(), lo_pts.begin(), lo_pts.end());
        v.insert(v.end(), up_pts.rbegin(), up_pts.rend());
    }
    return Polygon(std::move(v));
}

std::vector<Point> Strip::vertices() const {
    if (empty) return {};
    std::vector<Point> v = lower.breakpoints();
    v.insert(v.end(), upper.breakpoints().begin(), upper.breakpoints().end());
    return v;
}

double Strip::max_abs_slope() const {
    if (empty) return 0.0;
    return std::max(lower.max_abs_slope(), upper.max_abs_slope());
}

namespace {

constexpr double kBreakpointMergeTol = 1e-12;

// Sorted graph-variable levels with near-duplicates merged; the extreme levels keep the
// extreme values so slices at the ends still touch the polygon.
std::vector<double> merged_levels(std::vector<double> levels) {
    std::sort(levels.begin(), levels.end());
    std::vector<double> out;
    for (double v : levels) {
        if (out.empty() || v - out.back() > kBreakpointMergeTol) out.push_back(v);
    }
    if (out.size() >= 2 && !levels.empty()) out.back() = levels.back();
    return out;
}

template <bool Vertical>
Strip strip_from_polygon(const Polygon& poly) {
    constexpr StripKind kind = Vertical ? StripKind::vertical : StripKind::horizontal;
    if (poly.size() < 2) return Strip::make_empty(kind);
    std::vector<double> levels;
    for (const Point& p : poly.vertices()) levels.push_back(Vertical ? p.y : p.x);
    levels = merged_levels(std::move(levels));
    if (levels.size() < 2) return Strip::make_empty(kind);

    std::vector<Point> lower, upper;
    for (double t : levels) {
        auto s = Vertical ? poly.slice_at_y(t) : poly.slice_at_x(t);
        // Vertices within the merge tolerance of t belong to this level; at the extreme levels
        // a nearly flat edge would otherwise slice to a single point.
        for (const Point& p : poly.vertices()) {
            const double level = Vertical ? p.y : p.x;
            const double across = Vertical ? p.x : p.y;
            if (std::fabs(level - t) > kBreakpointMergeTol) continue;
            if (!s) s = std::pair{across, across};
            s->first = std::min(s->first, across);
            s->second = std::max(s->second, across);
        }
        if (!s) continue;
        if constexpr (Vertical) {
            lower.push_back({s->first, t});
            upper.push_back({s->second, t});
        } else {
            lower.push_back({t, s->first});
            upper.push_back({t, s->second});
        }
    }
    if (lower.size() < 2) return Strip::make_empty(kind);
    const Orientation o = Vertical ? Orientation::graph_over_y : Orientation::graph_over_x;
    Strip s;
    s.kind = kind;
    s.lower = PolylineCurve(o, std::move(lower), 0.0);
    s.upper = PolylineCurve(o, std::move(upper), 0.0);
    const double slope = s.max_abs_slope();
    s.lower = PolylineCurve(o, s.lower.breakpoints(), slope);
    s.upper = PolylineCurve(o, s.upper.breakpoints(), slope);
    s.lo = levels.front();
    s.hi = levels.back();
    return s;
}

Strip two_point_strip(StripKind kind, Point l0, Point l1, Point u0, Point u1, double lo, double hi,
                      double slope) {
    const Orientation o = kind == StripKind::vertical ? Orientation::graph_over_y : Orientation::graph_over_x;
    Strip s;
    s.kind = kind;
    s.lower = PolylineCurve(o, {l0, l1}, slope);
    s.upper = PolylineCurve(o, {u0, u1}, slope);
    s.lo = lo;
    s.hi = hi;
    return s;
}

}  // namespace

Strip vertical_strip_from_polygon(const Polygon& poly) { return strip_from_polygon<true>(poly); }
Strip horizontal_strip_from_polygon(const Polygon& poly) { return strip_from_polygon<false>(poly); }

// ---------------------------------------------------------------------------
// Strip families

StripFamily build_strips_unchecked(const MapParams& params, long n, const Square& square) {
    validate(params);
    const double a = a_of(params, n);
    if (!(a > 2.0)) throw ParameterError("build_strips: requires a(n) > 2");
    const double R = square.R;
    const double mu = 1.0 / a;

    StripFamily f;
    f.n = n;
    f.R = R;
    f.a_n = a;
    // V1: left boundary from L^{-1}(L4), right boundary from L^{-1}(L3), x < 0.
    f.V1 = two_point_strip(StripKind::vertical, {-1.0 / a, -R}, {(-2.0 * R - 1.0) / a, R},
                           {(2.0 * R - 1.0) / a, -R}, {-1.0 / a, R}, -R, R, mu);
    f.V2 = two_point_strip(StripKind::vertical, {(1.0 - 2.0 * R) / a, -R}, {1.0 / a, R}, {1.0 / a, -R},
                           {(2.0 * R + 1.0) / a, R}, -R, R, mu);
    // H1: images of the top and bottom edges of V1, y > 0.
    f.H1 = two_point_strip(StripKind::horizontal, {-R, 1.0 / a}, {R, (1.0 - 2.0 * R) / a},
                           {-R, (1.0 + 2.0 * R) / a}, {R, 1.0 / a}, -R, R, mu);
    f.H2 = two_point_strip(StripKind::horizontal, {-R, -(1.0 + 2.0 * R) / a}, {R, -1.0 / a}, {-R, -1.0 / a},
                           {R, -(1.0 - 2.0 * R) / a}, -R, R, mu);
    return f;
}

StripFamily build_strips(const MapParams& params, long n, const Square& square) {
    if (!(params.a > 4.0)) throw ParameterError("build_strips: parameter out of range, requires a > 4");
    return build_strips_unchecked(params, n, square);
}

PolylineCurve map_boundary(const MapParams& params, long n, const Square& square, BoundarySide side,
                           MapDirection direction) {
    const double R = square.R;
    Point p0, p1;
    switch (side) {
        case BoundarySide::L1: p0 = {-R, R}, p1 = {R, R}; break;
        case BoundarySide::L2: p0 = {-R, -R}, p1 = {R, -R}; break;
        case BoundarySide::L3: p0 = {R, -R}, p1 = {R, R}; break;
        case BoundarySide::L4: p0 = {-R, -R}, p1 = {-R, R}; break;
    }
    std::vector<Point> pts{p0};
    // Kink where the coordinate inside |.| changes sign: x for L, y for L^{-1}.
    const bool fwd = direction == MapDirection::forward;
    const double c0 = fwd ? p0.x : p0.y;
    const double c1 = fwd ? p1.x : p1.y;
    if ((c0 < 0.0 && c1 > 0.0) || (c0 > 0.0 && c1 < 0.0)) pts.push_back(fwd ? Point{0.0, p0.y} : Point{p0.x, 0.0});
    pts.push_back(p1);
    for (Point& p : pts) p = fwd ? forward(params, n, p) : inverse(params, n, p);

    auto strictly_monotone = [&](auto coord) {
        bool inc = true, dec = true;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            inc = inc && coord(pts[k]) > coord(pts[k - 1]);
            dec = dec && coord(pts[k]) < coord(pts[k - 1]);
        }
        return inc || dec;
    };
    const auto gx = [](const Point& p) { return p.x; };
    Orientation o;
    if (strictly_monotone(gx)) {
        o = Orientation::graph_over_x;
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    } else {
        o = Orientation::graph_over_y;
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
    }
    PolylineCurve probe(o, pts, 0.0);
    return PolylineCurve(o, std::move(pts), probe.max_abs_slope());
}

double strip_width(const Strip& s) {
    if (s.empty) return 0.0;
    const double lo = std::max(s.lower.domain_lo(), s.upper.domain_lo());
    const double hi = std::min(s.lower.domain_hi(), s.upper.domain_hi());
    std::vector<double> ts{lo, hi};
    for (const auto* c : {&s.lower, &s.upper})
        for (const Point& p : c->breakpoints()) {
            const double t = s.kind == StripKind::vertical ? p.y : p.x;
            if (t >= lo && t <= hi) ts.push_back(t);
        }
    double w = 0.0;
    for (double t : ts) w = std::max(w, s.upper.eval(t) - s.lower.eval(t));
    return w;
}

double nu_v(double a) {
    if (!(a > kPhi)) throw ParameterError("nu_v: contraction not guaranteed for a <= (1 + sqrt 5)/2");
    return a / (a * a - 1.0);
}

Strip pullback_strip(const MapParams& params, long n, const Strip& V, const StripFamily& family, int i) {
    if (V.empty) return Strip::make_empty(StripKind::vertical);
    const Polygon cut = V.polygon().clip(family.H(i).polygon());
    if (cut.size() < 2) return Strip::make_empty(StripKind::vertical);
    // H_i lies in a single half-plane y > 0 or y < 0, so L_n^{-1} is affine on the cut.
    return vertical_strip_from_polygon(cut.transformed([&](Point p) { return inverse(params, n, p); }));
}

Strip pushforward_strip(const MapParams& params, long n, const Strip& H, const StripFamily& family, int i) {
    if (H.empty) return Strip::make_empty(StripKind::horizontal);
    const Polygon cut = H.polygon().clip(family.V(i).polygon());
    if (cut.size() < 2) return Strip::make_empty(StripKind::horizontal);
    return horizontal_strip_from_polygon(cut.transformed([&](Point p) { return forward(params, n, p); }));
}

// ---------------------------------------------------------------------------
// Transition matrix and strip-mapping checks

namespace {

constexpr double kNonemptyArea = 1e-14;

}  // namespace

bool TransitionMatrix::all_ones() const {
    for (const auto& row : entries)
        for (auto e : row)
            if (e != 1) return false;
    return true;
}

TransitionMatrix transition_matrix(const MapParams& params, long n) {
    const Square S = domain_square(params);
    const StripFamily now = build_strips(params, n, S);
    const StripFamily next = build_strips(params, n + 1, S);
    TransitionMatrix t;
    t.n = n;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            const double area = now.H(i).polygon().clip(next.V(j).polygon()).area();
            t.overlap_area[i - 1][j - 1] = area;
            t.entries[i - 1][j - 1] = area > kNonemptyArea ? 1 : 0;
        }
    return t;
}

Report verify_assumption1(const MapParams& params, long n) {
    Report r;
    r.section = "assumption1";
    if (!(params.a > 4.0)) {
        CheckResult c;
        c.name = "gate";
        c.status = CheckStatus::not_applicable;
        c.margin = params.a - 4.0;
        c.note = "requires_a_gt_4";
        r.add(c);
        return r;
    }
    const Square S = domain_square(params);
    const double R = S.R;
    const double an = a_of(params, n);
    const StripFamily now = build_strips(params, n, S);
    const StripFamily next = build_strips(params, n + 1, S);

    {
        CheckResult c = margin_check("domain_conditions", std::min(0.5 - R, (an - 2.0) * R - 1.0));
        if (c.margin <= 0.0) c.status = CheckStatus::fail;
        c.witness_n = n;
        r.add(c);
    }
    {
        double worst = std::numeric_limits<double>::infinity();
        Point wp;
        for (const StripFamily* f : {&now, &next})
            for (const Strip* s : {&f->V1, &f->V2, &f->H1, &f->H2})
                for (const Point& p : s->vertices()) {
                    const double m = R - std::max(std::fabs(p.x), std::fabs(p.y));
                    if (m < worst) worst = m, wp = p;
                }
        CheckResult c = margin_check("containment", worst, 1e-12);
        c.witness_n = n;
        c.witness_point = wp;
        r.add(c);
    }
    {
        double dev = 0.0;
        Point wp;
        for (int i = 1; i <= 2; ++i) {
            const Polygon img = now.V(i).polygon().transformed([&](Point p) { return forward(params, n, p); });
            const Polygon target = now.H(i).polygon();
            const double d = hausdorff(img.vertices(), target.vertices());
            if (d > dev) dev = d, wp = img.vertices().front();
        }
        CheckResult c = margin_check("forward_image", kCoincidenceTol - dev);
        c.witness_n = n;
        if (c.status == CheckStatus::fail) c.witness_point = wp;
        r.add(c);
    }
    {
        // Vertical boundaries of V_i go to the lines x = +-R.
        double dev = 0.0;
        Point wp;
        for (int i = 1; i <= 2; ++i)
            for (const PolylineCurve* curve : {&now.V(i).lower, &now.V(i).upper})
                for (const Point& p : curve->breakpoints()) {
                    const Point q = forward(params, n, p);
                    const double d = std::fabs(std::fabs(q.x) - R);
                    if (d > dev) dev = d, wp = p;
                }
        CheckResult c = margin_check("vertical_boundaries", kCoincidenceTol - dev);
        c.witness_n = n;
        if (c.status == CheckStatus::fail) c.witness_point = wp;
        r.add(c);
    }
    {
        // Horizontal boundaries of V_i (edges on y = +-R) go to the boundary curves of H_i.
        double dev = 0.0;
        Point wp;
        for (int i = 1; i <= 2; ++i) {
            const Strip& V = now.V(i);
            const Strip& H = now.H(i);
            for (double y : {-R, R}) {
                const Point e0{V.lower.eval(y), y};
                const Point e1{V.upper.eval(y), y};
                const std::vector<Point> img{forward(params, n, e0), forward(params, n, e1)};
                const double d = std::min(hausdorff(img, H.lower.breakpoints()), hausdorff(img, H.upper.breakpoints()));
                if (d > dev) dev = d, wp = e0;
            }
        }
        CheckResult c = margin_check("horizontal_boundaries", kCoincidenceTol - dev);
        c.witness_n = n;
        if (c.status == CheckStatus::fail) c.witness_point = wp;
        r.add(c);
    }
    {
        // L_n^{-1}(d_h H_ij^{n+1}) lies in d_h V_i^n: preimages of H_ij vertices sit on y = +-R inside V_i.
        double worst = std::numeric_limits<double>::infinity();
        Point wp;
        for (int i = 1; i <= 2; ++i) {
            const Polygon Vi = now.V(i).polygon();
            for (int j = 1; j <= 2; ++j) {
                const Polygon Hij = now.H(i).polygon().clip(next.V(j).polygon());
                for (const Point& p : Hij.vertices()) {
                    const Point q = inverse(params, n, p);
                    const double m = std::min(kCoincidenceTol - std::fabs(std::fabs(q.y) - R),
                                              Vi.convex_inside_margin(q) + kCoincidenceTol);
                    if (m < worst) worst = m, wp = p;
                }
            }
        }
        CheckResult c = margin_check("inverse_horizontal_boundaries", worst);
        c.witness_n = n;
        if (c.status == CheckStatus::fail) c.witness_point = wp;
        r.add(c);
    }
    {
        const double mu = params.autonomous() ? 1.0 / an : default_mu(params.a);
        CheckResult prod = margin_check("slope_product", 1.0 - mu * mu);
        if (prod.margin <= 0.0) prod.status = CheckStatus::fail;
        prod.witness_n = n;
        r.add(prod);

        double slope = 0.0;
        for (const StripFamily* f : {&now, &next})
            for (const Strip* s : {&f->V1, &f->V2, &f->H1, &f->H2}) slope = std::max(slope, s->max_abs_slope());
        CheckResult sb = margin_check("slope_bounds", mu - slope, 1e-15);
        sb.witness_n = n;
        r.add(sb);
    }
    {
        const TransitionMatrix t = transition_matrix(params, n);
        double min_area = std::numeric_limits<double>::infinity();
        for (const auto& row : t.overlap_area)
            for (double a : row) min_area = std::min(min_area, a);
        CheckResult c = margin_check("transition_matrix", min_area);
        c.status = t.all_ones() ? CheckStatus::pass : CheckStatus::fail;
        c.witness_n = n;
        r.add(c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Contraction audit

Strip random_vertical_substrip(const StripFamily& family, int i, double slope_bound, Rng& rng, bool parallel_tight) {
    const Strip& Vi = family.V(i);
    const double R = family.R;
    if (parallel_tight) {
        double t1 = rng.uniform(), t2 = rng.uniform();
        if (t1 > t2) std::swap(t1, t2);
        if (t1 == t2) t2 = std::min(1.0, t1 + 1e-3);
        auto shifted = [&](double t) {
            std::vector<Point> pts;
            for (const Point& p : Vi.lower.breakpoints())
                pts.push_back({p.x + t * (Vi.upper.eval(p.y) - p.x), p.y});
            return pts;
        };
        Strip s;
        s.kind = StripKind::vertical;
        s.lower = PolylineCurve(Orientation::graph_over_y, shifted(t1), slope_bound);
        s.upper = PolylineCurve(Orientation::graph_over_y, shifted(t2), slope_bound);
        s.lo = -R;
        s.hi = R;
        return s;
    }

    const Polygon host = Vi.polygon();
    auto random_curve = [&]() -> std::optional<std::vector<Point>> {
        std::vector<double> ys{-R};
        if (rng.uniform() < 0.5) ys.push_back(rng.uniform(-0.8 * R, 0.8 * R));
        ys.push_back(R);
        std::vector<Point> pts;
        double x = rng.uniform(Vi.lower.eval(-R), Vi.upper.eval(-R));
        pts.push_back({x, -R});
        for (std::size_t k = 1; k < ys.size(); ++k) {
            x += rng.uniform(-slope_bound, slope_bound) * (ys[k] - ys[k - 1]);
            pts.push_back({x, ys[k]});
        }
        for (const Point& p : pts)
            if (host.convex_inside_margin(p) < -1e-14) return std::nullopt;
        return pts;
    };

    for (int attempt = 0; attempt < 100000; ++attempt) {
        auto c1 = random_curve();
        if (!c1) continue;
        auto c2 = random_curve();
        if (!c2) continue;
        PolylineCurve a(Orientation::graph_over_y, *c1, slope_bound);
        PolylineCurve b(Orientation::graph_over_y, *c2, slope_bound);
        std::vector<double> ts;
        for (const Point& p : *c1) ts.push_back(p.y);
        for (const Point& p : *c2) ts.push_back(p.y);
        bool a_left = true, b_left = true;
        for (double t : ts) {
            a_left = a_left && a.eval(t) < b.eval(t);
            b_left = b_left && b.eval(t) < a.eval(t);
        }
        if (!a_left && !b_left) continue;
        Strip s;
        s.kind = StripKind::vertical;
        s.lower = a_left ? a : b;
        s.upper = a_left ? b : a;
        s.lo = -R;
        s.hi = R;
        return s;
    }
    throw PrecisionError("random_vertical_substrip: rejection sampling did not converge");
}

ContractionAudit contraction_audit(double a, std::size_t samples, std::uint64_t seed) {
    const MapParams params{a, 0.0};
    ContractionAudit audit;
    audit.report.section = "contraction";
    if (!(a >= 4.0)) {
        CheckResult c;
        c.name = "gate";
        c.status = CheckStatus::not_applicable;
        c.margin = a - 4.0;
        c.note = "requires_a_ge_4";
        audit.report.add(c);
        return audit;
    }
    audit.nu = nu_v(a);
    const Square S = domain_square_unchecked(params);
    const StripFamily fam = build_strips_unchecked(params, 0, S);
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const int host = 1 + static_cast<int>(s % 2);
        const Strip V = random_vertical_substrip(fam, host, 1.0 / a, rng, s % 3 == 0);
        const double w = strip_width(V);
        ++audit.strips;
        if (!(w > 0.0)) continue;
        for (int k = 1; k <= 2; ++k) {
            const Strip P = pullback_strip(params, 0, V, fam, k);
            ++audit.pullbacks;
            audit.max_ratio = std::max(audit.max_ratio, strip_width(P) / w);
            audit.max_slope_after = std::max(audit.max_slope_after, P.max_abs_slope());
        }
    }
    audit.report.add(margin_check("nu_below_one", 1.0 - audit.nu));
    audit.report.add(margin_check("width_ratio", audit.nu + 1e-12 - audit.max_ratio));
    audit.report.add(margin_check("slope_preservation", default_mu(a) + 1e-12 - audit.max_slope_after));
    return audit;
}

}  // namespace lozi
