#include "lozi/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lozi {

Polygon::Polygon(std::vector<Point> vertices) {
    for (const Point& p : vertices)
        if (vertices_.empty() || !(vertices_.back() == p)) vertices_.push_back(p);
    while (vertices_.size() > 1 && vertices_.front() == vertices_.back()) vertices_.pop_back();
    if (signed_area() < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

double Polygon::signed_area() const {
    const std::size_t n = vertices_.size();
    if (n < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices_[i];
        const Point& q = vertices_[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

double Polygon::area() const { return std::fabs(signed_area()); }

double Polygon::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            d = std::max(d, std::hypot(vertices_[i].x - vertices_[j].x, vertices_[i].y - vertices_[j].y));
    return d;
}

Point Polygon::vertex_mean() const {
    Point c;
    if (vertices_.empty()) return c;
    for (const Point& p : vertices_) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(vertices_.size());
    c.y /= static_cast<double>(vertices_.size());
    return c;
}

double Polygon::min_x() const {
    double v = std::numeric_limits<double>::infinity();
    for (const Point& p : vertices_) v = std::min(v, p.x);
    return v;
}
double Polygon::max_x() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const Point& p : vertices_) v = std::max(v, p.x);
    return v;
}
double Polygon::min_y() const {
    double v = std::numeric_limits<double>::infinity();
    for (const Point& p : vertices_) v = std::min(v, p.y);
    return v;
}
double Polygon::max_y() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const Point& p : vertices_) v = std::max(v, p.y);
    return v;
}

Polygon Polygon::clip_halfplane(double a, double b, double c) const {
    const std::size_t n = vertices_.size();
    if (n == 0) return {};
    std::vector<Point> out;
    out.reserve(n + 2);
    auto value = [&](const Point& p) { return a * p.x + b * p.y - c; };
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = vertices_[i];
        const Point& q = vertices_[(i + 1) % n];
        const double fp = value(p);
        const double fq = value(q);
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
            const double t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    Polygon r;
    for (const Point& p : out)
        if (r.vertices_.empty() || !(r.vertices_.back() == p)) r.vertices_.push_back(p);
    while (r.vertices_.size() > 1 && r.vertices_.front() == r.vertices_.back()) r.vertices_.pop_back();
    return r;
}

Polygon Polygon::clip(const Polygon& convex) const {
    Polygon r = *this;
    const auto& cv = convex.vertices();
    const std::size_t n = cv.size();
    for (std::size_t i = 0; i < n && !r.vertices_.empty(); ++i) {
        const Point& p = cv[i];
        const Point& q = cv[(i + 1) % n];
        // Interior of a CCW polygon lies to the left of each edge.
        const double a = q.y - p.y;
        const double b = p.x - q.x;
        r = r.clip_halfplane(a, b, a * p.x + b * p.y);
    }
    return r;
}

Polygon Polygon::transformed(const std::function<Point(Point)>& f) const {
    std::vector<Point> out;
    out.reserve(vertices_.size());
    for (const Point& p : vertices_) out.push_back(f(p));
    Polygon r;
    r.vertices_ = std::move(out);
    if (r.signed_area() < 0.0) std::reverse(r.vertices_.begin(), r.vertices_.end());
    return r;
}

namespace {

template <class Coord, class Other>
std::optional<std::pair<double, double>> slice(const std::vector<Point>& v, double level, Coord coord,
                                               Other other) {
    const std::size_t n = v.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool hit = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % n];
        const double cp = coord(p), cq = coord(q);
        if (level < std::min(cp, cq) || level > std::max(cp, cq)) continue;
        hit = true;
        if (cp == cq) {
            lo = std::min({lo, other(p), other(q)});
            hi = std::max({hi, other(p), other(q)});
        } else if (level == cp) {
            lo = std::min(lo, other(p));
            hi = std::max(hi, other(p));
        } else if (level == cq) {
            lo = std::min(lo, other(q));
            hi = std::max(hi, other(q));
        } else {
            const double t = (level - cp) / (cq - cp);
            const double o = other(p) + t * (other(q) - other(p));
            lo = std::min(lo, o);
            hi = std::max(hi, o);
        }
    }
    if (!hit) return std::nullopt;
    return std::make_pair(lo, hi);
}

}  // namespace

std::optional<std::pair<double, double>> Polygon::slice_at_y(double y) const {
    return slice(vertices_, y, [](const Point& p) { return p.y; }, [](const Point& p) { return p.x; });
}

std::optional<std::pair<double, double>> Polygon::slice_at_x(double x) const {
    return slice(vertices_, x, [](const Point& p) { return p.x; }, [](const Point& p) { return p.y; });
}

double Polygon::convex_inside_margin(Point p) const {
    const std::size_t n = vertices_.size();
    if (n < 3) return -std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices_[i];
        const Point& b = vertices_[(i + 1) % n];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len == 0.0) continue;
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        margin = std::min(margin, cross / len);
    }
    return margin;
}

Polygon axis_box(double x_min, double x_max, double y_min, double y_max) {
    return Polygon({{x_min, y_min}, {x_max, y_min}, {x_max, y_max}, {x_min, y_max}});
}

double hausdorff(std::span<const Point> a, std::span<const Point> b) {
    auto directed = [](std::span<const Point> from, std::span<const Point> to) {
        double worst = 0.0;
        for (const Point& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : to) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace lozi
