#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lozi/map.hpp"

namespace lozi {

/// Simple polygon with counter-clockwise vertices. Used as the exact region
/// representation behind strips; intersections clip against convex polygons only.
class Polygon {
public:
    Polygon() = default;
    /// Orientation is normalized to counter-clockwise; consecutive duplicates are dropped.
    explicit Polygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    bool empty() const noexcept { return vertices_.size() < 3 && !degenerate_segment(); }
    std::size_t size() const noexcept { return vertices_.size(); }

    double signed_area() const;
    double area() const;
    double diameter() const;
    /// Mean of the vertices.
    Point vertex_mean() const;
    double min_x() const;
    double max_x() const;
    double min_y() const;
    double max_y() const;

    /// Keep the part of the polygon with a*x + b*y <= c.
    Polygon clip_halfplane(double a, double b, double c) const;
    /// Intersection with a convex polygon (Sutherland-Hodgman).
    Polygon clip(const Polygon& convex) const;

    /// Image under a map that is affine on the polygon.
    Polygon transformed(const std::function<Point(Point)>& f) const;

    /// [min, max] of x over the horizontal line at height y, or nullopt if it misses.
    std::optional<std::pair<double, double>> slice_at_y(double y) const;
    std::optional<std::pair<double, double>> slice_at_x(double x) const;

    /// Signed distance to the boundary for convex polygons: > 0 inside, < 0 outside.
    double convex_inside_margin(Point p) const;

private:
    bool degenerate_segment() const noexcept { return vertices_.size() == 2; }
    std::vector<Point> vertices_;
};

Polygon axis_box(double x_min, double x_max, double y_min, double y_max);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff(std::span<const Point> a, std::span<const Point> b);

}  // namespace lozi
