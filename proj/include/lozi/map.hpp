#pragma once

#include <array>
#include <optional>
#include <vector>

namespace lozi {

/// Parameters of the area-preserving Lozi family L_n(x, y) = (1 + y - a(n)|x|, -x)
/// with schedule a(n) = a + epsilon (1 + cos n). epsilon = 0 is the autonomous map.
struct MapParams {
    double a = 4.5;
    double epsilon = 0.0;

    bool autonomous() const noexcept { return epsilon == 0.0; }
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct TangentVector {
    double xi = 0.0;
    double eta = 0.0;

    friend bool operator==(const TangentVector&, const TangentVector&) = default;
};

/// Row-major 2x2 matrix.
struct Mat2 {
    std::array<std::array<double, 2>, 2> m{};

    double operator()(int r, int c) const { return m[r][c]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    TangentVector operator*(const TangentVector& v) const {
        return {m[0][0] * v.xi + m[0][1] * v.eta, m[1][0] * v.xi + m[1][1] * v.eta};
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// sign with the convention sign(0) = +1 (boundary split x >= 0 / x < 0).
constexpr double sign_of(double v) noexcept { return v < 0.0 ? -1.0 : 1.0; }

/// Coordinates beyond this magnitude end an orbit with an escape flag.
inline constexpr double kEscapeBound = 1e150;

/// Orbit around an anchor. points[anchor] is the point at time n0; points[anchor + k]
/// is the point at time n0 + k.
struct OrbitSegment {
    long n0 = 0;
    std::size_t anchor = 0;
    std::vector<Point> points;
    /// Signed step (relative to the anchor) at which the escape bound was exceeded.
    std::optional<long> escaped_forward;
    std::optional<long> escaped_backward;

    bool escaped() const noexcept { return escaped_forward || escaped_backward; }
    long first_step() const noexcept { return -static_cast<long>(anchor); }
    long last_step() const noexcept { return static_cast<long>(points.size()) - 1 - static_cast<long>(anchor); }
    const Point& at(long step) const { return points.at(static_cast<std::size_t>(step + static_cast<long>(anchor))); }
};

double a_of(const MapParams& params, long n);

/// Throws DomainError when a/epsilon are non-finite or epsilon < 0.
void validate(const MapParams& params);

Point forward(const MapParams& params, long n, Point z);
Point inverse(const MapParams& params, long n, Point z);

/// Differential of L_n at z: [[-a(n) sign(x), 1], [-1, 0]]. sign(0) = +1 (not a classical derivative).
Mat2 jacobian_forward(const MapParams& params, long n, Point z);
/// Differential of L_n^{-1} at z: [[0, -1], [1, a(n) sign(y)]].
Mat2 jacobian_inverse(const MapParams& params, long n, Point z);

OrbitSegment orbit(const MapParams& params, Point z0, long n0, long n_fwd, long n_bwd);

/// The two fixed points of the autonomous map, positive-x branch first. Requires epsilon = 0, a > 2.
std::vector<Point> fixed_points(const MapParams& params);

/// Reversor J(x, y) = (-y, -x); J L J = L^{-1}.
constexpr Point reverse(Point z) noexcept { return {-z.y, -z.x}; }

}  // namespace lozi
