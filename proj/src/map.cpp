#include "lozi/map.hpp"

#include <cmath>
#include <string>

#include "lozi/errors.hpp"

namespace lozi {

namespace {

void require_finite(Point z, const char* op) {
    if (!std::isfinite(z.x) || !std::isfinite(z.y))
        throw DomainError(std::string(op) + ": non-finite point");
}

bool beyond_escape_bound(Point z) {
    return !(std::fabs(z.x) <= kEscapeBound && std::fabs(z.y) <= kEscapeBound);
}

}  // namespace

double a_of(const MapParams& params, long n) {
    return params.a + params.epsilon * (1.0 + std::cos(static_cast<double>(n)));
}

void validate(const MapParams& params) {
    if (!std::isfinite(params.a) || !std::isfinite(params.epsilon))
        throw DomainError("map parameters must be finite");
    if (params.epsilon < 0.0) throw DomainError("epsilon must be >= 0");
}

Point forward(const MapParams& params, long n, Point z) {
    require_finite(z, "forward");
    const double a = a_of(params, n);
    return {(1.0 + z.y) - a * std::fabs(z.x), -z.x};
}

// Written as -((1 - x) - a|y|) so that reverse(forward(reverse(z))) == inverse(z) bit for bit.
Point inverse(const MapParams& params, long n, Point z) {
    require_finite(z, "inverse");
    const double a = a_of(params, n);
    return {-z.y, -((1.0 - z.x) - a * std::fabs(z.y))};
}

Mat2 jacobian_forward(const MapParams& params, long n, Point z) {
    const double a = a_of(params, n);
    return Mat2{{{{-a * sign_of(z.x), 1.0}, {-1.0, 0.0}}}};
}

Mat2 jacobian_inverse(const MapParams& params, long n, Point z) {
    const double a = a_of(params, n);
    return Mat2{{{{0.0, -1.0}, {1.0, a * sign_of(z.y)}}}};
}

OrbitSegment orbit(const MapParams& params, Point z0, long n0, long n_fwd, long n_bwd) {
    if (n_fwd < 0 || n_bwd < 0) throw RangeError("orbit: step counts must be >= 0");
    require_finite(z0, "orbit");

    std::vector<Point> backward;
    backward.reserve(static_cast<std::size_t>(n_bwd));
    OrbitSegment seg;
    seg.n0 = n0;

    Point z = z0;
    for (long k = 0; k > -n_bwd; --k) {
        // z is the point at time n0 + k; step back with L_{n0+k-1}^{-1}.
        Point prev = inverse(params, n0 + k - 1, z);
        if (beyond_escape_bound(prev)) {
            seg.escaped_backward = k - 1;
            break;
        }
        backward.push_back(prev);
        z = prev;
    }

    seg.points.reserve(backward.size() + 1 + static_cast<std::size_t>(n_fwd));
    seg.points.assign(backward.rbegin(), backward.rend());
    seg.anchor = seg.points.size();
    seg.points.push_back(z0);

    z = z0;
    for (long k = 0; k < n_fwd; ++k) {
        Point next = forward(params, n0 + k, z);
        if (beyond_escape_bound(next)) {
            seg.escaped_forward = k + 1;
            break;
        }
        seg.points.push_back(next);
        z = next;
    }
    return seg;
}

std::vector<Point> fixed_points(const MapParams& params) {
    if (!params.autonomous())
        throw UnsupportedError("fixed_points: the nonautonomous map has no fixed points");
    if (!(params.a > 2.0)) throw ParameterError("fixed_points: requires a > 2");
    const double pos = 1.0 / (2.0 + params.a);
    const double neg = 1.0 / (params.a - 2.0);
    return {{pos, -pos}, {-neg, neg}};
}

}  // namespace lozi
