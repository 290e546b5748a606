#pragma once

#include <cstdint>
#include <optional>

#include "lozi/map.hpp"
#include "lozi/report.hpp"

namespace lozi {

/// Stable cone |xi| <= mu_v |eta| (near-vertical), unstable cone |eta| <= mu_h |xi|
/// (near-horizontal), expansion reciprocal mu.
struct ConeSpec {
    double mu_v = 0.0;
    double mu_h = 0.0;
    double mu = 0.0;
};

/// (a - sqrt(a^2 - 4)) / 2, the smaller root of mu (a - mu) = 1. Requires a >= 2.
double default_mu(double a);

/// mu_v = mu_h = default_mu(a) for the base parameter a, mu = 1 - mu_h mu_v.
ConeSpec make_cone_spec(const MapParams& params);

struct MuInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    bool contains(double v) const { return !empty && v >= lo && v <= hi; }
};

/// I_n: solutions of mu (a(n) - mu) >= 1. Empty when a(n) < 2.
MuInterval mu_interval(const MapParams& params, long n);
/// Intersection of I_n over n in [n_lo, n_hi].
MuInterval mu_interval_intersection(const MapParams& params, long n_lo, long n_hi);

/// Relative slack of the cone inequality, (mu_v |eta| - |xi|) / max(|xi|, |eta|); >= 0 iff inside.
double stable_cone_margin(const ConeSpec& spec, TangentVector v);
double unstable_cone_margin(const ConeSpec& spec, TangentVector v);

/// Throws DomainError for the zero vector.
bool stable_cone_contains(const ConeSpec& spec, TangentVector v);
bool unstable_cone_contains(const ConeSpec& spec, TangentVector v);

/// DL_n^{-1}(z) v = (-eta, xi + a(n) sign(y) eta). Throws ConeMembershipError if v is outside
/// the stable cone (relative tolerance 1e-12 for boundary vectors).
TangentVector push_stable(const MapParams& params, long n, Point z, TangentVector v);
TangentVector push_stable(const MapParams& params, long n, Point z, TangentVector v, const ConeSpec& spec);

/// DL_n(z) v = (-a(n) sign(x) xi + eta, -xi), for v in the unstable cone.
TangentVector push_unstable(const MapParams& params, long n, Point z, TangentVector v);
TangentVector push_unstable(const MapParams& params, long n, Point z, TangentVector v, const ConeSpec& spec);

struct ConeAudit {
    Report report;
    double min_stable_margin = 0.0;
    double min_unstable_margin = 0.0;
    double min_stable_expansion = 0.0;    // min |eta'| / |eta|
    double min_unstable_expansion = 0.0;  // min |xi'| / |xi|
    std::size_t evaluations = 0;
};

/// Samples points of H_1^{n+1} ∪ H_2^{n+1} (stable cone, inverse differential) and of
/// V_1^n ∪ V_2^n (unstable cone, forward differential) with cone-boundary and interior
/// vectors, for every n in [n_lo, n_hi]. Kink points y = 0 / x = 0 are checked with both
/// sign conventions. Requires a >= 4; otherwise the report is not_applicable.
ConeAudit verify_A3(const MapParams& params, long n_lo, long n_hi, std::size_t samples, std::uint64_t seed,
                    unsigned workers = 1);

}  // namespace lozi
