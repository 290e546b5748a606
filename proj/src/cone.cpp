#include "lozi/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lozi/errors.hpp"
#include "lozi/parallel.hpp"
#include "lozi/rng.hpp"
#include "lozi/strips.hpp"

namespace lozi {

namespace {

constexpr double kConeTol = 1e-12;

void require_nonzero(TangentVector v) {
    if (!std::isfinite(v.xi) || !std::isfinite(v.eta)) throw DomainError("tangent vector must be finite");
    if (v.xi == 0.0 && v.eta == 0.0) throw DomainError("cone test on the zero vector");
}

}  // namespace

double default_mu(double a) {
    if (!(a >= 2.0)) throw ParameterError("default_mu: requires a >= 2");
    return (a - std::sqrt(a * a - 4.0)) / 2.0;
}

ConeSpec make_cone_spec(const MapParams& params) {
    ConeSpec c;
    c.mu_v = default_mu(params.a);
    c.mu_h = c.mu_v;
    c.mu = 1.0 - c.mu_h * c.mu_v;
    return c;
}

MuInterval mu_interval(const MapParams& params, long n) {
    const double an = a_of(params, n);
    if (an < 2.0) return {};
    const double root = std::sqrt(an * an - 4.0);
    return {(an - root) / 2.0, (an + root) / 2.0, false};
}

MuInterval mu_interval_intersection(const MapParams& params, long n_lo, long n_hi) {
    MuInterval acc{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false};
    for (long n = n_lo; n <= n_hi; ++n) {
        const MuInterval I = mu_interval(params, n);
        if (I.empty) return {};
        acc.lo = std::max(acc.lo, I.lo);
        acc.hi = std::min(acc.hi, I.hi);
    }
    if (acc.lo > acc.hi || n_lo > n_hi) return {};
    return acc;
}

double stable_cone_margin(const ConeSpec& spec, TangentVector v) {
    require_nonzero(v);
    return (spec.mu_v * std::fabs(v.eta) - std::fabs(v.xi)) / std::max(std::fabs(v.xi), std::fabs(v.eta));
}

double unstable_cone_margin(const ConeSpec& spec, TangentVector v) {
    require_nonzero(v);
    return (spec.mu_h * std::fabs(v.xi) - std::fabs(v.eta)) / std::max(std::fabs(v.xi), std::fabs(v.eta));
}

bool stable_cone_contains(const ConeSpec& spec, TangentVector v) {
    require_nonzero(v);
    return std::fabs(v.xi) <= spec.mu_v * std::fabs(v.eta);
}

bool unstable_cone_contains(const ConeSpec& spec, TangentVector v) {
    require_nonzero(v);
    return std::fabs(v.eta) <= spec.mu_h * std::fabs(v.xi);
}

TangentVector push_stable(const MapParams& params, long n, Point z, TangentVector v, const ConeSpec& spec) {
    if (stable_cone_margin(spec, v) < -kConeTol) throw ConeMembershipError("push_stable: vector outside the stable cone");
    return jacobian_inverse(params, n, z) * v;
}

TangentVector push_stable(const MapParams& params, long n, Point z, TangentVector v) {
    return push_stable(params, n, z, v, make_cone_spec(params));
}

TangentVector push_unstable(const MapParams& params, long n, Point z, TangentVector v, const ConeSpec& spec) {
    if (unstable_cone_margin(spec, v) < -kConeTol)
        throw ConeMembershipError("push_unstable: vector outside the unstable cone");
    return jacobian_forward(params, n, z) * v;
}

TangentVector push_unstable(const MapParams& params, long n, Point z, TangentVector v) {
    return push_unstable(params, n, z, v, make_cone_spec(params));
}

namespace {

struct Witness {
    double value = std::numeric_limits<double>::infinity();
    long n = 0;
    Point z;
    TangentVector v;

    void offer(double candidate, long n_, Point z_, TangentVector v_) {
        if (candidate < value) value = candidate, n = n_, z = z_, v = v_;
    }
    void merge(const Witness& o) {
        if (o.value < value) *this = o;
    }
};

struct PerN {
    Witness stable_margin, unstable_margin;
    Witness stable_expansion, unstable_expansion;          // ratio - 1/mu
    Witness stable_rate, unstable_rate;                    // ratio / (a(n) - mu) - 1
    double raw_stable_expansion = std::numeric_limits<double>::infinity();
    double raw_unstable_expansion = std::numeric_limits<double>::infinity();
    double interval_margin = 0.0;
    double feasibility_margin = 0.0;
    std::size_t evaluations = 0;
};

// Cone-boundary vectors for the even sample indices (both signs of xi relative to eta),
// interior vectors otherwise; random positive scale and random overall sign.
TangentVector sample_stable_vector(std::size_t s, double mu_v, Rng& rng) {
    const double scale = rng.uniform(0.1, 10.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    double t;
    switch (s % 4) {
        case 0: t = 1.0; break;
        case 1: t = -1.0; break;
        default: t = rng.uniform(-1.0, 1.0); break;
    }
    return {t * mu_v * scale, scale};
}

PerN audit_one(const MapParams& params, const ConeSpec& spec, long n, const StripFamily& fam,
               std::size_t samples, std::uint64_t seed) {
    PerN out;
    const double an = a_of(params, n);
    const double R = fam.R;
    out.interval_margin = spec.mu_v * (an - spec.mu_v) - 1.0;
    out.feasibility_margin = (1.0 - spec.mu_h * spec.mu_v) - 1.0 / (an - spec.mu_v);
    Rng rng = Rng::stream(seed, n);

    auto record_stable = [&](Point z, TangentVector v, TangentVector w) {
        out.stable_margin.offer(stable_cone_margin(spec, w), n, z, v);
        const double ratio = std::fabs(w.eta) / std::fabs(v.eta);
        out.raw_stable_expansion = std::min(out.raw_stable_expansion, ratio);
        out.stable_expansion.offer(ratio - 1.0 / spec.mu, n, z, v);
        out.stable_rate.offer(ratio / (an - spec.mu_v) - 1.0, n, z, v);
        ++out.evaluations;
    };
    auto record_unstable = [&](Point z, TangentVector v, TangentVector w) {
        out.unstable_margin.offer(unstable_cone_margin(spec, w), n, z, v);
        const double ratio = std::fabs(w.xi) / std::fabs(v.xi);
        out.raw_unstable_expansion = std::min(out.raw_unstable_expansion, ratio);
        out.unstable_expansion.offer(ratio - 1.0 / spec.mu, n, z, v);
        out.unstable_rate.offer(ratio / (an - spec.mu_h) - 1.0, n, z, v);
        ++out.evaluations;
    };

    for (std::size_t s = 0; s < samples; ++s) {
        // Stable cone on H^{n+1}, alternating H1 (y > 0) and H2 (y < 0).
        const Strip& H = fam.H(1 + static_cast<int>(s % 2));
        const double x = rng.uniform(-R, R);
        const Point z{x, rng.uniform(H.lower.eval(x), H.upper.eval(x))};
        const TangentVector v = sample_stable_vector(s / 2, spec.mu_v, rng);
        record_stable(z, v, push_stable(params, n, z, v, spec));

        // Unstable cone on V^n: the reversor maps stable vectors to unstable ones.
        const Strip& V = fam.V(1 + static_cast<int>(s % 2));
        const double y = rng.uniform(-R, R);
        const Point zv{rng.uniform(V.lower.eval(y), V.upper.eval(y)), y};
        const TangentVector sv = sample_stable_vector(s / 2, spec.mu_h, rng);
        const TangentVector u{sv.eta, sv.xi};
        record_unstable(zv, u, push_unstable(params, n, zv, u, spec));
    }

    // Jacobian kinks: apply both one-sided differentials.
    for (double sgn : {1.0, -1.0}) {
        for (double t : {1.0, -1.0}) {
            const TangentVector v{t * spec.mu_v, 1.0};
            const TangentVector w{-v.eta, v.xi + an * sgn * v.eta};
            record_stable({0.1, 0.0}, v, w);
            const TangentVector u{1.0, t * spec.mu_h};
            const TangentVector wu{-an * sgn * u.xi + u.eta, -u.xi};
            record_unstable({0.0, 0.1}, u, wu);
        }
    }
    return out;
}

CheckResult witness_check(std::string name, const Witness& w, double slack) {
    CheckResult c = margin_check(std::move(name), w.value, slack);
    c.witness_n = w.n;
    c.witness_point = w.z;
    c.witness_vector = w.v;
    return c;
}

}  // namespace

ConeAudit verify_A3(const MapParams& params, long n_lo, long n_hi, std::size_t samples, std::uint64_t seed,
                    unsigned workers) {
    ConeAudit audit;
    audit.report.section = "cone_condition";
    audit.report.info = {{"stable_cone", "|xi|<=mu_v*|eta|"},
                         {"unstable_cone", "|eta|<=mu_h*|xi|"},
                         {"displayed_alternative", "|eta|<=mu_v*|xi|(not_used)"}};
    validate(params);
    if (!(params.a >= 4.0) || n_lo > n_hi) {
        CheckResult c;
        c.name = "gate";
        c.status = CheckStatus::not_applicable;
        c.margin = params.a - 4.0;
        c.note = n_lo > n_hi ? "empty_n_range" : "requires_a_ge_4";
        audit.report.add(c);
        return audit;
    }
    const ConeSpec spec = make_cone_spec(params);
    const Square S = domain_square_unchecked(params);
    const std::size_t count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<PerN> results(count);
    parallel_for(count, workers, [&](std::size_t k) {
        const long n = n_lo + static_cast<long>(k);
        results[k] = audit_one(params, spec, n, build_strips_unchecked(params, n, S), samples, seed);
    });

    PerN all;
    all.interval_margin = std::numeric_limits<double>::infinity();
    all.feasibility_margin = std::numeric_limits<double>::infinity();
    long interval_n = n_lo, feasibility_n = n_lo;
    for (std::size_t k = 0; k < count; ++k) {
        const PerN& r = results[k];
        const long n = n_lo + static_cast<long>(k);
        if (r.interval_margin < all.interval_margin) all.interval_margin = r.interval_margin, interval_n = n;
        if (r.feasibility_margin < all.feasibility_margin) all.feasibility_margin = r.feasibility_margin, feasibility_n = n;
        all.stable_margin.merge(r.stable_margin);
        all.unstable_margin.merge(r.unstable_margin);
        all.stable_expansion.merge(r.stable_expansion);
        all.unstable_expansion.merge(r.unstable_expansion);
        all.stable_rate.merge(r.stable_rate);
        all.unstable_rate.merge(r.unstable_rate);
        all.raw_stable_expansion = std::min(all.raw_stable_expansion, r.raw_stable_expansion);
        all.raw_unstable_expansion = std::min(all.raw_unstable_expansion, r.raw_unstable_expansion);
        all.evaluations += r.evaluations;
    }

    CheckResult interval = margin_check("mu_in_interval", all.interval_margin, kConeTol);
    interval.witness_n = interval_n;
    audit.report.add(interval);
    CheckResult feas = margin_check("mu_feasibility", all.feasibility_margin);
    feas.witness_n = feasibility_n;
    audit.report.add(feas);
    audit.report.add(witness_check("stable_inclusion", all.stable_margin, kConeTol));
    audit.report.add(witness_check("stable_expansion", all.stable_expansion, kConeTol));
    audit.report.add(witness_check("stable_expansion_rate", all.stable_rate, kConeTol));
    audit.report.add(witness_check("unstable_inclusion", all.unstable_margin, kConeTol));
    audit.report.add(witness_check("unstable_expansion", all.unstable_expansion, kConeTol));
    audit.report.add(witness_check("unstable_expansion_rate", all.unstable_rate, kConeTol));

    audit.min_stable_margin = all.stable_margin.value;
    audit.min_unstable_margin = all.unstable_margin.value;
    audit.min_stable_expansion = all.raw_stable_expansion;
    audit.min_unstable_expansion = all.raw_unstable_expansion;
    audit.evaluations = all.evaluations;
    return audit;
}

}  // namespace lozi
