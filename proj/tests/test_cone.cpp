#include <doctest.h>

#include <cmath>

#include "lozi/cone.hpp"
#include "lozi/errors.hpp"
#include "lozi/rng.hpp"
#include "oracles.hpp"

using namespace lozi;

namespace {

TangentVector reflect(TangentVector v) { return {-v.eta, -v.xi}; }

}  // namespace

TEST_CASE("mu intervals") {
    const MuInterval i4 = mu_interval({4.0, 0.0}, 0);
    CHECK(i4.lo == doctest::Approx(2 - std::sqrt(3.0)));
    CHECK(i4.hi == doctest::Approx(2 + std::sqrt(3.0)));
    const MuInterval i2 = mu_interval({2.0, 0.0}, 0);
    CHECK_FALSE(i2.empty);
    CHECK(i2.lo == 1.0);
    CHECK(i2.hi == 1.0);
    CHECK(mu_interval({1.5, 0.0}, 0).empty);

    const MuInterval all = mu_interval_intersection({4.5, 0.1}, -50, 50);
    // Over a finite range inf a(n) sits just above 4.5, so the interval is slightly wider than its a = 4.5 limit.
    CHECK(all.lo == doctest::Approx(0.2344356).epsilon(1e-6));
    CHECK(all.hi == doctest::Approx(4.2655644).epsilon(1e-6));
    CHECK(all.lo <= oracle::small_root(4.5));
    CHECK(all.lo > oracle::small_root(4.5) - 1e-6);
    CHECK(all.hi >= (4.5 + std::sqrt(4.5 * 4.5 - 4)) / 2);
    // Every I_n contains the intersection and mu (a(n) - mu) >= 1 at its ends.
    for (long n = -50; n <= 50; ++n) {
        const MuInterval in = mu_interval({4.5, 0.1}, n);
        CHECK(in.lo <= all.lo);
        CHECK(in.hi >= all.hi);
        const double an = a_of({4.5, 0.1}, n);
        CHECK(all.lo * (an - all.lo) >= 1.0 - 1e-12);
    }
}

TEST_CASE("cone spec") {
    const ConeSpec s = make_cone_spec({4.5, 0.1});
    CHECK(s.mu_v == doctest::Approx(oracle::small_root(4.5)));
    CHECK(s.mu_h == s.mu_v);
    CHECK(s.mu == doctest::Approx(1 - s.mu_v * s.mu_h));
    CHECK(s.mu_v * s.mu_h < 1.0);
    for (long n = -50; n <= 50; ++n) CHECK(1.0 / (a_of({4.5, 0.1}, n) - s.mu_v) <= s.mu);
}

TEST_CASE("cone membership") {
    const ConeSpec s = make_cone_spec({4.0, 0.0});
    CHECK(stable_cone_contains(s, {0, 1}));
    CHECK_FALSE(stable_cone_contains(s, {1, 0}));
    CHECK(unstable_cone_contains(s, {1, 0}));
    CHECK_FALSE(unstable_cone_contains(s, {0, 1}));
    CHECK(stable_cone_contains(s, {0.26, 1}));
    CHECK_FALSE(stable_cone_contains(s, {0.27, 1}));
    CHECK(stable_cone_contains(s, {-0.26, -1}));
    CHECK_THROWS_AS(stable_cone_contains(s, {0, 0}), DomainError);
    CHECK_THROWS_AS(unstable_cone_contains(s, {0, 0}), DomainError);
    CHECK(stable_cone_margin(s, {0, 1}) > 0.0);
    CHECK(stable_cone_margin(s, {1, 0}) < 0.0);
}

TEST_CASE("push examples") {
    const MapParams p{4.0, 0.0};
    const double mu_v = 2 - std::sqrt(3.0);
    const TangentVector up = push_stable(p, 0, {0, 0.3}, {0, 1});
    CHECK(up.xi == -1.0);
    CHECK(up.eta == 4.0);
    CHECK(1.0 <= mu_v * 4.0);
    CHECK(4.0 >= 4.0 - mu_v);
    const TangentVector down = push_stable(p, 0, {0, -0.3}, {0, 1});
    CHECK(down.xi == -1.0);
    CHECK(down.eta == -4.0);
    CHECK_THROWS_AS(push_stable(p, 0, {0, 0.3}, {0, 0}), DomainError);
    CHECK_THROWS_AS(push_stable(p, 0, {0, 0.3}, {1, 0}), ConeMembershipError);
    CHECK_THROWS_AS(push_unstable(p, 0, {0.3, 0}, {0, 1}), ConeMembershipError);
    const TangentVector f = push_unstable(p, 0, {0.3, 0}, {1, 0});
    CHECK(f.xi == -4.0);
    CHECK(f.eta == -1.0);
}

TEST_CASE("push matches the Jacobians") {
    const MapParams p{4.5, 0.1};
    Rng rng(21);
    for (int k = 0; k < 1000; ++k) {
        const long n = static_cast<long>(rng.next() % 101) - 50;
        const Point z{rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45)};
        const double mu = default_mu(4.5);
        const TangentVector v{mu * rng.uniform(-1, 1), 1.0};
        const TangentVector w = push_stable(p, n, z, v);
        const TangentVector j = jacobian_inverse(p, n, z) * v;
        CHECK(w.xi == j.xi);
        CHECK(w.eta == j.eta);
    }
}

TEST_CASE("stable and unstable checks are dual under the reversor") {
    const MapParams p{4.5, 0.1};
    const ConeSpec s = make_cone_spec(p);
    Rng rng(22);
    for (int k = 0; k < 2000; ++k) {
        const long n = static_cast<long>(rng.next() % 101) - 50;
        const Point z{rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45)};
        if (z.x == 0.0 || z.y == 0.0) continue;
        const double sgn = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const TangentVector v{1.0, sgn * s.mu_h * rng.uniform()};
        const TangentVector fwd = push_unstable(p, n, z, v, s);
        const TangentVector bwd = push_stable(p, n, reverse(z), reflect(v), s);
        CHECK(bwd.xi == reflect(fwd).xi);
        CHECK(bwd.eta == reflect(fwd).eta);
        CHECK(unstable_cone_margin(s, fwd) == stable_cone_margin(s, bwd));
        CHECK((unstable_cone_margin(s, fwd) > 0.0) == (stable_cone_margin(s, bwd) > 0.0));
    }
}

TEST_CASE("expansion over several steps respects the product bound") {
    const MapParams p{4.5, 0.1};
    const ConeSpec s = make_cone_spec(p);
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const long n0 = static_cast<long>(rng.next() % 101) - 50;
        TangentVector v{(rng.uniform() < 0.5 ? -1 : 1) * s.mu_v, 1.0};
        const double eta0 = std::fabs(v.eta);
        double bound = 1.0;
        for (int k = 0; k < 8; ++k) {
            const long n = n0 - k;
            const Point z{rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45)};
            v = push_stable(p, n, z, v, s);
            bound *= a_of(p, n) - s.mu_v;
            CHECK(stable_cone_contains(s, v));
        }
        CHECK(std::fabs(v.eta) / eta0 >= bound * (1 - 1e-9));
    }
}

TEST_CASE("assumption 3 at a = 4.5, eps = 0.1") {
    const ConeAudit c = verify_A3({4.5, 0.1}, -50, 50, 2000, 7, 2);
    CHECK(c.report.passed());
    CHECK(c.min_stable_margin > 0.0);
    CHECK(c.min_unstable_margin > 0.0);
    CHECK(c.min_stable_expansion >= 4.5 - oracle::small_root(4.5) - 1e-9);
    CHECK(c.min_unstable_expansion >= 4.5 - oracle::small_root(4.5) - 1e-9);
    CHECK(c.evaluations > 0);
    for (const char* name : {"stable_inclusion", "unstable_inclusion", "mu_feasibility"}) {
        const CheckResult* r = c.report.find(name);
        REQUIRE(r != nullptr);
        CHECK(r->status == CheckStatus::pass);
    }
}

TEST_CASE("assumption 3 is deterministic and independent of worker count") {
    const ConeAudit a = verify_A3({4.5, 0.1}, -5, 5, 500, 3, 1);
    const ConeAudit b = verify_A3({4.5, 0.1}, -5, 5, 500, 3, 4);
    CHECK(a.min_stable_margin == b.min_stable_margin);
    CHECK(a.min_unstable_expansion == b.min_unstable_expansion);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("assumption 3 at the autonomous endpoint a = 4") {
    const ConeAudit c = verify_A3({4.0, 0.0}, 0, 0, 2000, 7);
    CHECK(c.report.passed());
    CHECK(c.min_stable_expansion >= 2 + std::sqrt(3.0) - 1e-9);
    // Boundary vectors map exactly onto the cone boundary in the autonomous case.
    CHECK(c.min_stable_margin > -1e-12);
}

TEST_CASE("assumption 3 below the threshold is not applicable") {
    const ConeAudit c = verify_A3({3.0, 0.0}, 0, 0, 10, 7);
    REQUIRE_FALSE(c.report.checks.empty());
    CHECK(c.report.checks[0].status == CheckStatus::not_applicable);
}
