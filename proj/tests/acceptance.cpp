// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lozi/cone.hpp"
#include "lozi/dld.hpp"
#include "lozi/map.hpp"
#include "lozi/parallel.hpp"
#include "lozi/rng.hpp"
#include "lozi/strips.hpp"
#include "lozi/symbolic.hpp"
#include "oracles.hpp"

using namespace lozi;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (!detail.empty()) detail += "; ";
        detail += (cond ? "" : "VIOLATED ") + what;
    }
};

std::string num(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0) o.require(dt < time_limit_s, "runtime " + num("%.3f", dt) + " s < " + num("%g", time_limit_s) + " s");
    if (!o.ok) ++failures;
    std::printf("%s [%d] %s: %s\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
}

double dist_inf(Point p, Point q) { return std::max(std::fabs(p.x - q.x), std::fabs(p.y - q.y)); }

std::vector<std::vector<std::uint8_t>> words_up_to(std::size_t max_len) {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::size_t len = 1; len <= max_len; ++len)
        for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
            std::vector<std::uint8_t> w;
            for (std::size_t k = 0; k < len; ++k) w.push_back(((bits >> k) & 1u) ? 2 : 1);
            out.push_back(w);
        }
    return out;
}

}  // namespace

int main() {
    criterion(1, "inverse and area identities", 1.0, [] {
        Outcome o;
        const MapParams p{4.5, 0.1};
        Rng rng(2024);
        double inv = 0.0, det = 0.0;
        for (int k = 0; k < 100000; ++k) {
            const long n = static_cast<long>(rng.next() % 201) - 100;
            const Point z{rng.uniform(-10, 10), rng.uniform(-10, 10)};
            inv = std::max(inv, dist_inf(inverse(p, n, forward(p, n, z)), z));
            inv = std::max(inv, dist_inf(forward(p, n, inverse(p, n, z)), z));
            det = std::max(det, std::fabs(jacobian_forward(p, n, z).det() - 1.0));
        }
        o.require(inv < 1e-12, "max |L^-1 L z - z| = " + num("%.3g", inv) + " < 1e-12");
        o.require(det <= 1e-15, "max |det DL - 1| = " + num("%.3g", det) + " <= 1e-15");
        return o;
    });

    criterion(2, "domain formulas", 0.0, [] {
        Outcome o;
        o.require(domain_R(4.5) == 0.45, "R(4.5) = " + num("%.17g", domain_R(4.5)));
        for (double a : {4.01, 4.5, 5.0, 6.0, 10.0}) {
            const double R = domain_R(a);
            const bool ok = std::fabs(R - a / (4.0 * (a - 2.0))) <= 1e-15 && 1.0 / (a - 2.0) <= R && R <= 0.5;
            o.require(ok, "a=" + num("%g", a) + ": 1/(a-2)=" + num("%.6f", 1.0 / (a - 2.0)) + " <= R=" +
                              num("%.6f", R) + " <= 1/2");
        }
        return o;
    });

    criterion(3, "contraction audit", 5.0, [] {
        Outcome o;
        for (double a : {4.1, 4.5, 6.0, 4.0}) {
            const ContractionAudit c = contraction_audit(a, 100, 7);
            const double bound = a / (a * a - 1.0);
            o.require(c.strips == 100 && c.max_ratio <= bound + 1e-12,
                      "a=" + num("%g", a) + ": max ratio " + num("%.9f", c.max_ratio) + " <= " + num("%.9f", bound));
        }
        o.require(std::fabs(nu_v(4.0) - 4.0 / 15.0) < 1e-15, "nu(4) = " + num("%.6f", nu_v(4.0)));
        return o;
    });

    criterion(4, "transition matrix all ones", 5.0, [] {
        Outcome o;
        long bad = 0;
        double min_area = 1.0;
        for (long n = -100; n <= 100; ++n) {
            const TransitionMatrix t = transition_matrix({4.5, 0.1}, n);
            if (!t.all_ones()) ++bad;
            for (const auto& row : t.overlap_area)
                for (double v : row) min_area = std::min(min_area, v);
        }
        o.require(bad == 0, std::to_string(201 - bad) + "/201 matrices all ones, min overlap area " +
                                num("%.4g", min_area));
        return o;
    });

    criterion(5, "cone condition", 30.0, [] {
        Outcome o;
        const ConeAudit c = verify_A3({4.5, 0.1}, -50, 50, 10000, 7, default_workers());
        const double mu_v = (4.5 - std::sqrt(4.5 * 4.5 - 4.0)) / 2.0;
        const double need = 4.5 - mu_v - 1e-9;
        o.require(c.min_stable_margin > 0.0, "stable inclusion margin " + num("%.3g", c.min_stable_margin) + " > 0");
        o.require(c.min_unstable_margin > 0.0,
                  "unstable inclusion margin " + num("%.3g", c.min_unstable_margin) + " > 0");
        o.require(c.min_stable_expansion >= need,
                  "stable expansion " + num("%.9f", c.min_stable_expansion) + " >= " + num("%.9f", need));
        o.require(c.min_unstable_expansion >= need,
                  "unstable expansion " + num("%.9f", c.min_unstable_expansion) + " >= " + num("%.9f", need));
        o.require(c.report.passed(), std::to_string(c.evaluations) + " vector evaluations, report " +
                                         (c.report.passed() ? "pass" : "fail"));
        return o;
    });

    criterion(6, "symbolic round trip", 10.0, [] {
        Outcome o;
        // Oracles first: closed forms substituted back into the map.
        {
            const auto [fx, fy] = oracle::fixed_point_positive(4.0);
            const auto [gx, gy] = oracle::lozi(4.0, fx, fy);
            const auto [x0, y0] = oracle::period_two(4.0);
            const auto [x1, y1] = oracle::lozi(4.0, x0, y0);
            const auto [x2, y2] = oracle::lozi(4.0, x1, y1);
            o.require(std::fabs(gx - fx) < 1e-15 && std::fabs(gy - fy) < 1e-15 && std::fabs(x2 - x0) < 1e-15 &&
                          std::fabs(y2 - y0) < 1e-15,
                      "oracles self-consistent");
        }
        const MapParams p{4.5, 0.0};
        std::size_t good = 0, total = 0;
        double worst = 0.0;
        for (const auto& w : words_up_to(6)) {
            ++total;
            const Point z = periodic_point(p, w, 1e-8);
            Point y = z;
            for (std::size_t k = 0; k < w.size(); ++k) y = forward(p, 0, y);
            const double res = dist_inf(y, z);
            worst = std::max(worst, res);
            const SymbolSequence it = itinerary(p, z, 0, static_cast<long>(w.size()) - 1, 0);
            bool match = it.symbols.size() == w.size();
            for (std::size_t k = 0; match && k < w.size(); ++k) match = it.symbols[k] == w[k];
            if (res < 1e-8 && match) ++good;
        }
        o.require(good == total, std::to_string(good) + "/" + std::to_string(total) +
                                     " words at a=4.5 match, max residual " + num("%.3g", worst));
        const Point f = periodic_point({4.0, 0.0}, {2}, 1e-8);
        const auto [fx, fy] = oracle::fixed_point_positive(4.0);
        o.require(dist_inf(f, {fx, fy}) < 1e-8, "\"2\" at a=4 -> (" + num("%.12g", f.x) + ", " + num("%.12g", f.y) + ")");
        const Point q = periodic_point({4.0, 0.0}, {1, 2}, 1e-8);
        const auto [qx, qy] = oracle::period_two(4.0);
        o.require(dist_inf(q, {qx, qy}) < 1e-8, "\"12\" at a=4 -> (" + num("%.12g", q.x) + ", " + num("%.12g", q.y) + ")");
        return o;
    });

    criterion(7, "descriptor properties", 60.0, [] {
        Outcome o;
        const MapParams p{4.5, 0.0};
        const Point fp = fixed_points(p)[0];
        const double at_fp = md_p_at(p, fp, {0.25, 20, 0});
        o.require(std::fabs(at_fp) <= 1e-12, "MD at fixed point (" + num("%.9g", fp.x) + ", " + num("%.9g", fp.y) +
                                                 ") = " + num("%.3g", at_fp));
        const GridSpec g = GridSpec::square(domain_R(4.5), 0.01);
        const ScalarField one = dld_field(p, g, {0.25, 20, 0}, 1);
        const ScalarField eight = dld_field(p, g, {0.25, 20, 0}, 8);
        double worst = 0.0;
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const std::size_t mi = g.ny - 1 - j, mj = g.nx - 1 - i;
                if (one.is_escaped(i, j) || one.is_escaped(mi, mj)) continue;
                worst = std::max(worst, std::fabs(one.value(i, j) - one.value(mi, mj)));
            }
        o.require(worst <= 1e-9, "reversor asymmetry " + num("%.3g", worst) + " on " + std::to_string(g.nx) + "x" +
                                     std::to_string(g.ny) + " grid");
        o.require(one.values == eight.values && one.escaped == eight.escaped, "1 vs 8 workers bit-identical");
        return o;
    });

    criterion(8, "saddle containment", 0.0, [] {
        Outcome o;
        const MapParams p{4.5, 0.0};
        const GridSpec g = GridSpec::square(domain_R(4.5), 0.01);
        const ContainmentResult r = saddle_containment(p, g, 10, 0.01);
        o.require(r.report.passed() && r.outside == 0,
                  "|k|<=10: " + std::to_string(r.survivors) + " survivors, " + std::to_string(r.outside) + " outside");
        for (long steps : {1L, 2L, 3L}) {
            const ContainmentResult s = saddle_containment(p, g, steps, 0.01);
            o.require(s.report.passed() && s.outside == 0 && s.survivors > 0,
                      "|k|<=" + std::to_string(steps) + ": " + std::to_string(s.survivors) + " survivors, " +
                          std::to_string(s.outside) + " outside");
        }
        const ContainmentResult low = saddle_containment({3.0, 0.0}, GridSpec::square(0.75, 0.01), 10, 0.01);
        const bool na = low.report.checks.size() == 1 && low.report.checks[0].status == CheckStatus::not_applicable;
        o.require(na, "a=3 reported not applicable");
        return o;
    });

    criterion(9, "nonautonomous field run", 600.0, [] {
        Outcome o;
        const MapParams p{4.5, 0.1};
        const Square S = domain_square(p);
        const GridSpec g = GridSpec::square(S.R, 0.005);
        for (long n0 : {-3L, -1L, 1L, 3L}) {
            const ScalarField f = dld_field(p, g, {0.25, 100, n0}, 1);
            const StripFamily fam = build_strips(p, n0, S);
            const Polygon v1 = fam.V1.polygon(), v2 = fam.V2.polygon();
            std::size_t cells = 0, escaped = 0;
            for (std::size_t j = 0; j < g.ny; ++j)
                for (std::size_t i = 0; i < g.nx; ++i) {
                    const Point z{g.x(i), g.y(j)};
                    if (v1.convex_inside_margin(z) < 0.0 && v2.convex_inside_margin(z) < 0.0) continue;
                    ++cells;
                    escaped += f.is_escaped(i, j);
                }
            const double frac = cells ? static_cast<double>(escaped) / static_cast<double>(cells) : 1.0;
            o.require(cells > 0 && frac < 0.05, "n0=" + std::to_string(n0) + ": " + num("%.2f", 100 * frac) +
                                                    "% escaped of " + std::to_string(cells) + " cells");
        }
        return o;
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
