#include "lozi/dld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>

#include "lozi/errors.hpp"
#include "lozi/parallel.hpp"
#include "lozi/strips.hpp"

namespace lozi {

void DLDParams::validate() const {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("DLD exponent p must lie in (0, 1]");
    if (N < 1) throw DomainError("DLD half-length N must be >= 1");
}

void GridSpec::validate() const {
    if (nx == 0 || ny == 0) throw DomainError("grid needs at least one node per axis");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
        throw DomainError("grid bounds must be finite");
    if ((nx > 1 && !(x_min < x_max)) || (ny > 1 && !(y_min < y_max)) || x_min > x_max || y_min > y_max)
        throw DomainError("grid bounds must satisfy min < max");
}

namespace {

double node(double lo, double hi, std::size_t i, std::size_t n) {
    if (n == 1) return lo;
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double m = static_cast<double>(n - 1);
    return center + half * ((2.0 * static_cast<double>(i) - m) / m);
}

std::size_t count_for(double lo, double hi, double spacing) {
    if (!(spacing > 0.0)) throw DomainError("grid spacing must be positive");
    return static_cast<std::size_t>(std::llround((hi - lo) / spacing)) + 1;
}

}  // namespace

double GridSpec::x(std::size_t i) const { return node(x_min, x_max, i, nx); }
double GridSpec::y(std::size_t j) const { return node(y_min, y_max, j, ny); }

GridSpec GridSpec::from_spacing(double x_min, double x_max, double y_min, double y_max, double spacing) {
    GridSpec g{x_min, x_max, y_min, y_max, count_for(x_min, x_max, spacing), count_for(y_min, y_max, spacing)};
    g.validate();
    return g;
}

GridSpec GridSpec::square(double R, double spacing) { return from_spacing(-R, R, -R, R, spacing); }

std::size_t ScalarField::escaped_count() const {
    return static_cast<std::size_t>(std::count(escaped.begin(), escaped.end(), std::uint8_t{1}));
}

double md_p(const OrbitSegment& orbit, double p) {
    if (orbit.points.size() < 2) throw DomainError("md_p: orbit needs at least two points");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("md_p: p must lie in (0, 1]");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const Point& a = orbit.points[k];
        const Point& b = orbit.points[k + 1];
        sum += std::pow(std::fabs(b.x - a.x), p);
        sum += std::pow(std::fabs(b.y - a.y), p);
    }
    return sum;
}

double md_p_at(const MapParams& params, Point z, const DLDParams& dld, bool* escaped) {
    const OrbitSegment orb = orbit(params, z, dld.n0, dld.N, dld.N);
    if (escaped) *escaped = orb.escaped();
    return orb.points.size() < 2 ? 0.0 : md_p(orb, dld.p);
}

ScalarField dld_field(const MapParams& params, const GridSpec& grid, const DLDParams& dld, unsigned workers) {
    validate(params);
    grid.validate();
    dld.validate();
    ScalarField f;
    f.grid = grid;
    f.values.assign(grid.size(), 0.0);
    f.escaped.assign(grid.size(), 0);
    // Rows are independent; each worker writes a disjoint block of rows.
    parallel_for(grid.ny, workers, [&](std::size_t j) {
        const double y = grid.y(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            bool esc = false;
            const std::size_t idx = j * grid.nx + i;
            f.values[idx] = md_p_at(params, {grid.x(i), y}, dld, &esc);
            f.escaped[idx] = esc ? 1 : 0;
        }
    });
    return f;
}

std::vector<std::uint8_t> field_minima_mask(const ScalarField& field, double quantile) {
    if (!(quantile > 0.0 && quantile < 1.0)) throw DomainError("field_minima_mask: quantile must lie in (0, 1)");
    std::vector<std::uint8_t> mask(field.values.size(), 0);
    std::vector<double> live;
    for (std::size_t k = 0; k < field.values.size(); ++k)
        if (!field.escaped[k]) live.push_back(field.values[k]);
    if (live.empty()) return mask;
    std::sort(live.begin(), live.end());
    const auto rank = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(live.size())));
    const double threshold = live[std::clamp<std::size_t>(rank, 1, live.size()) - 1];
    for (std::size_t k = 0; k < field.values.size(); ++k)
        if (!field.escaped[k] && field.values[k] <= threshold) mask[k] = 1;
    return mask;
}

void write_csv(std::ostream& out, const ScalarField& field) {
    out << "x,y,md,escaped\n";
    char buf[128];
    for (std::size_t j = 0; j < field.grid.ny; ++j)
        for (std::size_t i = 0; i < field.grid.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%d\n", field.grid.x(i), field.grid.y(j), field.value(i, j),
                          field.is_escaped(i, j) ? 1 : 0);
            out << buf;
        }
}

PgmNormalization write_pgm(std::ostream& out, const ScalarField& field) {
    PgmNormalization norm{0.0, 0.0};
    bool any = false;
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        if (field.escaped[k]) continue;
        const double v = field.values[k];
        norm.min = any ? std::min(norm.min, v) : v;
        norm.max = any ? std::max(norm.max, v) : v;
        any = true;
    }
    out << "P5\n" << field.grid.nx << ' ' << field.grid.ny << "\n65535\n";
    const double span = norm.max - norm.min;
    for (std::size_t r = 0; r < field.grid.ny; ++r) {
        const std::size_t j = field.grid.ny - 1 - r;
        for (std::size_t i = 0; i < field.grid.nx; ++i) {
            unsigned level = 0;
            if (!field.is_escaped(i, j) && span > 0.0)
                level = static_cast<unsigned>(std::lround((field.value(i, j) - norm.min) / span * 65535.0));
            out.put(static_cast<char>((level >> 8) & 0xff));
            out.put(static_cast<char>(level & 0xff));
        }
    }
    return norm;
}

void write_pgm_sidecar(std::ostream& out, const ScalarField& field, const PgmNormalization& norm) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "min=%.17g\nmax=%.17g\nnx=%zu\nny=%zu\nx_min=%.17g\nx_max=%.17g\ny_min=%.17g\ny_max=%.17g\n"
                  "escaped=%zu\n",
                  norm.min, norm.max, field.grid.nx, field.grid.ny, field.grid.x_min, field.grid.x_max,
                  field.grid.y_min, field.grid.y_max, field.escaped_count());
    out << buf;
}

ContainmentResult saddle_containment(const MapParams& params, const GridSpec& grid, long steps, double tolerance) {
    ContainmentResult res;
    res.report.section = "saddle_containment";
    if (!(params.a > 4.0) || !params.autonomous()) {
        CheckResult c;
        c.name = "gate";
        c.status = CheckStatus::not_applicable;
        c.margin = params.a - 4.0;
        c.note = params.autonomous() ? "requires_a_gt_4" : "autonomous_only";
        res.report.add(c);
        return res;
    }
    grid.validate();
    const Square S = domain_square(params);
    const StripFamily fam = build_strips(params, 0, S);
    const Polygon V1 = fam.V1.polygon(), V2 = fam.V2.polygon();
    const Polygon H1 = fam.H1.polygon(), H2 = fam.H2.polygon();

    double worst = std::numeric_limits<double>::infinity();
    std::optional<Point> witness;
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const Point z{grid.x(i), grid.y(j)};
            const OrbitSegment orb = orbit(params, z, 0, steps, steps);
            if (orb.escaped()) continue;
            bool inside = true;
            for (const Point& p : orb.points) inside = inside && S.contains(p);
            if (!inside) continue;
            ++res.survivors;
            const double mv = std::max(V1.convex_inside_margin(z), V2.convex_inside_margin(z));
            const double mh = std::max(H1.convex_inside_margin(z), H2.convex_inside_margin(z));
            const double m = std::min(mv, mh) + tolerance;
            if (m < 0.0) ++res.outside;
            if (m < worst) worst = m, witness = z;
        }
    CheckResult c = margin_check("inside_strips", res.survivors ? worst : tolerance);
    c.witness_point = witness;
    c.note = "survivors_" + std::to_string(res.survivors);
    res.report.add(c);
    return res;
}

}  // namespace lozi
