#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lozi/map.hpp"
#include "lozi/report.hpp"

namespace lozi {

struct DLDParams {
    double p = 0.25;
    long N = 20;
    long n0 = 0;

    /// Throws DomainError unless 0 < p <= 1 and N >= 1.
    void validate() const;
};

/// Inclusive-endpoint grid. Node (i, j) sits at (x(i), y(j)).
struct GridSpec {
    double x_min = -0.5, x_max = 0.5;
    double y_min = -0.5, y_max = 0.5;
    std::size_t nx = 2, ny = 2;

    void validate() const;
    /// Evaluated as center + half_width * (2i - (n - 1)) / (n - 1), so grids symmetric about
    /// the origin are exactly symmetric in floating point.
    double x(std::size_t i) const;
    double y(std::size_t j) const;
    std::size_t size() const { return nx * ny; }

    /// nx = round((x_max - x_min) / spacing) + 1, likewise ny.
    static GridSpec from_spacing(double x_min, double x_max, double y_min, double y_max, double spacing);
    /// Square window [-R, R]^2.
    static GridSpec square(double R, double spacing);
};

/// Row-major field: index j * nx + i (rows are constant y).
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;
    std::vector<std::uint8_t> escaped;

    double value(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
    bool is_escaped(std::size_t i, std::size_t j) const { return escaped[j * grid.nx + i] != 0; }
    std::size_t escaped_count() const;
};

/// sum_{k} |x_{k+1} - x_k|^p + |y_{k+1} - y_k|^p over consecutive orbit points, earliest first,
/// x-term then y-term. An escaped (truncated) orbit gives the sum over what was kept.
double md_p(const OrbitSegment& orbit, double p);

/// MD_p of the orbit of z over steps -N..N from time n0.
double md_p_at(const MapParams& params, Point z, const DLDParams& dld, bool* escaped = nullptr);

/// Evaluates the descriptor on every grid node. Bit-identical for any worker count.
ScalarField dld_field(const MapParams& params, const GridSpec& grid, const DLDParams& dld, unsigned workers = 1);

/// Marks non-escaped cells whose value is <= the `quantile` empirical quantile (ties inclusive).
/// Throws DomainError unless 0 < quantile < 1. An all-escaped field yields an all-false mask.
std::vector<std::uint8_t> field_minima_mask(const ScalarField& field, double quantile);

/// CSV with header `x,y,md,escaped`, row-major, 9 significant digits.
void write_csv(std::ostream& out, const ScalarField& field);

struct PgmNormalization {
    double min = 0.0;
    double max = 0.0;
};

/// Binary P5, 16-bit big-endian, top row = y_max. Values are min-max normalized over the
/// non-escaped cells; escaped cells are written as 0.
PgmNormalization write_pgm(std::ostream& out, const ScalarField& field);
/// Sidecar text with the normalization bounds and grid.
void write_pgm_sidecar(std::ostream& out, const ScalarField& field, const PgmNormalization& norm);

struct ContainmentResult {
    Report report;
    std::size_t survivors = 0;
    std::size_t outside = 0;
};

/// Grid nodes whose orbits stay in S for every |k| <= steps must lie in V1 ∪ V2 and in
/// H1 ∪ H2 up to `tolerance` (typically one grid spacing). Autonomous only; a <= 4 is
/// reported not_applicable.
ContainmentResult saddle_containment(const MapParams& params, const GridSpec& grid, long steps, double tolerance);

}  // namespace lozi
