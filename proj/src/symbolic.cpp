#include "lozi/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "lozi/errors.hpp"
#include "lozi/strips.hpp"

namespace lozi {

void SymbolSequence::validate() const {
    if (symbols.empty()) throw DomainError("symbol sequence is empty");
    if (anchor >= symbols.size()) throw DomainError("symbol sequence anchor out of bounds");
    for (auto s : symbols)
        if (s != 1 && s != 2) throw DomainError("symbols must be 1 or 2");
}

std::string SymbolSequence::str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (k) os << ' ';
        if (k == anchor) os << '.';
        os << static_cast<int>(symbols[k]);
    }
    return os.str();
}

SymbolSequence parse_symbols(std::string_view text) {
    SymbolSequence s;
    bool have_anchor = false;
    for (char c : text) {
        if (c == '.') {
            if (have_anchor) throw DomainError("symbol sequence has more than one anchor");
            have_anchor = true;
            s.anchor = s.symbols.size();
        } else if (c == '1' || c == '2') {
            s.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw DomainError(std::string("invalid symbol '") + c + "'");
        }
    }
    s.validate();
    return s;
}

std::vector<std::uint8_t> parse_word(std::string_view word) {
    SymbolSequence s = parse_symbols(word);
    if (s.anchor != 0) throw DomainError("a periodic word has no anchor");
    return s.symbols;
}

SymbolSequence itinerary(const MapParams& params, Point z0, long n0, long k_fwd, long k_bwd) {
    const Square S = domain_square_unchecked(params);
    const OrbitSegment orb = orbit(params, z0, n0, k_fwd, k_bwd);
    if (orb.escaped_backward) throw EscapeError("itinerary: orbit escaped", *orb.escaped_backward);
    if (orb.escaped_forward) throw EscapeError("itinerary: orbit escaped", *orb.escaped_forward);

    // Report the event (leaving S, or x = 0) closest to the anchor.
    for (long d = 0; d <= std::max(orb.last_step(), -orb.first_step()); ++d) {
        for (long k : {-d, d}) {
            if (k < orb.first_step() || k > orb.last_step()) continue;
            const Point z = orb.at(k);
            if (!S.contains(z)) throw EscapeError("itinerary: orbit leaves S", k);
            if (z.x == 0.0) throw BoundaryAmbiguityError("itinerary: x = 0 has no symbol", k);
        }
    }

    SymbolSequence s;
    s.anchor = orb.anchor;
    for (long k = orb.first_step(); k <= orb.last_step(); ++k) s.symbols.push_back(orb.at(k).x < 0.0 ? 1 : 2);
    return s;
}

SymbolSequence shift(const SymbolSequence& s) {
    s.validate();
    if (s.anchor + 1 >= s.symbols.size()) throw RangeError("shift: anchor already at the last symbol");
    SymbolSequence r = s;
    ++r.anchor;
    return r;
}

namespace {

constexpr double kWidthFloor = 1e-13;

}  // namespace

ItineraryCell refine_itinerary(const MapParams& params, const SymbolSequence& s, long n0) {
    s.validate();
    if (!(params.a >= 4.0)) throw ParameterError("refine_itinerary: requires a >= 4");
    const Square S = domain_square_unchecked(params);
    const Polygon square = S.polygon();
    ItineraryCell out;

    // Each step shrinks a strip by at least 1/a_max, so beyond `depth` steps the width would
    // fall under kWidthFloor and the clipped polygons degenerate; farther symbols are dropped.
    const double a_max = params.a + 2.0 * params.epsilon;
    const long depth = static_cast<long>(std::floor(std::log(2.0 * S.R / a_max / kWidthFloor) / std::log(a_max)));

    // Forward part: symbols[anchor + k] at time n0 + k. Pull S back from the end of the word.
    const long last = std::min(static_cast<long>(s.symbols.size() - 1 - s.anchor), depth);
    Strip vertical;
    for (long k = last; k >= 0; --k) {
        const long t = n0 + k;
        const StripFamily fam = build_strips_unchecked(params, t, S);
        const int sym = s.symbols[s.anchor + static_cast<std::size_t>(k)];
        if (k == last) {
            vertical = fam.V(sym);
        } else {
            out.vertical_rate_bounds.push_back(1.0 / (fam.a_n - vertical.max_abs_slope()));
            vertical = pullback_strip(params, t, vertical, fam, sym);
        }
        if (vertical.empty) throw PrecisionError("refine_itinerary: vertical strip became empty");
        out.vertical_widths.push_back(strip_width(vertical));
    }

    // Backward part: symbols[anchor - m] at time n0 - m; push S forward to the anchor time.
    Strip horizontal;
    bool have_horizontal = false;
    for (long m = std::min(static_cast<long>(s.anchor), depth + 1); m >= 1; --m) {
        const long t = n0 - m;
        const StripFamily fam = build_strips_unchecked(params, t, S);
        const int sym = s.symbols[s.anchor - static_cast<std::size_t>(m)];
        if (!have_horizontal) {
            horizontal = fam.H(sym);
            have_horizontal = true;
        } else {
            out.horizontal_rate_bounds.push_back(1.0 / (fam.a_n - horizontal.max_abs_slope()));
            horizontal = pushforward_strip(params, t, horizontal, fam, sym);
        }
        if (horizontal.empty) throw PrecisionError("refine_itinerary: horizontal strip became empty");
        out.horizontal_widths.push_back(strip_width(horizontal));
    }

    out.cell = vertical.polygon().clip(have_horizontal ? horizontal.polygon() : square);
    out.diameter = out.cell.diameter();
    return out;
}

Point point_from_itinerary(const MapParams& params, const SymbolSequence& s, long n0, double tol) {
    const ItineraryCell cell = refine_itinerary(params, s, n0);
    if (cell.cell.size() == 0) throw PrecisionError("point_from_itinerary: empty cell");
    if (!(cell.diameter < tol))
        throw PrecisionError("point_from_itinerary: cell diameter " + std::to_string(cell.diameter) +
                             " not below tolerance; use a longer word");
    return cell.cell.vertex_mean();
}

namespace {

// Solves z = L^p(z) on the affine branch selected by `word` (sign of x at each step).
Point affine_periodic_solution(double a, const std::vector<std::uint8_t>& word) {
    // Compose z -> M z + c; each step is (x, y) -> (1 + y - a sigma x, -x).
    Mat2 M{{{{1.0, 0.0}, {0.0, 1.0}}}};
    double cx = 0.0, cy = 0.0;
    for (auto sym : word) {
        const double sigma = sym == 1 ? -1.0 : 1.0;
        const Mat2 step{{{{-a * sigma, 1.0}, {-1.0, 0.0}}}};
        const double ncx = 1.0 + cy - a * sigma * cx;
        const double ncy = -cx;
        M = step * M;
        cx = ncx;
        cy = ncy;
    }
    // (I - M) z = c
    const double m00 = 1.0 - M(0, 0), m01 = -M(0, 1), m10 = -M(1, 0), m11 = 1.0 - M(1, 1);
    const double det = m00 * m11 - m01 * m10;
    if (det == 0.0) throw PrecisionError("periodic_point: singular branch system");
    return {(cx * m11 - m01 * cy) / det, (m00 * cy - m10 * cx) / det};
}

}  // namespace

Point periodic_point(const MapParams& params, const std::vector<std::uint8_t>& word, double tol) {
    if (!params.autonomous()) throw UnsupportedError("periodic_point: nonautonomous periodic orbits are not defined");
    if (word.empty()) throw DomainError("periodic_point: empty word");
    if (!(tol > 0.0)) throw DomainError("periodic_point: tolerance must be positive");
    const Square S = domain_square_unchecked(params);
    const std::size_t p = word.size();

    // Enough repetitions on each side that the cell is far below tol.
    const double rate = nu_v(params.a) * 1.05;
    const double target = std::min(tol, 1e-6) * 1e-3;
    const std::size_t per_side = static_cast<std::size_t>(std::ceil(std::log(target) / std::log(rate))) + p;
    const std::size_t reps = std::max<std::size_t>(2, (per_side + p - 1) / p);

    SymbolSequence s;
    s.periodic = true;
    for (std::size_t r = 0; r < 2 * reps; ++r) s.symbols.insert(s.symbols.end(), word.begin(), word.end());
    s.anchor = reps * p;

    const Point seed = point_from_itinerary(params, s, 0, tol);
    Point z = affine_periodic_solution(params.a, word);
    // The cell contains the true periodic point; the polished point must agree with it.
    if (std::hypot(z.x - seed.x, z.y - seed.y) > std::max(tol, 1e-9))
        throw PrecisionError("periodic_point: branch solution disagrees with the refined cell");

    if (!S.strictly_contains(z)) throw BoundaryError("periodic_point: point lies on the boundary of S");
    Point w = z;
    for (std::size_t k = 0; k < p; ++k) {
        if (!S.strictly_contains(w)) throw BoundaryError("periodic_point: orbit touches the boundary of S");
        if ((w.x < 0.0 ? 1 : 2) != word[k] || w.x == 0.0)
            throw PrecisionError("periodic_point: itinerary does not match the word");
        w = forward(params, 0, w);
    }
    const double residual = std::max(std::fabs(w.x - z.x), std::fabs(w.y - z.y));
    if (!(residual < tol)) throw PrecisionError("periodic_point: residual above tolerance");
    return z;
}

}  // namespace lozi
