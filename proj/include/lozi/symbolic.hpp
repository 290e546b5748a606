#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lozi/map.hpp"
#include "lozi/polygon.hpp"

namespace lozi {

/// Finite word over {1, 2}. symbols[anchor] is the symbol at the anchor time (printed
/// right after the '.'); 1 labels V1 (x < 0), 2 labels V2 (x > 0).
struct SymbolSequence {
    std::vector<std::uint8_t> symbols;
    std::size_t anchor = 0;
    bool periodic = false;

    /// Throws DomainError if empty, a symbol is not 1/2, or anchor is out of bounds.
    void validate() const;
    /// Formats as e.g. "2 2 .2 2": space separated, '.' before the anchor symbol.
    std::string str() const;
    friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

/// Parses "1 2 .1 2", "12.12" or "1212" (anchor 0 when no '.').
SymbolSequence parse_symbols(std::string_view text);
/// A word like "12" -> {1, 2}.
std::vector<std::uint8_t> parse_word(std::string_view word);

/// Symbols of the orbit of z0 for steps -k_bwd..k_fwd; the anchor is step 0.
/// Throws EscapeError when a point leaves S, BoundaryAmbiguityError when x = 0.
SymbolSequence itinerary(const MapParams& params, Point z0, long n0, long k_fwd, long k_bwd);

/// Advances the anchor by one. Throws RangeError when the anchor is the last symbol.
SymbolSequence shift(const SymbolSequence& s);

/// Nested-strip refinement result: the intersection of the vertical strip selected by the
/// forward part of the word with the horizontal strip selected by the backward part.
struct ItineraryCell {
    Polygon cell;
    double diameter = 0.0;
    /// Width of the vertical strip after each pullback (anchor step last).
    std::vector<double> vertical_widths;
    /// Width of the horizontal strip after each pushforward (anchor time last).
    std::vector<double> horizontal_widths;
    /// Per-step contraction bound 1 / (a(t) - slope of the strip being pulled back).
    std::vector<double> vertical_rate_bounds;
    std::vector<double> horizontal_rate_bounds;
};

/// Builds the cell without a tolerance check. Requires a >= 4.
ItineraryCell refine_itinerary(const MapParams& params, const SymbolSequence& s, long n0);

/// Centroid of the refined cell; throws PrecisionError if its diameter is not below tol.
Point point_from_itinerary(const MapParams& params, const SymbolSequence& s, long n0, double tol);

/// Periodic point of the autonomous map whose itinerary is `word` repeated. The refined
/// centroid is polished by solving the affine fixed-point equation of L^|word| on the
/// branch fixed by the word. Throws UnsupportedError for epsilon != 0, BoundaryError if the
/// point is not strictly inside S, PrecisionError if the residual is not below tol.
Point periodic_point(const MapParams& params, const std::vector<std::uint8_t>& word, double tol);

}  // namespace lozi
