#pragma once

#include <string>
#include <variant>

#include "geolab/ball_region.hpp"
#include "geolab/planar_region.hpp"

namespace geolab {

// Text forms used on the command line. Every parse failure throws
// Error(invalid_argument).

/// "re,im" or a bare real.
cd parse_complex_pair(const std::string& s);

/// A single complex literal: "0.5", "-0.2i", "0.3+0.2i", "1e-3-4e-2i".
cd parse_complex_literal(const std::string& s);

/// Comma-separated complex literals, one per coordinate: "0.3+0.2i,-0.1".
CVec parse_complex_vector(const std::string& s);
/// As above, and the point must lie in the open unit ball.
CVec parse_ball_point(const std::string& s);

using Region = std::variant<PlanarRegion, BallRegion>;

/// Whitespace-separated prefix language.
///
///   planar: disc | euclid <c> <r> | hyperball <c> <r> | horodisc <R> [<p>]
///           | annulus <r> | crescent <R_out> <R_in> | custom <name>
///   ball:   ball | kball <point> <r> | horosphere <R> | horodiff <R_out> <R_in>
///           | product <planar region> | custom-ball <name>
///
/// Planar centers use "re,im"; ball points use complex literals. Ball regions
/// take their dimension from `ball_dim` except kball, whose center fixes it.
/// "<name> custom" is accepted as a synonym of "custom <name>".
Region parse_region(const std::string& text, int ball_dim = 2);

/// The grammar above as --help text.
std::string region_grammar_help();

}  // namespace geolab
