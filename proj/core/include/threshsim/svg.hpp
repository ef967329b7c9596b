#pragma once

#include <string>

#include "threshsim/basin.hpp"
#include "threshsim/trace.hpp"

namespace threshsim {

/// Static SVG line chart of a_n and c_n versus n with regime-switch markers.
/// Presentation only; no timestamps, so output is byte-stable.
std::string orbit_svg(const Trace& trace, const std::string& title);

/// Static SVG heat map, one rect per cell, fill keyed by basin label from a
/// fixed palette.
std::string basin_svg(const BasinGrid& grid, const std::string& title);

}  // namespace threshsim
