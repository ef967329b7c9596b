#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "threshsim/trace.hpp"

namespace threshsim {

/// Doubles rendered with 17 significant digits (lossless round-trip).
std::string format_double(double x);

/// Trace CSV: "# key: value" comment lines from `meta`, a mandatory header
/// row "step,a,c,regime,gap", then one row per state. The regime column holds
/// 1 or 2; the final state's regime is the label its comparison would
/// produce.
void write_trace_csv(std::ostream& os, const Trace& trace,
                     const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace threshsim
