#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "threshsim/trace.hpp"

namespace threshsim {

struct PeriodReport {
  /// Smallest cycle length >= 2 found in the tail; period-1 matches (a
  /// settled fixed point) are filtered out and reported as no period.
  std::optional<std::size_t> period;
  std::optional<std::vector<State>> cycle_points;  ///< the final `period` states
  /// Max state distance between x_n and x_{n+p} over the checked span for the
  /// reported period; for a failed search, the best distance seen.
  double residual = 0.0;
};

/// Scans the trace tail for the smallest p <= max_period such that the
/// sup-norm distance between x_n and x_{n+p} stays below tol across the final
/// 2p steps. max_period is clamped to size/4 so the scan always has data.
PeriodReport detect_period(const Trace& trace, std::size_t max_period, double tol);

}  // namespace threshsim
