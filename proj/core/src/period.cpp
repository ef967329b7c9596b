#include "threshsim/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace threshsim {

PeriodReport detect_period(const Trace& trace, std::size_t max_period, double tol) {
  PeriodReport report;
  report.residual = std::numeric_limits<double>::infinity();

  const std::size_t n = trace.size();
  const std::size_t p_max = std::min(max_period, n / 4);
  for (std::size_t p = 1; p <= p_max; ++p) {
    double worst = 0.0;
    for (std::size_t k = n - 2 * p; k + p < n; ++k) {
      const State& x = trace.states[k];
      const State& y = trace.states[k + p];
      worst = std::max(worst, std::max(std::abs(x.a - y.a), std::abs(x.c - y.c)));
    }
    report.residual = std::min(report.residual, worst);
    if (worst < tol) {
      report.residual = worst;
      if (p == 1) return report;  // settled fixed point, not a cycle
      report.period = p;
      report.cycle_points.emplace(trace.states.end() - static_cast<std::ptrdiff_t>(p),
                                  trace.states.end());
      return report;
    }
  }
  return report;
}

}  // namespace threshsim
