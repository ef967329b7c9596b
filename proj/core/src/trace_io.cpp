#include "threshsim/trace_io.hpp"

#include <cstdio>
#include <ostream>

namespace threshsim {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const Trace& trace,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << "\n";
  if (trace.overflow_at) os << "# overflow_at: " << *trace.overflow_at << "\n";
  os << "step,a,c,regime,gap\n";
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    const Regime r =
        k < trace.regimes.size() ? trace.regimes[k] : regime_of(trace.states[k]);
    os << k << ',' << format_double(trace.states[k].a) << ','
       << format_double(trace.states[k].c) << ',' << static_cast<int>(r) << ','
       << format_double(trace.gap[k]) << '\n';
  }
}

}  // namespace threshsim
