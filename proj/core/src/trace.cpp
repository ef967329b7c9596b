#include "threshsim/trace.hpp"

#include <stdexcept>

namespace threshsim {

TransitionSets transitions(const Trace& trace) {
  if (trace.states.size() < 2) {
    throw std::domain_error("transitions: trace needs at least 2 states");
  }
  TransitionSets out;
  const auto& r = trace.regimes;
  for (Regime label : r) {
    (label == Regime::One ? out.regime1_count : out.regime2_count) += 1;
  }
  for (std::size_t n = 0; n + 1 < r.size(); ++n) {
    if (r[n] == r[n + 1]) continue;
    (r[n] == Regime::One ? out.t12 : out.t21).push_back(n);
  }
  return out;
}

}  // namespace threshsim
