#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "threshsim/system.hpp"

namespace threshsim {

// Orbit record. states[0] is the initial state and regimes[k] is the label
// produced by the step out of states[k], so regimes is one shorter than
// states -- except when the run was cut by the overflow guard, in which case
// the final label is kept but its resulting state is not.
struct Trace {
  std::vector<State> states;
  std::vector<Regime> regimes;
  std::vector<double> gap;  ///< gap[k] = states[k].a - states[k].c

  /// Index the first overflowed state would have occupied; when set, no
  /// states at or past this index are recorded.
  std::optional<std::size_t> overflow_at;

  std::size_t size() const { return states.size(); }
};

/// Regime-switch bookkeeping: t12 holds every index n with regimes[n] == One
/// and regimes[n+1] == Two, t21 the reverse; both sorted ascending.
struct TransitionSets {
  std::vector<std::size_t> t12;
  std::vector<std::size_t> t21;
  std::size_t regime1_count = 0;
  std::size_t regime2_count = 0;
};

/// Throws std::domain_error when the trace has fewer than 2 states.
TransitionSets transitions(const Trace& trace);

}  // namespace threshsim
