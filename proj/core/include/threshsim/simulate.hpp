#pragma once

#include <cstddef>
#include <functional>

#include "threshsim/trace.hpp"

namespace threshsim {

struct SimulateOptions {
  /// Stop and mark the trace once |a| or |c| exceeds this (or goes
  /// non-finite).
  double overflow_guard = 1e300;
  /// Hard cap on stored states.
  std::size_t max_states = 10'000'000;
};

/// Iterates the system n_steps times from init, recording every state,
/// regime label and gap value. Terminates early with Trace::overflow_at set
/// when the guard trips. Throws std::invalid_argument on a non-finite init,
/// n_steps == 0, or a request past max_states.
Trace simulate(const System& sys, State init, std::size_t n_steps,
               const SimulateOptions& opts = {});

/// Same, but the system may change per step: step k uses system_at(k).
Trace simulate(const std::function<System(std::size_t)>& system_at, State init,
               std::size_t n_steps, const SimulateOptions& opts = {});

}  // namespace threshsim
