#include "threshsim/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace threshsim {

namespace {

template <class SystemAt>
Trace run_loop(SystemAt&& system_at, State init, std::size_t n_steps,
               const SimulateOptions& opts) {
  if (!init.finite()) throw std::invalid_argument("simulate: non-finite initial state");
  if (n_steps == 0) throw std::invalid_argument("simulate: n_steps must be >= 1");
  if (n_steps + 1 > opts.max_states) {
    throw std::invalid_argument("simulate: requested trace exceeds the max_states cap");
  }

  Trace trace;
  trace.states.reserve(n_steps + 1);
  trace.regimes.reserve(n_steps);
  trace.gap.reserve(n_steps + 1);

  auto record = [&trace](State s) {
    trace.states.push_back(s);
    trace.gap.push_back(s.a - s.c);
  };

  record(init);
  State current = init;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const StepResult r = step(system_at(k), current);
    trace.regimes.push_back(r.regime);
    const bool overflowed = !r.next.finite() ||
                            std::abs(r.next.a) > opts.overflow_guard ||
                            std::abs(r.next.c) > opts.overflow_guard;
    if (overflowed) {
      trace.overflow_at = trace.states.size();
      break;
    }
    record(r.next);
    current = r.next;
  }
  return trace;
}

}  // namespace

Trace simulate(const System& sys, State init, std::size_t n_steps,
               const SimulateOptions& opts) {
  return run_loop([&sys](std::size_t) -> const System& { return sys; }, init, n_steps,
                  opts);
}

Trace simulate(const std::function<System(std::size_t)>& system_at, State init,
               std::size_t n_steps, const SimulateOptions& opts) {
  return run_loop([&system_at](std::size_t k) { return system_at(k); }, init, n_steps,
                  opts);
}

}  // namespace threshsim
