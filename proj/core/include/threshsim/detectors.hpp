#pragma once
// Finite-horizon verdicts about an orbit's long-run behavior. These are
// numerical proxies: a Converged verdict means both series settled to within
// tol over the final window, not a proof of a limit, and PersistentSwitching
// means switches were still happening in the measured tail.

#include <cstddef>
#include <optional>

#include "threshsim/trace.hpp"

namespace threshsim {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultWindow = 100;

enum class LimitKind { Converged, Diverged, Periodic, Undecided };

struct LimitVerdict {
  LimitKind kind = LimitKind::Undecided;
  std::optional<double> limit_a;      ///< final a, set when Converged
  std::optional<double> limit_c;      ///< final c, set when Converged
  std::optional<double> growth_rate;  ///< mean log |s_{n+1}/s_n|, set when Diverged
  std::optional<std::size_t> period;  ///< set when Periodic
};

/// Converged: both series vary by less than tol over the final `window`
/// states. Diverged: the overflow guard tripped, or |c| (then |a|) grows
/// monotonically over the window with positive mean log-ratio; growth is
/// never declared while the window's min |value| is <= 1. Periodic: a cycle
/// of length >= 2 found in the tail. Otherwise Undecided.
LimitVerdict detect_limit(const Trace& trace, double tol = kDefaultTol,
                          std::size_t window = kDefaultWindow);

enum class VisitationKind { EventuallyRegime1, EventuallyRegime2, PersistentSwitching };

struct VisitationVerdict {
  VisitationKind kind = VisitationKind::EventuallyRegime1;
  /// Last n with regimes[n] != regimes[n+1]; absent when the orbit never
  /// switched.
  std::optional<std::size_t> last_switch_index;
  double tail_liminf_gap = 0.0;  ///< min of gap over the tail window
  double tail_limsup_gap = 0.0;  ///< max of gap over the tail window
};

/// Examines the trailing tail_fraction of the trace. PersistentSwitching iff
/// at least one regime transition occurs inside that tail; otherwise the
/// verdict follows the final regime label. Requires >= 10 states.
VisitationVerdict visitation(const Trace& trace, double tail_fraction);

/// Max |a_n - c_n| over the final `window` states: a finite-horizon proxy for
/// the synchronization limit.
double sync_gap(const Trace& trace, std::size_t window);

const char* to_string(LimitKind k);
const char* to_string(VisitationKind k);

}  // namespace threshsim
