#include "threshsim/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "threshsim/period.hpp"

namespace threshsim {

namespace {

constexpr double kPeriodTol = 1e-6;

struct SeriesView {
  const Trace& trace;
  bool use_a;
  double operator[](std::size_t k) const {
    return use_a ? trace.states[k].a : trace.states[k].c;
  }
};

bool varies_less_than(const SeriesView& s, std::size_t begin, std::size_t end,
                      double tol) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = begin; k < end; ++k) {
    lo = std::min(lo, s[k]);
    hi = std::max(hi, s[k]);
  }
  return hi - lo < tol;
}

// Mean log |s_{k+1}/s_k| over [begin, end), accepted only when |s| stays
// above 1 (log of near-zero values is noise, never divergence evidence) and
// grows monotonically.
std::optional<double> monotone_growth_rate(const SeriesView& s, std::size_t begin,
                                           std::size_t end) {
  if (end - begin < 2) return std::nullopt;
  double prev = std::abs(s[begin]);
  if (prev <= 1.0) return std::nullopt;
  for (std::size_t k = begin + 1; k < end; ++k) {
    const double cur = std::abs(s[k]);
    if (cur <= 1.0 || cur < prev) return std::nullopt;
    prev = cur;
  }
  const double rate =
      (std::log(std::abs(s[end - 1])) - std::log(std::abs(s[begin]))) /
      static_cast<double>(end - begin - 1);
  if (!(rate > 0.0)) return std::nullopt;
  return rate;
}

// Best-effort rate for a guard-tripped trace: the monotone fit if it holds,
// else the last recorded ratio of the faster-growing series, else +inf.
double overflow_growth_rate(const Trace& trace, std::size_t window) {
  const std::size_t n = trace.size();
  const std::size_t begin = n > window ? n - window : 0;
  const SeriesView a{trace, true};
  const SeriesView c{trace, false};
  const bool c_leads = n == 0 || std::abs(c[n - 1]) >= std::abs(a[n - 1]);
  const SeriesView& lead = c_leads ? c : a;
  if (auto rate = monotone_growth_rate(lead, begin, n)) return *rate;
  if (n >= 2) {
    const double last = std::abs(lead[n - 1]);
    const double prev = std::abs(lead[n - 2]);
    if (last > 0.0 && prev > 0.0) return std::log(last / prev);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

LimitVerdict detect_limit(const Trace& trace, double tol, std::size_t window) {
  if (!(tol > 0.0)) throw std::invalid_argument("detect_limit: tol must be positive");
  const std::size_t n = trace.size();
  if (window == 0 || window > n) {
    throw std::invalid_argument("detect_limit: window must be in [1, trace size]");
  }

  LimitVerdict verdict;
  if (trace.overflow_at) {
    verdict.kind = LimitKind::Diverged;
    verdict.growth_rate = overflow_growth_rate(trace, window);
    return verdict;
  }

  const std::size_t begin = n - window;
  const SeriesView a{trace, true};
  const SeriesView c{trace, false};
  if (varies_less_than(a, begin, n, tol) && varies_less_than(c, begin, n, tol)) {
    verdict.kind = LimitKind::Converged;
    verdict.limit_a = trace.states.back().a;
    verdict.limit_c = trace.states.back().c;
    return verdict;
  }

  for (const SeriesView* s : {&c, &a}) {
    if (auto rate = monotone_growth_rate(*s, begin, n)) {
      verdict.kind = LimitKind::Diverged;
      verdict.growth_rate = *rate;
      return verdict;
    }
  }

  const PeriodReport pr = detect_period(trace, std::min(window, n / 4), kPeriodTol);
  if (pr.period) {
    verdict.kind = LimitKind::Periodic;
    verdict.period = pr.period;
    return verdict;
  }

  verdict.kind = LimitKind::Undecided;
  return verdict;
}

VisitationVerdict visitation(const Trace& trace, double tail_fraction) {
  const std::size_t n = trace.size();
  if (n < 10) throw std::invalid_argument("visitation: trace needs at least 10 states");
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) {
    throw std::invalid_argument("visitation: tail_fraction must be in (0, 1]");
  }

  const auto tail_len = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(n)));
  const std::size_t start = n - std::clamp<std::size_t>(tail_len, 2, n);

  VisitationVerdict verdict;
  verdict.tail_liminf_gap = std::numeric_limits<double>::infinity();
  verdict.tail_limsup_gap = -verdict.tail_liminf_gap;
  for (std::size_t k = start; k < n; ++k) {
    verdict.tail_liminf_gap = std::min(verdict.tail_liminf_gap, trace.gap[k]);
    verdict.tail_limsup_gap = std::max(verdict.tail_limsup_gap, trace.gap[k]);
  }

  bool switch_in_tail = false;
  const auto& r = trace.regimes;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    if (r[k] == r[k + 1]) continue;
    verdict.last_switch_index = k;
    if (k >= start) switch_in_tail = true;
  }

  if (switch_in_tail) {
    verdict.kind = VisitationKind::PersistentSwitching;
  } else {
    verdict.kind = (!r.empty() && r.back() == Regime::Two)
                       ? VisitationKind::EventuallyRegime2
                       : VisitationKind::EventuallyRegime1;
  }
  return verdict;
}

double sync_gap(const Trace& trace, std::size_t window) {
  const std::size_t n = trace.size();
  if (window == 0 || window > n) {
    throw std::invalid_argument("sync_gap: window must be in [1, trace size]");
  }
  double worst = 0.0;
  for (std::size_t k = n - window; k < n; ++k) {
    worst = std::max(worst, std::abs(trace.gap[k]));
  }
  return worst;
}

const char* to_string(LimitKind k) {
  switch (k) {
    case LimitKind::Converged: return "Converged";
    case LimitKind::Diverged: return "Diverged";
    case LimitKind::Periodic: return "Periodic";
    case LimitKind::Undecided: return "Undecided";
  }
  return "?";
}

const char* to_string(VisitationKind k) {
  switch (k) {
    case VisitationKind::EventuallyRegime1: return "EventuallyRegime1";
    case VisitationKind::EventuallyRegime2: return "EventuallyRegime2";
    case VisitationKind::PersistentSwitching: return "PersistentSwitching";
  }
  return "?";
}

}  // namespace threshsim
