#include "threshsim/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "overloaded.hpp"

namespace threshsim {

namespace {

constexpr double kMonotoneTol = 1e-12;      // absolute slack for round-off
constexpr double kBoundaryResidualTol = 1e-8;
constexpr std::size_t kGridPoints = 1000;

std::optional<double> map_lipschitz(const ScalarMap& m) {
  // The wrap of AffineMod1 is discontinuous; no global constant exists.
  if (m.family == MapFamily::AffineMod1) return std::nullopt;
  return std::abs(m.slope);
}

nlohmann::ordered_json opt_json(std::optional<double> v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

bool series_converged(const Trace& trace, bool use_a, double tol, std::size_t window) {
  const std::size_t n = trace.size();
  window = std::min(window, n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = n - window; k < n; ++k) {
    const double v = use_a ? trace.states[k].a : trace.states[k].c;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo < tol;
}

}  // namespace

ContractionReport check_contraction(const System& sys) {
  ContractionReport rep;
  rep.l_f = map_lipschitz(sys.f);
  rep.l_g = map_lipschitz(sys.g);
  std::visit(detail::overloaded{
                 [&](const AffineThreshold& t) {
                   rep.l_h_a = std::abs(t.gamma);
                   rep.l_h_c = std::abs(t.delta);
                 },
                 [&](const SineThreshold& t) {
                   // sharp bound: max |amp * 2*pi * cos| = 2*pi*|amp|
                   rep.l_h_a = 2.0 * std::numbers::pi * std::abs(t.amp);
                   rep.l_h_c = std::abs(t.delta);
                 },
                 [&](const AveragingThreshold& t) {
                   rep.l_h_a = std::abs(t.weight);
                   rep.l_h_c = std::abs(1.0 - t.weight);
                 },
             },
             sys.h);
  if (rep.l_f && rep.l_g && rep.l_h_a && rep.l_h_c) {
    rep.combined = std::max({*rep.l_f, *rep.l_g, *rep.l_h_a + *rep.l_h_c});
  } else {
    rep.combined = std::numeric_limits<double>::infinity();
  }
  rep.satisfied = rep.combined < 1.0;
  return rep;
}

TheoremVerdict check_monotone(const System& sys, const Trace& trace) {
  if (trace.size() < 2) {
    throw std::domain_error("check_monotone: trace needs at least 2 states");
  }

  TheoremVerdict verdict;
  verdict.theorem = TheoremId::MonotoneThreshold;
  auto& d = verdict.details;

  bool monotone = true;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    if (trace.states[k + 1].c < trace.states[k].c - kMonotoneTol) {
      monotone = false;
      break;
    }
  }

  std::optional<double> a_fix;
  if (sys.f.family == MapFamily::Affine && std::abs(sys.f.slope) < 1.0) {
    a_fix = sys.f.intercept / (1.0 - sys.f.slope);
  }

  bool h_grid_ok = false;
  if (a_fix) {
    // Sample h(a_f*, c) >= c over the observed c-range (clipped below at
    // a_f*) extended by a 10x margin. Evidence, not a proof over all c.
    double c_lo = *a_fix;
    double c_hi = *a_fix;
    for (const State& s : trace.states) c_hi = std::max(c_hi, s.c);
    const double span = c_hi > c_lo ? c_hi - c_lo : 1.0;
    c_hi += 10.0 * span;
    h_grid_ok = true;
    for (std::size_t i = 0; i < kGridPoints; ++i) {
      const double c = c_lo + (c_hi - c_lo) * static_cast<double>(i) /
                                  static_cast<double>(kGridPoints - 1);
      if (eval_threshold(sys.h, *a_fix, c) < c - kMonotoneTol) {
        h_grid_ok = false;
        break;
      }
    }
  }

  verdict.hypotheses_met = monotone && a_fix.has_value() && h_grid_ok;

  bool entered_and_stayed = false;
  {
    const auto& r = trace.regimes;
    std::optional<std::size_t> first_one;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == Regime::One) {
        first_one = k;
        break;
      }
    }
    if (first_one) {
      entered_and_stayed = true;
      for (std::size_t k = *first_one; k < r.size(); ++k) {
        if (r[k] == Regime::Two) {
          entered_and_stayed = false;
          break;
        }
      }
    }
  }

  const LimitVerdict lim =
      detect_limit(trace, kDefaultTol, std::min<std::size_t>(kDefaultWindow, trace.size()));
  bool converged_to_pair = false;
  std::optional<double> fixed_point_residual;
  if (lim.kind == LimitKind::Converged && a_fix) {
    const double c_star = *lim.limit_c;
    fixed_point_residual = std::abs(eval_threshold(sys.h, *a_fix, c_star) - c_star);
    converged_to_pair = std::abs(*lim.limit_a - *a_fix) <= kBoundaryResidualTol &&
                        *fixed_point_residual <= kBoundaryResidualTol;
  }

  const bool tail_climbing =
      trace.states.back().c > trace.states.front().c + kMonotoneTol;
  const bool threshold_unbounded =
      monotone && tail_climbing && lim.kind != LimitKind::Converged;

  if (verdict.hypotheses_met) {
    verdict.conclusion_observed = entered_and_stayed && converged_to_pair;
  }

  d["monotone"] = monotone;
  d["f_contracting_affine"] = a_fix.has_value();
  d["a_fixed_point"] = opt_json(a_fix);
  d["h_grid_ok"] = h_grid_ok;
  d["h_grid_mode"] = "sampled";
  d["entered_regime1_and_stayed"] = entered_and_stayed;
  d["limit_kind"] = to_string(lim.kind);
  d["limit_a"] = opt_json(lim.limit_a);
  d["limit_c"] = opt_json(lim.limit_c);
  d["fixed_point_residual"] = opt_json(fixed_point_residual);
  d["threshold_unbounded"] = threshold_unbounded;
  return verdict;
}

TheoremVerdict check_averaging(const System& sys, const Trace& trace, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_averaging: tol must be > 0");
  TheoremVerdict verdict;
  verdict.theorem = TheoremId::AveragingSync;
  auto& d = verdict.details;

  std::optional<double> weight;
  if (const auto* t = std::get_if<AveragingThreshold>(&sys.h)) {
    if (t->weight > 0.0 && t->weight < 1.0) weight = t->weight;
  } else if (const auto* t2 = std::get_if<AffineThreshold>(&sys.h)) {
    if (t2->epsilon == 0.0 && std::abs(t2->gamma + t2->delta - 1.0) <= 1e-12 &&
        t2->gamma > 0.0 && t2->gamma < 1.0) {
      weight = t2->gamma;
    }
  }

  const bool a_converged =
      series_converged(trace, /*use_a=*/true, kDefaultTol, kDefaultWindow);
  verdict.hypotheses_met = weight.has_value() && a_converged;

  const double limit_a = trace.states.back().a;
  const double limit_c = trace.states.back().c;
  if (verdict.hypotheses_met) {
    verdict.conclusion_observed = std::abs(limit_c - limit_a) <= tol;
  }

  d["averaging_form"] = weight.has_value();
  d["weight"] = opt_json(weight);
  d["a_converged"] = a_converged;
  d["limit_a"] = limit_a;
  d["limit_c"] = limit_c;
  d["limit_gap"] = std::abs(limit_c - limit_a);
  d["tol"] = tol;
  return verdict;
}

TheoremVerdict common_limit_verdict(const Trace& trace, double tol) {
  if (trace.size() < 100) {
    throw std::domain_error("common_limit_verdict: trace needs at least 100 states");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("common_limit_verdict: tol must be > 0");

  TheoremVerdict verdict;
  verdict.theorem = TheoremId::CommonLimit;
  auto& d = verdict.details;

  const VisitationVerdict vis = visitation(trace, 0.5);
  const LimitVerdict lim = detect_limit(trace, kDefaultTol, kDefaultWindow);
  const TransitionSets ts = transitions(trace);

  verdict.hypotheses_met = vis.kind == VisitationKind::PersistentSwitching &&
                           lim.kind == LimitKind::Converged;

  const double limit_a = trace.states.back().a;
  const double limit_c = trace.states.back().c;
  if (verdict.hypotheses_met) {
    verdict.conclusion_observed = std::abs(limit_a - limit_c) <= tol;
  }

  // Late sub-sequence statistics of the post-step a values per regime. For an
  // index n stepped in regime 1, states[n+1].a is exactly f(a_n); likewise g
  // for regime 2. Means are taken over the final 10% of each index set.
  auto late_stats = [&trace](Regime which) -> nlohmann::ordered_json {
    std::vector<std::size_t> idx;
    for (std::size_t n = 0; n + 1 < trace.states.size() && n < trace.regimes.size();
         ++n) {
      if (trace.regimes[n] == which) idx.push_back(n);
    }
    if (idx.empty()) {
      return {{"count", 0}, {"late_mean", nullptr}, {"late_stddev", nullptr}};
    }
    const std::size_t take = std::max<std::size_t>(1, idx.size() / 10);
    double sum = 0.0;
    for (std::size_t i = idx.size() - take; i < idx.size(); ++i) {
      sum += trace.states[idx[i] + 1].a;
    }
    const double mean = sum / static_cast<double>(take);
    double var = 0.0;
    for (std::size_t i = idx.size() - take; i < idx.size(); ++i) {
      const double dval = trace.states[idx[i] + 1].a - mean;
      var += dval * dval;
    }
    return {{"count", idx.size()},
            {"late_mean", mean},
            {"late_stddev", std::sqrt(var / static_cast<double>(take))}};
  };

  d["visitation"] = to_string(vis.kind);
  d["tail_liminf_gap"] = vis.tail_liminf_gap;
  d["tail_limsup_gap"] = vis.tail_limsup_gap;
  d["t12_count"] = ts.t12.size();
  d["t21_count"] = ts.t21.size();
  d["limit_kind"] = to_string(lim.kind);
  d["limit_a"] = limit_a;
  d["limit_c"] = limit_c;
  d["limit_gap"] = std::abs(limit_a - limit_c);
  d["regime1_subsequence"] = late_stats(Regime::One);
  d["regime2_subsequence"] = late_stats(Regime::Two);
  d["tol"] = tol;
  // At a finite horizon the sub-sequence convergence required of f(a_n) over
  // regime-1 indices is indistinguishable from convergence of the whole
  // a-series; the verdict deliberately conflates them.
  d["subsequence_check"] = "full-series proxy";
  return verdict;
}

std::optional<double> fitted_contraction_ratio(const Trace& trace, State fixed_point) {
  // Geometric fit of the sup-norm error over the stretch that is clearly
  // above round-off.
  constexpr double kFloor = 1e-12;
  std::optional<std::size_t> first;
  std::size_t last = 0;
  std::vector<double> err(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    err[k] = std::max(std::abs(trace.states[k].a - fixed_point.a),
                      std::abs(trace.states[k].c - fixed_point.c));
    if (err[k] > kFloor) {
      if (!first) first = k;
      last = k;
    }
  }
  if (!first || last <= *first) return std::nullopt;
  const double slope = (std::log(err[last]) - std::log(err[*first])) /
                       static_cast<double>(last - *first);
  return std::exp(slope);
}

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ContractionBound: return "contraction";
    case TheoremId::MonotoneThreshold: return "monotone";
    case TheoremId::AveragingSync: return "averaging";
    case TheoremId::CommonLimit: return "common-limit";
  }
  return "?";
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
  for (TheoremId id : {TheoremId::ContractionBound, TheoremId::MonotoneThreshold,
                       TheoremId::AveragingSync, TheoremId::CommonLimit}) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

nlohmann::ordered_json verdict_json(const TheoremVerdict& verdict) {
  nlohmann::ordered_json j;
  j["theorem_id"] = to_string(verdict.theorem);
  j["hypotheses_met"] = verdict.hypotheses_met;
  j["conclusion_observed"] = verdict.conclusion_observed
                                 ? nlohmann::ordered_json(*verdict.conclusion_observed)
                                 : nlohmann::ordered_json(nullptr);
  j["details"] = verdict.details;
  return j;
}

nlohmann::ordered_json contraction_json(const ContractionReport& report) {
  nlohmann::ordered_json j;
  j["theorem_id"] = to_string(TheoremId::ContractionBound);
  j["l_f"] = opt_json(report.l_f);
  j["l_g"] = opt_json(report.l_g);
  j["l_h_a"] = opt_json(report.l_h_a);
  j["l_h_c"] = opt_json(report.l_h_c);
  j["combined"] = std::isfinite(report.combined)
                      ? nlohmann::ordered_json(report.combined)
                      : nlohmann::ordered_json("unbounded");
  j["satisfied"] = report.satisfied;
  return j;
}

}  // namespace threshsim
