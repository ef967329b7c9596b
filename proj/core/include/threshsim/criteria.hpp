#pragma once
// Mechanical checkers for the convergence conditions the toolkit cares
// about: global Lipschitz budgets, monotone threshold growth, averaging
// thresholds, and the common-limit property of persistently switching
// orbits. Each checker separates "the hypotheses held on this input" from
// "the promised conclusion was observed"; at a finite horizon both are
// evidence, not proof.

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "threshsim/detectors.hpp"
#include "threshsim/system.hpp"
#include "threshsim/trace.hpp"

namespace threshsim {

/// Global Lipschitz constants per component. An AffineMod1 map has no global
/// constant (the wrap is discontinuous); its entries stay empty and the
/// budget is unsatisfiable.
struct ContractionReport {
  std::optional<double> l_f;
  std::optional<double> l_g;
  std::optional<double> l_h_a;
  std::optional<double> l_h_c;
  /// max{L_f, L_g, L_h_a + L_h_c}; +inf when any constant is missing.
  double combined = 0.0;
  bool satisfied = false;  ///< combined < 1
};

ContractionReport check_contraction(const System& sys);

enum class TheoremId { ContractionBound, MonotoneThreshold, AveragingSync, CommonLimit };

struct TheoremVerdict {
  TheoremId theorem = TheoremId::CommonLimit;
  bool hypotheses_met = false;
  /// Present only when the hypotheses held and a trace was available to
  /// check the conclusion against.
  std::optional<bool> conclusion_observed;
  nlohmann::ordered_json details;
};

/// Monotone-threshold convergence check. Hypotheses: c never decreased along
/// the trace (tolerance 1e-12), f is a globally contracting affine map with
/// fixed point a_f*, and h(a_f*, c) >= c sampled on a 1000-point grid
/// spanning the observed c-range plus a 10x margin. Conclusion: the orbit
/// entered regime 1, never left, and settled onto (a_f*, c*) with
/// |h(a_f*, c*) - c*| <= 1e-8. A threshold that keeps climbing with no limit
/// sets the unbounded-threshold flag in the details.
TheoremVerdict check_monotone(const System& sys, const Trace& trace);

/// Averaging-threshold synchronization check. Hypotheses: h is an averaging
/// threshold (or the equivalent affine form with gamma+delta == 1, gamma in
/// (0,1), epsilon == 0) and the a-sequence converged. Conclusion:
/// |limit_c - limit_a| <= tol.
TheoremVerdict check_averaging(const System& sys, const Trace& trace, double tol);

/// Common-limit check. Hypotheses: the orbit was still switching regimes in
/// the trace's tail and both sequences converged. Conclusion:
/// |limit_a - limit_c| <= tol. Details carry the transition-set sizes and the
/// late-subsequence means of the post-step a values over each regime's index
/// set. Requires >= 100 states.
TheoremVerdict common_limit_verdict(const Trace& trace, double tol);

/// Geometric decay ratio of e_n = max(|a_n - fp.a|, |c_n - fp.c|) fitted over
/// the stretch where e_n is measurably above round-off; empty when fewer than
/// two usable samples exist.
std::optional<double> fitted_contraction_ratio(const Trace& trace, State fixed_point);

const char* to_string(TheoremId id);
/// CLI spelling: contraction | monotone | averaging | common-limit.
std::optional<TheoremId> theorem_from_string(const std::string& s);

nlohmann::ordered_json verdict_json(const TheoremVerdict& verdict);
nlohmann::ordered_json contraction_json(const ContractionReport& report);

}  // namespace threshsim
