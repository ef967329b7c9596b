#include "threshsim/classify.hpp"

#include <algorithm>
#include <cmath>

#include "threshsim/detectors.hpp"
#include "threshsim/lyapunov.hpp"
#include "threshsim/simulate.hpp"

namespace threshsim {

namespace {

int find_cluster(const std::vector<State>& reps, State limit, double tol) {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const double d = std::hypot(limit.a - reps[i].a, limit.c - reps[i].c);
    if (d <= tol) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

Classification classify(const AffineParams& p, const ClassifyBudget& budget) {
  Classification out;
  ClassifyEvidence& ev = out.evidence;
  ev.seed = budget.seed;

  ev.fixed_points = affine_fixed_points(p);
  if (p.alpha1 != 1.0) {
    ev.boundary_point = boundary_fixed_point(p, 1e-9);
  }

  const System sys = p.to_system();
  const std::size_t rows = std::max<std::size_t>(budget.grid_rows, 1);
  const std::size_t cols = std::max<std::size_t>(budget.grid_cols, 1);
  ev.orbit_count = rows * cols;

  std::vector<State> reps;  // first converged limit of each cluster
  std::optional<State> probe;
  std::optional<std::size_t> shortest_period;

  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t col = 0; col < cols; ++col) {
      const double fa = (static_cast<double>(col) + 0.5) / static_cast<double>(cols);
      const double fc = (static_cast<double>(row) + 0.5) / static_cast<double>(rows);
      const State init{budget.box.a_lo + fa * (budget.box.a_hi - budget.box.a_lo),
                       budget.box.c_lo + fc * (budget.box.c_hi - budget.box.c_lo)};

      const Trace tr = simulate(sys, init, budget.n_steps);
      const std::size_t window = std::min(budget.window, tr.size());
      const LimitVerdict v = detect_limit(tr, budget.tol, window);
      switch (v.kind) {
        case LimitKind::Converged: {
          ++ev.converged_count;
          const State limit{*v.limit_a, *v.limit_c};
          if (find_cluster(reps, limit, budget.merge_tol) < 0) reps.push_back(limit);
          break;
        }
        case LimitKind::Diverged:
          ++ev.diverged_count;
          break;
        case LimitKind::Periodic:
          ++ev.periodic_count;
          if (v.period && (!shortest_period || *v.period < *shortest_period)) {
            shortest_period = v.period;
          }
          if (!probe) probe = tr.states.back();
          break;
        case LimitKind::Undecided:
          ++ev.undecided_count;
          if (!probe) probe = tr.states.back();
          break;
      }
    }
  }

  ev.diverged_fraction = static_cast<double>(ev.diverged_count) /
                         static_cast<double>(ev.orbit_count);
  std::sort(reps.begin(), reps.end(), [](State x, State y) {
    return x.a != y.a ? x.a < y.a : x.c < y.c;
  });
  ev.attractors = std::move(reps);
  ev.period = shortest_period;

  if (probe) {
    try {
      ev.lyapunov =
          lyapunov(sys, *probe, budget.lyap_iters, budget.lyap_transient, budget.seed)
              .lambda_max;
    } catch (const OrbitOverflowError& e) {
      ev.lyapunov = e.partial.lambda_max;
      ev.lyapunov_partial = true;
    }
  }

  const std::size_t total = ev.orbit_count;
  const std::size_t clusters = ev.attractors.size();
  const bool all_converged = ev.converged_count == total;
  const bool none_diverged = ev.diverged_count == 0;
  const bool full_lyap = ev.lyapunov && !ev.lyapunov_partial;

  if (2 * ev.diverged_count > total) {
    out.label = DynamicalLabel::D_DivergentSpiral;
  } else if (all_converged && clusters == 1) {
    out.label = DynamicalLabel::A_Convergence;
  } else if (all_converged && clusters >= 2) {
    out.label = DynamicalLabel::B_Bistability;
  } else if (none_diverged && ev.period && *ev.period >= 2) {
    out.label = DynamicalLabel::C_Periodic;
  } else if (none_diverged && ev.undecided_count > 0 && full_lyap &&
             *ev.lyapunov <= 0.0) {
    out.label = DynamicalLabel::C_Periodic;
  } else if (none_diverged && ev.undecided_count > 0 && !ev.period && full_lyap &&
             *ev.lyapunov > budget.chaos_threshold) {
    out.label = DynamicalLabel::E_Chaos;
  } else {
    out.label = DynamicalLabel::Unclassified;
  }
  return out;
}

const char* to_string(DynamicalLabel label) {
  switch (label) {
    case DynamicalLabel::A_Convergence: return "A_Convergence";
    case DynamicalLabel::B_Bistability: return "B_Bistability";
    case DynamicalLabel::C_Periodic: return "C_Periodic";
    case DynamicalLabel::D_DivergentSpiral: return "D_DivergentSpiral";
    case DynamicalLabel::E_Chaos: return "E_Chaos";
    case DynamicalLabel::Unclassified: return "Unclassified";
  }
  return "?";
}

std::optional<DynamicalLabel> label_from_string(const std::string& s) {
  for (DynamicalLabel label :
       {DynamicalLabel::A_Convergence, DynamicalLabel::B_Bistability,
        DynamicalLabel::C_Periodic, DynamicalLabel::D_DivergentSpiral,
        DynamicalLabel::E_Chaos, DynamicalLabel::Unclassified}) {
    if (s == to_string(label)) return label;
  }
  return std::nullopt;
}

namespace {

nlohmann::ordered_json fixed_point_json(const ClassifiedFixedPoint& fp) {
  nlohmann::ordered_json j;
  j["type"] = to_string(fp.type);
  j["degenerate"] = fp.degenerate;
  if (!fp.degenerate) {
    j["a_star"] = fp.a_star;
    j["c_star"] = fp.c_star;
  }
  j["exists"] = fp.exists;
  j["eigenvalues"] = {fp.eigenvalues[0], fp.eigenvalues[1]};
  j["stable"] = fp.stable;
  if (fp.boundary) {
    j["one_sided"] = {{"alpha_left", fp.boundary->alpha_left},
                      {"alpha_right", fp.boundary->alpha_right},
                      {"dh_dc", fp.boundary->dh_dc}};
  }
  if (fp.closed_form_candidate) {
    j["closed_form_candidate"] = *fp.closed_form_candidate;
    j["closed_form_agrees"] = *fp.closed_form_agrees;
  }
  return j;
}

}  // namespace

nlohmann::ordered_json classification_json(const Classification& result,
                                           const AffineParams& params,
                                           const ClassifyBudget& budget) {
  const ClassifyEvidence& ev = result.evidence;
  nlohmann::ordered_json j;
  j["label"] = to_string(result.label);

  nlohmann::ordered_json fps = nlohmann::ordered_json::array();
  for (const auto& fp : ev.fixed_points) fps.push_back(fixed_point_json(fp));
  if (ev.boundary_point) fps.push_back(fixed_point_json(*ev.boundary_point));
  j["fixed_points"] = std::move(fps);

  j["lyapunov"] = ev.lyapunov ? nlohmann::ordered_json(*ev.lyapunov)
                              : nlohmann::ordered_json(nullptr);
  j["lyapunov_partial"] = ev.lyapunov_partial;
  j["period"] = ev.period ? nlohmann::ordered_json(*ev.period)
                          : nlohmann::ordered_json(nullptr);
  j["diverged_fraction"] = ev.diverged_fraction;
  j["seed"] = ev.seed;

  nlohmann::ordered_json attractors = nlohmann::ordered_json::array();
  for (const auto& s : ev.attractors) attractors.push_back({s.a, s.c});
  j["attractors"] = std::move(attractors);
  j["counts"] = {{"orbits", ev.orbit_count},
                 {"converged", ev.converged_count},
                 {"diverged", ev.diverged_count},
                 {"periodic", ev.periodic_count},
                 {"undecided", ev.undecided_count}};
  j["params"] = {{"alpha1", params.alpha1}, {"beta1", params.beta1},
                 {"alpha2", params.alpha2}, {"beta2", params.beta2},
                 {"gamma", params.gamma},   {"delta", params.delta},
                 {"epsilon", params.epsilon}};
  j["budget"] = {{"box", {budget.box.a_lo, budget.box.a_hi, budget.box.c_lo,
                          budget.box.c_hi}},
                 {"grid", {budget.grid_rows, budget.grid_cols}},
                 {"n_steps", budget.n_steps},
                 {"tol", budget.tol},
                 {"window", budget.window},
                 {"merge_tol", budget.merge_tol},
                 {"lyap_iters", budget.lyap_iters},
                 {"lyap_transient", budget.lyap_transient},
                 {"chaos_threshold", budget.chaos_threshold}};
  return j;
}

}  // namespace threshsim
