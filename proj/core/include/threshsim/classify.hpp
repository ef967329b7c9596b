#pragma once
// Evidence-based labeling of an affine system's global behavior. The label
// is decided from orbits simulated off a deterministic grid of initial
// conditions plus fixed-point analysis and, when needed, a Lyapunov probe:
//
//   A_Convergence     every sampled orbit converged, single attractor
//   B_Bistability     every sampled orbit converged, >= 2 attractors
//   C_Periodic        none diverged; a cycle (length >= 2) was detected, or
//                     bounded non-convergent motion with exponent <= 0
//   D_DivergentSpiral a majority of sampled orbits diverged
//   E_Chaos           none diverged; bounded aperiodic motion with exponent
//                     above the chaos threshold
//   Unclassified      anything else (mixed or contradictory evidence)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "threshsim/affine.hpp"
#include "threshsim/system.hpp"

namespace threshsim {

enum class DynamicalLabel {
  A_Convergence,
  B_Bistability,
  C_Periodic,
  D_DivergentSpiral,
  E_Chaos,
  Unclassified,
};

struct ClassifyBudget {
  Box box{-10.0, 10.0, -10.0, 10.0};
  std::size_t grid_rows = 20;
  std::size_t grid_cols = 20;
  std::size_t n_steps = 5000;
  double tol = 1e-9;
  std::size_t window = 100;
  /// Converged limits closer than this (Euclidean) count as one attractor.
  double merge_tol = 1e-4;
  std::size_t max_period = 64;
  double period_tol = 1e-6;
  std::size_t lyap_iters = 100'000;
  std::size_t lyap_transient = 1000;
  double chaos_threshold = 0.05;
  std::uint64_t seed = 42;
};

struct ClassifyEvidence {
  std::vector<ClassifiedFixedPoint> fixed_points;
  std::optional<ClassifiedFixedPoint> boundary_point;
  /// Distinct converged limits, sorted lexicographically by (a, c).
  std::vector<State> attractors;
  std::size_t orbit_count = 0;
  std::size_t converged_count = 0;
  std::size_t diverged_count = 0;
  std::size_t periodic_count = 0;
  std::size_t undecided_count = 0;
  double diverged_fraction = 0.0;
  std::optional<double> lyapunov;
  bool lyapunov_partial = false;  ///< probe orbit overflowed mid-estimate
  std::optional<std::size_t> period;
  std::uint64_t seed = 0;
};

struct Classification {
  DynamicalLabel label = DynamicalLabel::Unclassified;
  ClassifyEvidence evidence;
};

/// Deterministic for a fixed budget: grid cells are visited in row-major
/// order and the only randomness is the seeded Lyapunov tangent.
Classification classify(const AffineParams& p, const ClassifyBudget& budget = {});

const char* to_string(DynamicalLabel label);
/// Parses a label string as produced by to_string.
std::optional<DynamicalLabel> label_from_string(const std::string& s);

nlohmann::ordered_json classification_json(const Classification& result,
                                           const AffineParams& params,
                                           const ClassifyBudget& budget);

}  // namespace threshsim
