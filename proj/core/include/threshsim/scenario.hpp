#pragma once
// Named presets and the on-disk scenario format. A scenario bundles a
// system, an initial state and run parameters; the policy preset can carry a
// per-quarter slack series that rebuilds the threshold intercept each step.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "threshsim/simulate.hpp"
#include "threshsim/system.hpp"

namespace threshsim {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t n_steps = 1000;
  double tol = 1e-9;
  std::size_t window = 100;
  std::uint64_t seed = 42;
};

/// Quarterly policy-threshold model parameters. The regime coefficients are
/// fixed (accommodative 0.9x+0.2, restrictive 0.85x+0.3, threshold
/// persistence 0.8 and learning rate 0.15); only the slack path and the
/// long-run target vary. A single-element slack vector means constant slack
/// for every quarter.
struct PolicyParams {
  double target = 2.0;
  std::vector<double> slack{2.0};
};

/// System in force during `quarter`: the threshold intercept is
/// 0.05 * (target - 0.1 * W_quarter). Throws std::domain_error when the
/// quarter indexes past a multi-element slack series.
System policy_system(const PolicyParams& params, std::size_t quarter);

struct Scenario {
  std::string name;
  System system;
  State initial;
  RunConfig run;
  /// Per-quarter slack values; presence makes the run time-varying via
  /// policy_system.
  std::optional<std::vector<double>> slack_series;
  double policy_target = 2.0;
  std::string notes;
};

const std::vector<std::string>& builtin_names();

/// Throws ScenarioError for unknown names, listing the valid ones.
Scenario builtin_scenario(const std::string& name);

/// Strict loader: requires "version": 1, rejects unknown fields, validates
/// finiteness and family invariants (e.g. averaging weight in (0,1)). Errors
/// name the offending field; parse errors carry line/column.
Scenario load_scenario(const std::filesystem::path& path);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::ordered_json scenario_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Runs the scenario's configured number of steps (or the override). With a
/// slack series of length L > 1, at most L steps can be simulated.
Trace run_scenario(const Scenario& scenario,
                   std::optional<std::size_t> steps_override = std::nullopt,
                   const SimulateOptions& opts = {});

bool operator==(const ScalarMap& a, const ScalarMap& b);
bool operator==(const System& a, const System& b);
bool operator==(const Scenario& a, const Scenario& b);

}  // namespace threshsim
