#pragma once
// Frozen reference values. Each constant was produced by the independent
// implementation in oracle.hpp (see oracle_probe / oracle_probe2, which
// regenerate all of them); trajectory-level values were cross-checked against
// 50-digit runs where the dynamics are contractive. Do not edit by hand
// without re-running the probes.

#include <cstddef>

namespace golden {

// type_e preset simulated from (0.5, 0.7) with a 1e4-step request: the orbit
// escapes; the guard trips while producing the state that would have had
// index 760. Two switches in each direction happen before the escape.
inline constexpr std::size_t kTypeEOverflowAt = 760;
inline constexpr std::size_t kTypeET12 = 2;
inline constexpr std::size_t kTypeET21 = 2;

// fed_policy preset, 200 quarters from (1.5, 2.5). The first quarter stepped
// under regime 2 is quarter 11 (transition index 10); there are no further
// switches. Final values agree with the 50-digit run to ~7e-16.
inline constexpr std::size_t kFedFirstRegime2Quarter = 11;
inline constexpr std::size_t kFedT12 = 1;
inline constexpr std::size_t kFedT21 = 0;
inline constexpr double kFedLimitA = 1.9999999999999931;
inline constexpr double kFedLimitC = 1.9499999999999793;
// Reference claims recorded for the report, not asserted anywhere: first
// switch near quarter 8, common limit near 2.3.
inline constexpr double kFedClaimedSwitchQuarter = 8.0;
inline constexpr double kFedClaimedCommonLimit = 2.3;

// contraction_failure preset from (15, 22), 1e4 steps: the orbit never
// leaves regime 1 and settles onto the boundary equilibrium; the threshold's
// numeric rest point sits a few ulp above 20.
inline constexpr std::size_t kCfT12 = 0;
inline constexpr std::size_t kCfT21 = 0;
inline constexpr double kCfLimitA = 20.0;
inline constexpr double kCfLimitC = 20.000000000000011;

// divergent_threshold preset from (1, 2.5), 100 steps: a lands exactly on
// its double fixed point.
inline constexpr double kDivergentA100 = 2.0;

// type_a classification on the default 20x20 grid over [-10,10]^2,
// 5000 steps: one attractor but a divergent corner, so no label fits.
inline constexpr std::size_t kTypeAGridConverged = 334;
inline constexpr std::size_t kTypeAGridDiverged = 66;

// type_a basin grid over [0,10]^2, 20x20, 2000 steps.
inline constexpr std::size_t kTypeABasinConverged = 293;
inline constexpr std::size_t kTypeABasinDiverged = 107;

// contraction_failure basin grid over [10,35]^2, 50x50, 2000 steps: split
// between the boundary point (20,20) and the interior regime-2 point (30,25).
inline constexpr std::size_t kCfBasinBoundaryCells = 1006;
inline constexpr std::size_t kCfBasinInteriorCells = 1494;

// divergent_threshold sweep of the threshold c-coefficient.
inline constexpr const char* kSweepLabel095 = "B_Bistability";
inline constexpr const char* kSweepLabel100 = "D_DivergentSpiral";
inline constexpr const char* kSweepLabel105 = "D_DivergentSpiral";

}  // namespace golden
