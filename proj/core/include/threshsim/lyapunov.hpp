#pragma once
// Largest Lyapunov exponent along an orbit, from per-step regime-selected
// Jacobians applied to a renormalized tangent vector. The Jacobian of one
// step is lower triangular:
//
//   [ m'(a)      0      ]      m = f or g per the regime at the current state
//   [ dh/da   dh/dc     ]      (boundary a == c uses regime 1)
//
// Derivatives are analytic per family; AffineMod1 uses its slope everywhere
// (the wrap is non-differentiable only on a measure-zero set).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "threshsim/system.hpp"

namespace threshsim {

struct LyapunovEstimate {
  double lambda_max = 0.0;  ///< mean log tangent growth per step (natural log)
  std::size_t n_iterations = 0;
  std::size_t transient_discarded = 0;
  std::uint64_t seed = 0;
  double regime_fraction = 0.0;  ///< fraction of accumulated steps in regime 1
};

/// Both exponents, from a two-vector tangent basis re-orthonormalized each
/// step (Gram-Schmidt).
struct LyapunovSpectrum {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::size_t n_iterations = 0;
  std::size_t transient_discarded = 0;
  std::uint64_t seed = 0;
  double regime_fraction = 0.0;
};

/// Thrown when the orbit trips the overflow guard before finishing; carries
/// whatever was accumulated so far.
class OrbitOverflowError : public std::runtime_error {
 public:
  OrbitOverflowError(std::string what, LyapunovEstimate partial_estimate)
      : std::runtime_error(std::move(what)), partial(partial_estimate) {}
  LyapunovEstimate partial;
};

/// Single-vector estimate of the leading exponent. The tangent starts in a
/// seeded random direction, evolves through the `transient` burn-in without
/// accumulation, then log norms are averaged over n further steps.
/// Requires n >= 10^4.
LyapunovEstimate lyapunov(const System& sys, State init, std::size_t n,
                          std::size_t transient, std::uint64_t seed);

/// Two-vector variant reporting the full spectrum.
LyapunovSpectrum lyapunov_spectrum(const System& sys, State init, std::size_t n,
                                   std::size_t transient, std::uint64_t seed);

/// One estimate per initial condition drawn uniformly from `init_box` using a
/// single engine seeded with `seed` (per-sample tangent seeds are drawn from
/// the same engine, so results are reproducible).
std::vector<LyapunovEstimate> lyapunov_samples(const System& sys, const Box& init_box,
                                               std::size_t n, std::size_t transient,
                                               std::size_t n_samples, std::uint64_t seed);

double mean_lambda(const std::vector<LyapunovEstimate>& estimates);

}  // namespace threshsim
