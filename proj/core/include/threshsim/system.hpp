#pragma once
// Coupled piecewise map with an adaptive switching threshold.
//
// The state is a pair (a, c). Each step applies one of two scalar maps to a,
// selected by comparing a against the threshold c, then advances the
// threshold itself:
//
//   a' = f(a) when a <= c (regime 1),  a' = g(a) when a > c (regime 2)
//   c' = h(a, c)
//
// The boundary a == c selects regime 1, and the comparison is exact (no
// epsilon), so regime sequences are reproducible bit for bit.

#include <cmath>
#include <variant>

namespace threshsim {

enum class MapFamily { Affine, AffineMod1 };

/// Scalar map y = slope*x + intercept, optionally wrapped into [0, 1).
struct ScalarMap {
  MapFamily family = MapFamily::Affine;
  double slope = 0.0;
  double intercept = 0.0;
};

/// c' = gamma*a + delta*c + epsilon
struct AffineThreshold {
  double gamma = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
};

/// c' = amp*sin(2*pi*a) + delta*c + offset
struct SineThreshold {
  double amp = 0.0;
  double delta = 0.0;
  double offset = 0.0;
};

/// c' = weight*a + (1-weight)*c with weight in (0, 1); the result always lies
/// between a and c.
struct AveragingThreshold {
  double weight = 0.5;
};

using ThresholdMap = std::variant<AffineThreshold, SineThreshold, AveragingThreshold>;

struct System {
  ScalarMap f;
  ScalarMap g;
  ThresholdMap h;
};

struct State {
  double a = 0.0;
  double c = 0.0;
  bool finite() const { return std::isfinite(a) && std::isfinite(c); }
};

enum class Regime { One = 1, Two = 2 };

inline Regime regime_of(State s) { return s.a <= s.c ? Regime::One : Regime::Two; }

/// Axis-aligned rectangle of initial conditions.
struct Box {
  double a_lo = -10.0, a_hi = 10.0;
  double c_lo = -10.0, c_hi = 10.0;
};

/// Applies the map formula. Throws std::domain_error on non-finite input.
/// AffineMod1 wraps finite results into [0, 1) via y - floor(y).
double eval_map(const ScalarMap& map, double x);

/// Applies the threshold formula. Throws std::domain_error on non-finite input.
double eval_threshold(const ThresholdMap& h, double a, double c);

struct StepResult {
  State next;
  Regime regime;
};

/// One application of the evolution operator. The regime label reports which
/// map acted on s.a. The result may carry non-finite components when the maps
/// overflow; the simulator treats that as an overflow marker, not an error.
StepResult step(const System& sys, State s);

}  // namespace threshsim
