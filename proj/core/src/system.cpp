#include "threshsim/system.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "overloaded.hpp"

namespace threshsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string("non-finite ") + what);
  }
}

// x - floor(x), clamped so rounding near tiny negatives cannot yield 1.0.
// Non-finite values pass through untouched as overflow markers.
double wrap_unit(double y) {
  if (!std::isfinite(y)) return y;
  const double m = y - std::floor(y);
  return m < 1.0 ? m : 0.0;
}

}  // namespace

double eval_map(const ScalarMap& map, double x) {
  require_finite(x, "map input");
  const double y = map.slope * x + map.intercept;
  return map.family == MapFamily::Affine ? y : wrap_unit(y);
}

double eval_threshold(const ThresholdMap& h, double a, double c) {
  require_finite(a, "threshold input a");
  require_finite(c, "threshold input c");
  return std::visit(
      detail::overloaded{
          [&](const AffineThreshold& t) { return t.gamma * a + t.delta * c + t.epsilon; },
          [&](const SineThreshold& t) {
            return t.amp * std::sin(kTwoPi * a) + t.delta * c + t.offset;
          },
          [&](const AveragingThreshold& t) { return t.weight * a + (1.0 - t.weight) * c; },
      },
      h);
}

StepResult step(const System& sys, State s) {
  if (!s.finite()) throw std::domain_error("step: non-finite state");
  const Regime r = regime_of(s);
  const double a_next = eval_map(r == Regime::One ? sys.f : sys.g, s.a);
  const double c_next = eval_threshold(sys.h, s.a, s.c);
  return StepResult{State{a_next, c_next}, r};
}

}  // namespace threshsim
