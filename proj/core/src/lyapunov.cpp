#include "threshsim/lyapunov.hpp"

#include <cmath>
#include <numbers>

#include "overloaded.hpp"
#include "threshsim/rng.hpp"

namespace threshsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGuard = 1e300;

// Lower-triangular one-step Jacobian entries.
struct Tangent2 {
  double v1, v2;
};

struct Jacobian {
  double daa;  // d a'/da
  double dca;  // d c'/da
  double dcc;  // d c'/dc
};

Jacobian jacobian_at(const System& sys, State s) {
  const ScalarMap& m = regime_of(s) == Regime::One ? sys.f : sys.g;
  Jacobian j{m.slope, 0.0, 0.0};
  std::visit(detail::overloaded{
                 [&](const AffineThreshold& t) {
                   j.dca = t.gamma;
                   j.dcc = t.delta;
                 },
                 [&](const SineThreshold& t) {
                   j.dca = t.amp * kTwoPi * std::cos(kTwoPi * s.a);
                   j.dcc = t.delta;
                 },
                 [&](const AveragingThreshold& t) {
                   j.dca = t.weight;
                   j.dcc = 1.0 - t.weight;
                 },
             },
             sys.h);
  return j;
}

bool overflowed(State s) {
  return !s.finite() || std::abs(s.a) > kGuard || std::abs(s.c) > kGuard;
}

void validate(State init, std::size_t n) {
  if (!init.finite()) throw std::invalid_argument("lyapunov: non-finite initial state");
  if (n < 10'000) {
    throw std::invalid_argument("lyapunov: at least 1e4 iterations required");
  }
}

}  // namespace

LyapunovEstimate lyapunov(const System& sys, State init, std::size_t n,
                          std::size_t transient, std::uint64_t seed) {
  validate(init, n);

  Rng rng(seed);
  const double angle = rng.uniform(0.0, kTwoPi);
  Tangent2 v{std::cos(angle), std::sin(angle)};

  State cur = init;
  double sum_log = 0.0;
  std::size_t done = 0;
  std::size_t regime1 = 0;

  auto make_partial = [&]() {
    LyapunovEstimate e;
    e.lambda_max = done > 0 ? sum_log / static_cast<double>(done) : 0.0;
    e.n_iterations = done;
    e.transient_discarded = transient;
    e.seed = seed;
    e.regime_fraction =
        done > 0 ? static_cast<double>(regime1) / static_cast<double>(done) : 0.0;
    return e;
  };

  const std::size_t total = transient + n;
  for (std::size_t k = 0; k < total; ++k) {
    const Jacobian j = jacobian_at(sys, cur);
    const Regime r = regime_of(cur);
    const StepResult next = step(sys, cur);
    if (overflowed(next.next)) {
      throw OrbitOverflowError("lyapunov: orbit overflowed before completing",
                               make_partial());
    }

    const Tangent2 w{j.daa * v.v1, j.dca * v.v1 + j.dcc * v.v2};
    const double norm = std::hypot(w.v1, w.v2);
    v = norm > 0.0 ? Tangent2{w.v1 / norm, w.v2 / norm} : Tangent2{1.0, 0.0};

    if (k >= transient) {
      sum_log += std::log(norm);
      ++done;
      if (r == Regime::One) ++regime1;
    }
    cur = next.next;
  }

  LyapunovEstimate est = make_partial();
  est.n_iterations = n;
  return est;
}

LyapunovSpectrum lyapunov_spectrum(const System& sys, State init, std::size_t n,
                                   std::size_t transient, std::uint64_t seed) {
  validate(init, n);

  Rng rng(seed);
  const double angle = rng.uniform(0.0, kTwoPi);
  Tangent2 u{std::cos(angle), std::sin(angle)};
  Tangent2 w{-u.v2, u.v1};

  State cur = init;
  double sum1 = 0.0, sum2 = 0.0;
  std::size_t done = 0;
  std::size_t regime1 = 0;

  const std::size_t total = transient + n;
  for (std::size_t k = 0; k < total; ++k) {
    const Jacobian j = jacobian_at(sys, cur);
    const Regime r = regime_of(cur);
    const StepResult next = step(sys, cur);
    if (overflowed(next.next)) {
      LyapunovEstimate partial;
      partial.lambda_max = done > 0 ? sum1 / static_cast<double>(done) : 0.0;
      partial.n_iterations = done;
      partial.transient_discarded = transient;
      partial.seed = seed;
      partial.regime_fraction =
          done > 0 ? static_cast<double>(regime1) / static_cast<double>(done) : 0.0;
      throw OrbitOverflowError("lyapunov_spectrum: orbit overflowed before completing",
                               partial);
    }

    Tangent2 ju{j.daa * u.v1, j.dca * u.v1 + j.dcc * u.v2};
    Tangent2 jw{j.daa * w.v1, j.dca * w.v1 + j.dcc * w.v2};

    // Gram-Schmidt: normalize the first image, strip its component from the
    // second, and record both stretch factors.
    const double r1 = std::hypot(ju.v1, ju.v2);
    u = r1 > 0.0 ? Tangent2{ju.v1 / r1, ju.v2 / r1} : Tangent2{1.0, 0.0};
    const double proj = jw.v1 * u.v1 + jw.v2 * u.v2;
    Tangent2 ortho{jw.v1 - proj * u.v1, jw.v2 - proj * u.v2};
    const double r2 = std::hypot(ortho.v1, ortho.v2);
    w = r2 > 0.0 ? Tangent2{ortho.v1 / r2, ortho.v2 / r2} : Tangent2{-u.v2, u.v1};

    if (k >= transient) {
      sum1 += std::log(r1);
      sum2 += std::log(r2);
      ++done;
      if (r == Regime::One) ++regime1;
    }
    cur = next.next;
  }

  LyapunovSpectrum spec;
  spec.lambda1 = sum1 / static_cast<double>(n);
  spec.lambda2 = sum2 / static_cast<double>(n);
  spec.n_iterations = n;
  spec.transient_discarded = transient;
  spec.seed = seed;
  spec.regime_fraction = static_cast<double>(regime1) / static_cast<double>(n);
  return spec;
}

std::vector<LyapunovEstimate> lyapunov_samples(const System& sys, const Box& init_box,
                                               std::size_t n, std::size_t transient,
                                               std::size_t n_samples,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LyapunovEstimate> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const State init = rng.state_in(init_box);
    const std::uint64_t tangent_seed = rng.next_u64();
    out.push_back(lyapunov(sys, init, n, transient, tangent_seed));
  }
  return out;
}

double mean_lambda(const std::vector<LyapunovEstimate>& estimates) {
  double sum = 0.0;
  for (const auto& e : estimates) sum += e.lambda_max;
  return estimates.empty() ? 0.0 : sum / static_cast<double>(estimates.size());
}

}  // namespace threshsim
