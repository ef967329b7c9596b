#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "golden.hpp"
#include "threshsim/affine.hpp"
#include "threshsim/basin.hpp"
#include "threshsim/lyapunov.hpp"
#include "threshsim/period.hpp"
#include "threshsim/rng.hpp"
#include "threshsim/scenario.hpp"
#include "threshsim/simulate.hpp"

using namespace threshsim;

TEST_CASE("single-regime affine orbit has the triangular-matrix exponent") {
  const System sys{ScalarMap{MapFamily::Affine, 0.5, 0.3},
                   ScalarMap{MapFamily::Affine, 0.5, 0.3},
                   AffineThreshold{0.0, 0.5, 0.2}};
  const LyapunovEstimate e = lyapunov(sys, State{0.0, 0.0}, 20000, 1000, 42);
  CHECK(e.lambda_max == doctest::Approx(std::log(0.5)).epsilon(1e-3));
  CHECK(e.n_iterations == 20000);
  CHECK(e.seed == 42);
}

TEST_CASE("analytic exponent oracle over seeded single-regime systems") {
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    // regime-1 interior fixed point with the orbit pinned inside regime 1
    const double alpha = (rng.unit() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 0.9);
    const double delta = (rng.unit() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 0.9);
    if (std::abs(std::log(std::abs(alpha)) - std::log(std::abs(delta))) < 0.05) {
      continue;  // avoid near-degenerate spectra, slow to separate
    }
    const double a_star = rng.uniform(-3.0, 3.0);
    const double offset = rng.uniform(0.5, 3.0);
    const double c_star = a_star + offset;
    const double gamma = rng.uniform(-0.2, 0.2);
    AffineParams p;
    p.alpha1 = alpha;
    p.beta1 = a_star * (1.0 - alpha);
    p.alpha2 = rng.uniform(-0.9, 0.9);
    p.beta2 = rng.uniform(-1.0, 1.0);
    p.gamma = gamma;
    p.delta = delta;
    p.epsilon = c_star - gamma * a_star - delta * c_star;

    const State init{a_star + offset * 0.1, c_star - offset * 0.1};
    const LyapunovEstimate e = lyapunov(p.to_system(), init, 20000, 2000, 1000 + i);
    const double expected = std::max(std::log(std::abs(alpha)),
                                     std::log(std::abs(delta)));
    CHECK(std::abs(e.lambda_max - expected) <= 1e-3);
    CHECK(e.regime_fraction == 1.0);
  }
}

TEST_CASE("expanding circle maps give the expansion-rate exponent") {
  const Scenario sc = builtin_scenario("chaos_sine");
  const LyapunovEstimate e = lyapunov(sc.system, sc.initial, 1'000'000, 1000, 42);
  CHECK(e.lambda_max >= 1.05);
  CHECK(e.lambda_max <= 1.10);
  CHECK(e.lambda_max == doctest::Approx(std::log(3.0)).epsilon(1e-4));
  CHECK(e.regime_fraction > 0.0);
  CHECK(e.regime_fraction < 1.0);
}

TEST_CASE("expanding affine preset overflows mid-estimate") {
  // the two-sided expansion escapes after a short transient, so the estimator
  // cannot finish; the partial estimate reflects the runaway regime-1 rate
  const Scenario sc = builtin_scenario("type_e");
  CHECK_THROWS_AS(lyapunov(sc.system, sc.initial, 1'000'000, 1000, 42),
                  OrbitOverflowError);
  try {
    lyapunov(sc.system, sc.initial, 1'000'000, 0, 42);
  } catch (const OrbitOverflowError& err) {
    CHECK(err.partial.n_iterations > 0);
    CHECK(err.partial.n_iterations < 1000);
    CHECK(err.partial.lambda_max > 0.5);
  }
}

TEST_CASE("estimates are reproducible bit for bit") {
  const Scenario sc = builtin_scenario("chaos_sine");
  const LyapunovEstimate e1 = lyapunov(sc.system, sc.initial, 50000, 500, 7);
  const LyapunovEstimate e2 = lyapunov(sc.system, sc.initial, 50000, 500, 7);
  CHECK(e1.lambda_max == e2.lambda_max);
  CHECK(e1.regime_fraction == e2.regime_fraction);
}

TEST_CASE("iteration and state validation") {
  const Scenario sc = builtin_scenario("chaos_sine");
  CHECK_THROWS_AS(lyapunov(sc.system, sc.initial, 100, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lyapunov(sc.system, State{std::nan(""), 1.0}, 20000, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("two-vector spectrum of a constant triangular system") {
  const System sys{ScalarMap{MapFamily::Affine, 0.5, 0.3},
                   ScalarMap{MapFamily::Affine, 0.5, 0.3},
                   AffineThreshold{0.1, 0.25, 0.2}};
  const LyapunovSpectrum s = lyapunov_spectrum(sys, State{0.0, 0.0}, 20000, 1000, 42);
  CHECK(s.lambda1 == doctest::Approx(std::log(0.5)).epsilon(1e-3));
  CHECK(s.lambda2 == doctest::Approx(std::log(0.25)).epsilon(1e-3));
}

TEST_CASE("seeded multi-sample runs are reproducible") {
  const Scenario sc = builtin_scenario("chaos_sine");
  const auto runs1 = lyapunov_samples(sc.system, Box{0, 1, 0, 1}, 20000, 500, 3, 42);
  const auto runs2 = lyapunov_samples(sc.system, Box{0, 1, 0, 1}, 20000, 500, 3, 42);
  REQUIRE(runs1.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(runs1[i].lambda_max == runs2[i].lambda_max);
  }
  CHECK(mean_lambda(runs1) == doctest::Approx(std::log(3.0)).epsilon(1e-3));
}

TEST_CASE("period detection") {
  SUBCASE("settled fixed point is filtered out") {
    const Trace tr = run_scenario(builtin_scenario("contraction_failure"), 10000);
    const PeriodReport r = detect_period(tr, 64, 1e-6);
    CHECK_FALSE(r.period.has_value());
    CHECK(r.residual < 1e-6);  // the p=1 match that was filtered
  }
  SUBCASE("negation two-cycle") {
    const System sys{ScalarMap{MapFamily::Affine, -1.0, 0.0},
                     ScalarMap{MapFamily::Affine, 1.0, 0.0},
                     AffineThreshold{0.0, 0.0, 10.0}};
    const Trace tr = simulate(sys, State{0.5, 10.0}, 256);
    const PeriodReport r = detect_period(tr, 64, 1e-6);
    REQUIRE(r.period.has_value());
    CHECK(*r.period == 2);
    REQUIRE(r.cycle_points.has_value());
    CHECK(r.cycle_points->size() == 2);
    CHECK(r.residual == 0.0);
  }
  SUBCASE("quarter rotation has minimal period 4") {
    const System sys{ScalarMap{MapFamily::AffineMod1, 1.0, 0.25},
                     ScalarMap{MapFamily::AffineMod1, 1.0, 0.25},
                     AffineThreshold{0.0, 0.0, 5.0}};
    const Trace tr = simulate(sys, State{0.1, 5.0}, 256);
    const PeriodReport r = detect_period(tr, 64, 1e-6);
    REQUIRE(r.period.has_value());
    CHECK(*r.period == 4);  // divisors 1 and 2 must have been rejected
    CHECK(r.residual < 1e-12);
  }
  SUBCASE("chaotic orbit yields no period") {
    const Trace tr = run_scenario(builtin_scenario("chaos_sine"), 2000);
    CHECK_FALSE(detect_period(tr, 64, 1e-6).period.has_value());
  }
  SUBCASE("max_period clamps to the trace length") {
    const System sys{ScalarMap{MapFamily::Affine, -1.0, 0.0},
                     ScalarMap{MapFamily::Affine, 1.0, 0.0},
                     AffineThreshold{0.0, 0.0, 10.0}};
    const Trace tr = simulate(sys, State{0.5, 10.0}, 7);
    const PeriodReport r = detect_period(tr, 1000, 1e-6);
    REQUIRE(r.period.has_value());  // 8 states still admit p <= 2
    CHECK(*r.period == 2);
  }
}

TEST_CASE("basin sampling of the contraction-failure preset") {
  const System sys = builtin_scenario("contraction_failure").system;
  const BasinGrid grid = basin_sample(sys, Box{10, 35, 10, 35}, 50, 50, 2000, 1e-9);
  REQUIRE(grid.attractors.size() == 2);
  CHECK(grid.attractors[0].a == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(grid.attractors[0].c == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(grid.attractors[1].a == doctest::Approx(30.0).epsilon(1e-9));
  CHECK(grid.attractors[1].c == doctest::Approx(25.0).epsilon(1e-9));

  std::size_t n0 = 0, n1 = 0, other = 0;
  for (int label : grid.labels) {
    if (label == 0) ++n0;
    else if (label == 1) ++n1;
    else ++other;
  }
  CHECK(n0 == golden::kCfBasinBoundaryCells);
  CHECK(n1 == golden::kCfBasinInteriorCells);
  CHECK(other == 0);
}

TEST_CASE("basin sampling of the convergent preset has a divergent corner") {
  const System sys = builtin_scenario("type_a").system;
  const BasinGrid grid = basin_sample(sys, Box{0, 10, 0, 10}, 20, 20, 2000, 1e-9);
  REQUIRE(grid.attractors.size() == 1);
  std::size_t conv = 0, div = 0;
  for (int label : grid.labels) {
    if (label == 0) ++conv;
    if (label == BasinGrid::kDiverged) ++div;
  }
  CHECK(conv == golden::kTypeABasinConverged);
  CHECK(div == golden::kTypeABasinDiverged);

  // labels are stable under doubling the step budget
  const BasinGrid grid2 = basin_sample(sys, Box{0, 10, 0, 10}, 20, 20, 4000, 1e-9);
  CHECK(grid2.labels == grid.labels);
}

TEST_CASE("uniform expansion diverges from every cell") {
  const System sys{ScalarMap{MapFamily::Affine, 2.0, 0.0},
                   ScalarMap{MapFamily::Affine, 2.0, 0.0},
                   AffineThreshold{0.0, 2.0, 0.0}};
  const BasinGrid grid = basin_sample(sys, Box{1, 2, 1, 2}, 5, 5, 2000, 1e-9);
  for (int label : grid.labels) CHECK(label == BasinGrid::kDiverged);
  CHECK(grid.attractors.empty());
}

TEST_CASE("basin grid validation and export") {
  const System sys = builtin_scenario("type_a").system;
  CHECK_THROWS_AS(basin_sample(sys, Box{0, 1, 0, 1}, 1, 5, 100, 1e-9),
                  std::invalid_argument);

  const BasinGrid grid = basin_sample(sys, Box{0, 10, 0, 10}, 4, 4, 2000, 1e-9);
  std::ostringstream os;
  write_basin_csv(os, grid, {{"scenario", "type_a"}});
  const std::string text = os.str();
  CHECK(text.find("row,col,a0,c0,label\n") != std::string::npos);
  std::size_t rows = 0;
  for (char ch : text) rows += ch == '\n';
  CHECK(rows >= 17);  // header + 16 cells
  CHECK(basin_label_name(grid, BasinGrid::kDiverged) == "diverged");
}
