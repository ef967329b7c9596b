#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "golden.hpp"
#include "oracle.hpp"
#include "threshsim/detectors.hpp"
#include "threshsim/rng.hpp"
#include "threshsim/scenario.hpp"
#include "threshsim/simulate.hpp"
#include "threshsim/trace_io.hpp"

using namespace threshsim;

namespace {

Trace synthetic_regimes(std::initializer_list<int> labels) {
  // transitions() only inspects the label sequence; states are dummies.
  Trace tr;
  for (std::size_t i = 0; i <= labels.size(); ++i) {
    tr.states.push_back(State{0.0, 0.0});
    tr.gap.push_back(0.0);
  }
  for (int l : labels) tr.regimes.push_back(l == 1 ? Regime::One : Regime::Two);
  return tr;
}

}  // namespace

TEST_CASE("one monetary step records both states and one label") {
  const Trace tr = run_scenario(builtin_scenario("fed_policy"), 1);
  REQUIRE(tr.states.size() == 2);
  REQUIRE(tr.regimes.size() == 1);
  CHECK(tr.regimes[0] == Regime::One);
  CHECK(tr.states[0].a == 1.5);
  CHECK(tr.states[0].c == 2.5);
  CHECK(tr.states[1].a == 1.55);   // exact in double
  CHECK(tr.states[1].c == 2.315);  // exact in double
  CHECK(tr.gap[1] == tr.states[1].a - tr.states[1].c);
}

TEST_CASE("a global fixed point stays put") {
  const System sys{ScalarMap{MapFamily::Affine, 1.0, 0.0},
                   ScalarMap{MapFamily::Affine, 1.0, 0.0}, AveragingThreshold{0.5}};
  const Trace tr = simulate(sys, State{1.0, 1.0}, 10);
  REQUIRE(tr.states.size() == 11);
  for (const State& s : tr.states) {
    CHECK(s.a == 1.0);
    CHECK(s.c == 1.0);
  }
}

TEST_CASE("input validation") {
  const System sys = builtin_scenario("type_a").system;
  CHECK_THROWS_AS(simulate(sys, State{std::nan(""), 0.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(simulate(sys, State{0.0, 0.0}, 0), std::invalid_argument);
  SimulateOptions small;
  small.max_states = 10;
  CHECK_THROWS_AS(simulate(sys, State{0.0, 0.0}, 100, small), std::invalid_argument);
}

TEST_CASE("expanding-threshold run stays in regime 1 and pins a") {
  const Trace tr = run_scenario(builtin_scenario("divergent_threshold"), 100);
  REQUIRE(tr.regimes.size() == 100);
  for (Regime r : tr.regimes) CHECK(r == Regime::One);
  CHECK(std::abs(tr.states[100].a - 2.0) < 1e-10);
  CHECK(tr.states[100].a == golden::kDivergentA100);
}

TEST_CASE("overflow guard truncates the trace") {
  const System sys{ScalarMap{MapFamily::Affine, 2.0, 0.0},
                   ScalarMap{MapFamily::Affine, 2.0, 0.0},
                   AffineThreshold{0.0, 2.0, 0.0}};
  const Trace tr = simulate(sys, State{1e250, 1e250}, 10000);
  REQUIRE(tr.overflow_at.has_value());
  CHECK(*tr.overflow_at == tr.states.size());
  CHECK(tr.regimes.size() == tr.states.size());
  for (const State& s : tr.states) {
    CHECK(std::isfinite(s.a));
    CHECK(std::abs(s.a) <= 1e300);
  }
}

TEST_CASE("simulation is the fold of step") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const System sys{
        ScalarMap{MapFamily::Affine, rng.uniform(-1.2, 1.2), rng.uniform(-2.0, 2.0)},
        ScalarMap{MapFamily::Affine, rng.uniform(-1.2, 1.2), rng.uniform(-2.0, 2.0)},
        AffineThreshold{rng.uniform(-0.5, 0.5), rng.uniform(-0.9, 0.9),
                        rng.uniform(-1.0, 1.0)}};
    const Trace tr = simulate(sys, rng.state_in(Box{-5, 5, -5, 5}), 200);
    for (std::size_t k = 0; k + 1 < tr.states.size(); ++k) {
      const StepResult r = step(sys, tr.states[k]);
      CHECK(r.regime == tr.regimes[k]);
      CHECK(r.next.a == tr.states[k + 1].a);
      CHECK(r.next.c == tr.states[k + 1].c);
      CHECK(tr.gap[k] == tr.states[k].a - tr.states[k].c);
    }
  }
}

TEST_CASE("transition extraction by hand") {
  const Trace tr = synthetic_regimes({1, 1, 2, 2, 1});
  const TransitionSets ts = transitions(tr);
  CHECK(ts.t12 == std::vector<std::size_t>{1});
  CHECK(ts.t21 == std::vector<std::size_t>{3});
  CHECK(ts.regime1_count == 3);
  CHECK(ts.regime2_count == 2);

  const TransitionSets none = transitions(synthetic_regimes({1, 1, 1, 1}));
  CHECK(none.t12.empty());
  CHECK(none.t21.empty());

  Trace too_short;
  too_short.states.push_back(State{});
  CHECK_THROWS_AS(transitions(too_short), std::domain_error);
}

TEST_CASE("transition sets partition the switch indices") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const System sys{
        ScalarMap{MapFamily::Affine, rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0)},
        ScalarMap{MapFamily::Affine, rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0)},
        AveragingThreshold{rng.uniform(0.1, 0.9)}};
    const Trace tr = simulate(sys, rng.state_in(Box{-5, 5, -5, 5}), 500);
    const TransitionSets ts = transitions(tr);
    CHECK(ts.regime1_count + ts.regime2_count == tr.regimes.size());
    const std::ptrdiff_t diff = static_cast<std::ptrdiff_t>(ts.t12.size()) -
                                static_cast<std::ptrdiff_t>(ts.t21.size());
    CHECK(std::abs(diff) <= 1);
    std::size_t i12 = 0, i21 = 0;
    for (std::size_t n = 0; n + 1 < tr.regimes.size(); ++n) {
      const bool switched = tr.regimes[n] != tr.regimes[n + 1];
      const bool in12 = i12 < ts.t12.size() && ts.t12[i12] == n;
      const bool in21 = i21 < ts.t21.size() && ts.t21[i21] == n;
      CHECK(switched == (in12 || in21));
      CHECK(!(in12 && in21));
      if (in12) ++i12;
      if (in21) ++i21;
    }
  }
}

TEST_CASE("expanding preset switches twice each way before escaping") {
  const Trace tr = run_scenario(builtin_scenario("type_e"), 10000);
  REQUIRE(tr.overflow_at.has_value());
  CHECK(*tr.overflow_at == golden::kTypeEOverflowAt);
  const TransitionSets ts = transitions(tr);
  CHECK(ts.t12.size() == golden::kTypeET12);
  CHECK(ts.t21.size() == golden::kTypeET21);
}

TEST_CASE("limit detection: convergent preset") {
  const Trace tr = run_scenario(builtin_scenario("type_a"), 2000);
  const LimitVerdict v = detect_limit(tr, 1e-8, 100);
  REQUIRE(v.kind == LimitKind::Converged);
  CHECK(*v.limit_a == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(*v.limit_c == doctest::Approx(22.0 / 3.0).epsilon(1e-10));
  CHECK_FALSE(v.growth_rate.has_value());

  // verdict is stable under trace extension
  for (std::size_t n : {4000u, 8000u}) {
    const Trace longer = run_scenario(builtin_scenario("type_a"), n);
    CHECK(detect_limit(longer, 1e-8, 100).kind == LimitKind::Converged);
  }
}

TEST_CASE("limit detection: constant trace") {
  const System sys{ScalarMap{MapFamily::Affine, 1.0, 0.0},
                   ScalarMap{MapFamily::Affine, 1.0, 0.0}, AveragingThreshold{0.5}};
  const Trace tr = simulate(sys, State{1.0, 1.0}, 200);
  const LimitVerdict v = detect_limit(tr);
  CHECK(v.kind == LimitKind::Converged);
  CHECK(*v.limit_a == 1.0);
}

TEST_CASE("limit detection: expanding threshold diverges at the documented rate") {
  const Trace tr = run_scenario(builtin_scenario("divergent_threshold"), 200);
  const LimitVerdict v = detect_limit(tr, 1e-9, 50);
  REQUIRE(v.kind == LimitKind::Diverged);
  REQUIRE(v.growth_rate.has_value());
  CHECK(*v.growth_rate ==
        doctest::Approx(std::log(1.2)).epsilon(0.02));  // within 2 percent
}

TEST_CASE("limit detection: guard-tripped trace reports divergence") {
  const Trace tr = run_scenario(builtin_scenario("type_e"), 10000);
  const LimitVerdict v = detect_limit(tr, 1e-9, 100);
  CHECK(v.kind == LimitKind::Diverged);
  CHECK(v.growth_rate.has_value());
  CHECK(*v.growth_rate > 0.0);
}

TEST_CASE("limit detection kinds are mutually exclusive by construction") {
  const Trace tr = run_scenario(builtin_scenario("contraction_failure"), 10000);
  const LimitVerdict v = detect_limit(tr);
  CHECK(v.kind == LimitKind::Converged);
  CHECK(*v.limit_a == golden::kCfLimitA);
  CHECK(*v.limit_c == golden::kCfLimitC);
  CHECK_FALSE(v.growth_rate.has_value());
  CHECK_FALSE(v.period.has_value());
}

TEST_CASE("visitation verdicts") {
  SUBCASE("single-regime orbit") {
    const Trace tr = run_scenario(builtin_scenario("divergent_threshold"), 100);
    const VisitationVerdict v = visitation(tr, 0.5);
    CHECK(v.kind == VisitationKind::EventuallyRegime1);
    CHECK_FALSE(v.last_switch_index.has_value());
    CHECK(v.tail_limsup_gap < 0.0);  // a stays below c throughout
  }
  SUBCASE("alternating orbit") {
    const System sys{ScalarMap{MapFamily::Affine, 0.0, 5.0},
                     ScalarMap{MapFamily::Affine, 0.0, -5.0},
                     AffineThreshold{0.0, 0.0, 0.0}};
    const Trace tr = simulate(sys, State{-1.0, 0.0}, 100);
    const VisitationVerdict v = visitation(tr, 0.5);
    CHECK(v.kind == VisitationKind::PersistentSwitching);
    CHECK(v.tail_liminf_gap < 0.0);
    CHECK(v.tail_limsup_gap > 0.0);
    REQUIRE(v.last_switch_index.has_value());
  }
  SUBCASE("policy orbit settles into regime 2") {
    const Trace tr = run_scenario(builtin_scenario("fed_policy"), 200);
    const VisitationVerdict v = visitation(tr, 0.5);
    CHECK(v.kind == VisitationKind::EventuallyRegime2);
    REQUIRE(v.last_switch_index.has_value());
    CHECK(*v.last_switch_index == golden::kFedFirstRegime2Quarter - 1);
  }
  SUBCASE("short traces are rejected") {
    const Trace tr = run_scenario(builtin_scenario("type_a"), 5);
    CHECK_THROWS_AS(visitation(tr, 0.5), std::invalid_argument);
  }
}

TEST_CASE("sync gap") {
  SUBCASE("synchronizing averaging system") {
    const System sys{ScalarMap{MapFamily::Affine, 0.5, 1.0},
                     ScalarMap{MapFamily::Affine, 0.5, 1.0}, AveragingThreshold{0.5}};
    const Trace tr = simulate(sys, State{0.0, 5.0}, 200);
    CHECK(sync_gap(tr, 50) < 1e-6);
  }
  SUBCASE("diverging threshold keeps growing") {
    const Trace longer = run_scenario(builtin_scenario("divergent_threshold"), 200);
    const Trace shorter = run_scenario(builtin_scenario("divergent_threshold"), 100);
    CHECK(sync_gap(longer, 10) > 1e3);
    CHECK(sync_gap(longer, 10) > sync_gap(shorter, 10));
  }
}

TEST_CASE("an eventually-regime-1 tail never consults the second map") {
  const Scenario base = builtin_scenario("divergent_threshold");
  const Trace tr = run_scenario(base, 150);

  Scenario altered = base;
  altered.system.g = ScalarMap{MapFamily::Affine, 99.0, -7.0};
  const Trace tr2 = run_scenario(altered, 150);

  REQUIRE(tr.states.size() == tr2.states.size());
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    CHECK(tr.states[k].a == tr2.states[k].a);
    CHECK(tr.states[k].c == tr2.states[k].c);
  }
}

TEST_CASE("trace CSV format") {
  const Trace tr = run_scenario(builtin_scenario("fed_policy"), 1);
  std::ostringstream os;
  write_trace_csv(os, tr, {{"scenario", "fed_policy"}, {"steps", "1"}});
  const std::string text = os.str();
  CHECK(text.find("# scenario: fed_policy\n") != std::string::npos);
  CHECK(text.find("step,a,c,regime,gap\n") != std::string::npos);
  CHECK(text.find("0,1.5,2.5,1,-1\n") != std::string::npos);
  CHECK(text.find("1,1.55,2.315,") != std::string::npos);

  // 17 significant digits round-trip exactly
  CHECK(std::stod(format_double(22.0 / 3.0)) == 22.0 / 3.0);
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("double-precision trajectory matches the reference implementation") {
  const Trace tr = run_scenario(builtin_scenario("type_e"), 10000);
  const auto ref = oracle::run<double>(oracle::type_e(), 0.5, 0.7, 10000);
  REQUIRE(tr.states.size() == ref.a.size());
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    CHECK(tr.states[k].a == ref.a[k]);
    CHECK(tr.states[k].c == ref.c[k]);
  }
}
