#include "threshsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "overloaded.hpp"

namespace threshsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError("scenario: " + where + ": " + what);
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required field '" + key + "'");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown field '" + it.key() + "'");
  }
}

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "value must be finite");
  return x;
}

ScalarMap map_from_json(const json& j, const std::string& where) {
  const std::string family = require_field(j, "family", where).get<std::string>();
  reject_unknown(j, {"family", "slope", "intercept"}, where);
  ScalarMap m;
  if (family == "affine") {
    m.family = MapFamily::Affine;
  } else if (family == "affine_mod1") {
    m.family = MapFamily::AffineMod1;
  } else {
    fail(where, "unknown map family '" + family + "' (affine | affine_mod1)");
  }
  m.slope = finite_number(require_field(j, "slope", where), where + ".slope");
  m.intercept = finite_number(require_field(j, "intercept", where), where + ".intercept");
  return m;
}

ThresholdMap threshold_from_json(const json& j, const std::string& where) {
  const std::string family = require_field(j, "family", where).get<std::string>();
  if (family == "affine") {
    reject_unknown(j, {"family", "gamma", "delta", "epsilon"}, where);
    AffineThreshold t;
    t.gamma = finite_number(require_field(j, "gamma", where), where + ".gamma");
    t.delta = finite_number(require_field(j, "delta", where), where + ".delta");
    t.epsilon = finite_number(require_field(j, "epsilon", where), where + ".epsilon");
    return t;
  }
  if (family == "sine") {
    reject_unknown(j, {"family", "amp", "delta", "offset"}, where);
    SineThreshold t;
    t.amp = finite_number(require_field(j, "amp", where), where + ".amp");
    t.delta = finite_number(require_field(j, "delta", where), where + ".delta");
    t.offset = finite_number(require_field(j, "offset", where), where + ".offset");
    return t;
  }
  if (family == "averaging") {
    reject_unknown(j, {"family", "weight"}, where);
    AveragingThreshold t;
    t.weight = finite_number(require_field(j, "weight", where), where + ".weight");
    if (!(t.weight > 0.0 && t.weight < 1.0)) {
      fail(where + ".weight", "averaging weight must lie strictly between 0 and 1");
    }
    return t;
  }
  fail(where, "unknown threshold family '" + family + "' (affine | sine | averaging)");
}

json map_to_json(const ScalarMap& m) {
  ordered_json j;
  j["family"] = m.family == MapFamily::Affine ? "affine" : "affine_mod1";
  j["slope"] = m.slope;
  j["intercept"] = m.intercept;
  return j;
}

json threshold_to_json(const ThresholdMap& h) {
  return std::visit(detail::overloaded{
                        [](const AffineThreshold& t) {
                          ordered_json j;
                          j["family"] = "affine";
                          j["gamma"] = t.gamma;
                          j["delta"] = t.delta;
                          j["epsilon"] = t.epsilon;
                          return j;
                        },
                        [](const SineThreshold& t) {
                          ordered_json j;
                          j["family"] = "sine";
                          j["amp"] = t.amp;
                          j["delta"] = t.delta;
                          j["offset"] = t.offset;
                          return j;
                        },
                        [](const AveragingThreshold& t) {
                          ordered_json j;
                          j["family"] = "averaging";
                          j["weight"] = t.weight;
                          return j;
                        },
                    },
                    h);
}

Scenario make(const std::string& name, System sys, State init, RunConfig run,
              std::string notes) {
  Scenario s;
  s.name = name;
  s.system = sys;
  s.initial = init;
  s.run = run;
  s.notes = std::move(notes);
  return s;
}

}  // namespace

System policy_system(const PolicyParams& params, std::size_t quarter) {
  double slack = 0.0;
  if (params.slack.empty()) {
    throw std::domain_error("policy_system: slack series is empty");
  } else if (params.slack.size() == 1) {
    slack = params.slack.front();
  } else if (quarter < params.slack.size()) {
    slack = params.slack[quarter];
  } else {
    throw std::domain_error("policy_system: quarter " + std::to_string(quarter) +
                            " is out of range for a slack series of length " +
                            std::to_string(params.slack.size()));
  }
  return System{
      ScalarMap{MapFamily::Affine, 0.9, 0.2},
      ScalarMap{MapFamily::Affine, 0.85, 0.3},
      AffineThreshold{0.15, 0.8, 0.05 * (params.target - 0.1 * slack)},
  };
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "type_a",     "type_e",           "contraction_failure",
      "chaos_sine", "divergent_threshold", "fed_policy",
  };
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "type_a") {
    return make(
        name,
        System{ScalarMap{MapFamily::Affine, 0.5, 2.0},
               ScalarMap{MapFamily::Affine, 1.5, -3.0},
               AffineThreshold{0.3, 0.7, 1.0}},
        State{0.0, 0.0}, RunConfig{2000, 1e-9, 100, 42},
        "Two-regime affine preset with a single stable interior equilibrium at "
        "(4, 22/3), eigenvalues (0.5, 0.7). Reference claim: global convergence "
        "from every initial state. Observed: the basin is large but not global; "
        "orbits that start in regime 2 with a above 6 and the threshold well "
        "below escape to infinity, since the threshold then trails at about "
        "0.375 of a and never catches it.");
  }
  if (name == "type_e") {
    return make(
        name,
        System{ScalarMap{MapFamily::Affine, 2.5, -0.5},
               ScalarMap{MapFamily::Affine, -2.3, 2.3},
               AffineThreshold{0.4, 0.6, 0.1}},
        State{0.5, 0.7}, RunConfig{2000, 1e-9, 100, 42},
        "Both regimes expanding with opposite orientation. Reference claim: "
        "sustained chaos from (0.5, 0.7) with leading exponent near 0.28. "
        "Observed: the chaotic bouncing is transient; once a dips low inside "
        "regime 1 the 2.5x expansion drives a to -infinity while the threshold "
        "trails, so orbits diverge. Any bounded stretch has per-step tangent "
        "growth of at least ln 2.3 ~ 0.83, which also rules out a sustained "
        "exponent near 0.28.");
  }
  if (name == "contraction_failure") {
    return make(
        name,
        System{ScalarMap{MapFamily::Affine, 0.5, 10.0},
               ScalarMap{MapFamily::Affine, 0.5, 15.0},
               AffineThreshold{0.1, 0.8, 2.0}},
        State{15.0, 22.0}, RunConfig{10000, 1e-9, 100, 42},
        "Both maps contract with constant 0.5 yet the combined Lipschitz budget "
        "is 0.9, so single-regime confinement decides the outcome. Reference "
        "claim: from (15, 22) the orbit switches regimes indefinitely and "
        "approaches a limit cycle. Observed: it never leaves regime 1 and "
        "converges to the boundary equilibrium (20, 20); the interior regime-2 "
        "point (30, 25) also exists and attracts other initial states.");
  }
  if (name == "chaos_sine") {
    return make(
        name,
        System{ScalarMap{MapFamily::AffineMod1, 3.0, 0.0},
               ScalarMap{MapFamily::AffineMod1, 3.0, 0.5},
               SineThreshold{0.4, 0.5, 0.3}},
        State{0.1, 0.2}, RunConfig{5000, 1e-9, 100, 42},
        "Expanding circle maps (slope 3) under a sine-feedback threshold. The "
        "sequence stays in [0, 1) by construction and the threshold contracts "
        "toward a bounded band, so the chaos is sustained. The leading "
        "exponent equals the expansion rate ln 3 ~ 1.0986; a reference value "
        "of 1.087 is sometimes quoted and the deviation is reported rather "
        "than resolved.");
  }
  if (name == "divergent_threshold") {
    return make(
        name,
        System{ScalarMap{MapFamily::Affine, 0.5, 1.0},
               ScalarMap{MapFamily::Affine, 0.5, 3.0},
               AffineThreshold{-0.1, 1.2, 0.5}},
        State{1.0, 2.5}, RunConfig{200, 1e-9, 100, 42},
        "Component maps contract (constant 0.5) but the threshold recursion "
        "expands: the coefficient on c is 1.2. From (1, 2.5) the orbit stays "
        "in regime 1, a -> 2, and c grows like 1.2^n without bound. The "
        "c-coefficient is the bifurcation knob: below 1 the system settles, "
        "above 1 the threshold runs away, and at exactly 1 it climbs "
        "linearly.");
  }
  if (name == "fed_policy") {
    Scenario s = make(
        name, policy_system(PolicyParams{2.0, {2.0}}, 0), State{1.5, 2.5},
        RunConfig{200, 1e-6, 50, 42},
        "Quarterly inflation/threshold model with constant slack W = 2, which "
        "makes the threshold intercept 0.05*(2 - 0.1*W) = 0.09. Reference "
        "claims: a first regime switch near quarter 8 and persistent switching "
        "that synchronizes both series near 2.3. Observed: the first switch "
        "lands at quarter 11, after which the orbit stays in regime 2 and "
        "converges to the interior equilibrium (2, 1.95), leaving a persistent "
        "0.05 gap between inflation and threshold.");
    s.policy_target = 2.0;
    return s;
  }
  std::ostringstream msg;
  msg << "unknown scenario '" << name << "'; valid names:";
  for (const auto& n : builtin_names()) msg << " " << n;
  throw ScenarioError(msg.str());
}

Scenario scenario_from_json(const json& j) {
  const std::string where = "$";
  reject_unknown(j,
                 {"version", "name", "system", "initial", "run", "slack_series",
                  "policy_target", "notes"},
                 where);

  const json& version = require_field(j, "version", where);
  if (!version.is_number_integer() || version.get<int>() != 1) {
    fail("$.version", "unsupported scenario version (expected 1)");
  }

  Scenario s;
  const json& name = require_field(j, "name", where);
  if (!name.is_string()) fail("$.name", "expected a string");
  s.name = name.get<std::string>();

  const json& sys = require_field(j, "system", where);
  reject_unknown(sys, {"f", "g", "h"}, "$.system");
  s.system.f = map_from_json(require_field(sys, "f", "$.system"), "$.system.f");
  s.system.g = map_from_json(require_field(sys, "g", "$.system"), "$.system.g");
  s.system.h = threshold_from_json(require_field(sys, "h", "$.system"), "$.system.h");

  const json& init = require_field(j, "initial", where);
  reject_unknown(init, {"a", "c"}, "$.initial");
  s.initial.a = finite_number(require_field(init, "a", "$.initial"), "$.initial.a");
  s.initial.c = finite_number(require_field(init, "c", "$.initial"), "$.initial.c");

  if (auto it = j.find("run"); it != j.end()) {
    reject_unknown(*it, {"n_steps", "tol", "window", "seed"}, "$.run");
    if (auto f = it->find("n_steps"); f != it->end()) {
      if (!f->is_number_unsigned() || f->get<std::uint64_t>() == 0) {
        fail("$.run.n_steps", "expected a positive integer");
      }
      s.run.n_steps = f->get<std::size_t>();
    }
    if (auto f = it->find("tol"); f != it->end()) {
      s.run.tol = finite_number(*f, "$.run.tol");
      if (!(s.run.tol > 0.0)) fail("$.run.tol", "tolerance must be positive");
    }
    if (auto f = it->find("window"); f != it->end()) {
      if (!f->is_number_unsigned() || f->get<std::uint64_t>() == 0) {
        fail("$.run.window", "expected a positive integer");
      }
      s.run.window = f->get<std::size_t>();
    }
    if (auto f = it->find("seed"); f != it->end()) {
      if (!f->is_number_unsigned()) fail("$.run.seed", "expected an unsigned integer");
      s.run.seed = f->get<std::uint64_t>();
    }
  }

  if (auto it = j.find("slack_series"); it != j.end()) {
    if (!it->is_array() || it->empty()) {
      fail("$.slack_series", "expected a non-empty array of numbers");
    }
    std::vector<double> series;
    series.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) {
      series.push_back(finite_number((*it)[i],
                                     "$.slack_series[" + std::to_string(i) + "]"));
    }
    s.slack_series = std::move(series);
  }

  if (auto it = j.find("policy_target"); it != j.end()) {
    s.policy_target = finite_number(*it, "$.policy_target");
  }

  if (auto it = j.find("notes"); it != j.end()) {
    if (!it->is_string()) fail("$.notes", "expected a string");
    s.notes = it->get<std::string>();
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column for a usable message
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ScenarioError("scenario: parse error in '" + path.string() + "' at line " +
                        std::to_string(line) + ", column " + std::to_string(col) +
                        ": " + e.what());
  }
  return scenario_from_json(j);
}

ordered_json scenario_json(const Scenario& s) {
  ordered_json j;
  j["version"] = 1;
  j["name"] = s.name;
  j["system"]["f"] = map_to_json(s.system.f);
  j["system"]["g"] = map_to_json(s.system.g);
  j["system"]["h"] = threshold_to_json(s.system.h);
  j["initial"]["a"] = s.initial.a;
  j["initial"]["c"] = s.initial.c;
  j["run"]["n_steps"] = s.run.n_steps;
  j["run"]["tol"] = s.run.tol;
  j["run"]["window"] = s.run.window;
  j["run"]["seed"] = s.run.seed;
  if (s.slack_series) j["slack_series"] = *s.slack_series;
  if (s.policy_target != 2.0 || s.slack_series) j["policy_target"] = s.policy_target;
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("scenario: cannot write '" + path.string() + "'");
  out << scenario_json(s).dump(2) << "\n";
}

Trace run_scenario(const Scenario& scenario, std::optional<std::size_t> steps_override,
                   const SimulateOptions& opts) {
  const std::size_t n = steps_override.value_or(scenario.run.n_steps);
  if (scenario.slack_series) {
    PolicyParams params{scenario.policy_target, *scenario.slack_series};
    if (params.slack.size() > 1 && n > params.slack.size()) {
      throw ScenarioError(
          "scenario: n_steps exceeds the slack series length (" +
          std::to_string(params.slack.size()) + ")");
    }
    return simulate([params](std::size_t q) { return policy_system(params, q); },
                    scenario.initial, n, opts);
  }
  return simulate(scenario.system, scenario.initial, n, opts);
}

bool operator==(const ScalarMap& a, const ScalarMap& b) {
  return a.family == b.family && a.slope == b.slope && a.intercept == b.intercept;
}

namespace {
bool threshold_equal(const ThresholdMap& a, const ThresholdMap& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      detail::overloaded{
          [&](const AffineThreshold& x) {
            const auto& y = std::get<AffineThreshold>(b);
            return x.gamma == y.gamma && x.delta == y.delta && x.epsilon == y.epsilon;
          },
          [&](const SineThreshold& x) {
            const auto& y = std::get<SineThreshold>(b);
            return x.amp == y.amp && x.delta == y.delta && x.offset == y.offset;
          },
          [&](const AveragingThreshold& x) {
            const auto& y = std::get<AveragingThreshold>(b);
            return x.weight == y.weight;
          },
      },
      a);
}
}  // namespace

bool operator==(const System& a, const System& b) {
  return a.f == b.f && a.g == b.g && threshold_equal(a.h, b.h);
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.system == b.system && a.initial.a == b.initial.a &&
         a.initial.c == b.initial.c && a.run.n_steps == b.run.n_steps &&
         a.run.tol == b.run.tol && a.run.window == b.run.window &&
         a.run.seed == b.run.seed && a.slack_series == b.slack_series &&
         a.policy_target == b.policy_target && a.notes == b.notes;
}

}  // namespace threshsim
