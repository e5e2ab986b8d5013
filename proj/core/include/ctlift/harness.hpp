/* Copyright 2026 the ctlift authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

//! \file harness.hpp
//! Scenario runner: builds space forms and profiles from key-value configs,
//! samples seeded points, executes the verification suites and emits
//! deterministic plain-text reports.  Identical configs produce byte
//! identical report bodies; the runtime line is kept out of the body.
//!
//! Scenarios with deliberate violations (perturbed b1, mu != lambda',
//! non-case lambda) carry per-suite expectations: a suite in "violation"
//! mode passes when its detector fires, and the case2 holomorphic suite in
//! "non-constant" mode passes when exactly the mixed blocks deviate.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ctlift/curvature.hpp"
#include "ctlift/lifts.hpp"
#include "ctlift/profiles.hpp"
#include "ctlift/spaceform.hpp"

namespace ctlift {

enum class Suite {
  Structure,
  Integrability,
  Kahler,
  Connection,
  Curvature,
  Einstein,
  Holomorphic,
};

std::string to_string(Suite suite);
Suite suite_from_string(const std::string& name);
std::vector<Suite> all_suites();

enum class Expectation { Hold, Violation, NonConstant };

std::string to_string(Expectation e);
Expectation expectation_from_string(const std::string& name);

// Tolerance ladder: algebraic identities, first-order finite-difference
// checks, second-order finite-difference checks, detection thresholds for
// deliberate violations.
struct Tolerances {
  double tight = 1e-12;
  double fd = 1e-6;
  double curvature = 1e-4;
  double detect = 1e-3;
};

struct ScenarioConfig {
  std::string name = "adhoc";
  std::string description;

  int n = 2;
  double c = 0.0;
  // flat | case1 | case2 | case3 | example-lambda1
  std::string profile = "flat";
  double B = 1.0;
  double k = 2.0;
  double lambda_const = 1.0;  // case3's constant lambda
  double b1_offset = 0.0;
  double mu_offset = 0.0;

  double t_lo = 0.0;
  double t_hi = 1.0;
  int samples = 50;
  std::uint64_t seed = 1;
  double chart_radius = 0.0;  // 0 = default for (n, c)

  Tolerances tol;
  std::vector<Suite> suites = all_suites();
  std::map<Suite, Expectation> expect;  // absent = Hold

  std::string report_path;  // empty = stdout only

  Expectation expectation(Suite s) const {
    auto it = expect.find(s);
    return it == expect.end() ? Expectation::Hold : it->second;
  }
};

struct CheckRecord {
  Suite suite = Suite::Structure;
  std::string name;
  std::string anchor;  // e.g. "Thm 3 / N(delta,delta) closed form"
  std::string points;  // short summary of what was sampled
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string note;
};

struct Report {
  ScenarioConfig config;
  std::vector<CheckRecord> checks;
  std::map<Suite, std::string> suite_verdicts;  // pass | fail | skip
  bool overall = false;
  double runtime_ms = 0.0;

  // Deterministic report text, runtime excluded.
  std::string body() const;
  // body plus the runtime line.
  std::string full_text() const;
};

// Deterministic seeded sampling: q uniform in the ball of radius
// chart_radius/2, p direction-uniform then scaled so t is uniform in
// t_range.  Identical arguments reproduce bit-identical points.
std::vector<CotangentPoint> sample_points(const SpaceForm& M, int count,
                                          std::uint64_t seed,
                                          std::pair<double, double> t_range);

SpaceForm spaceform_from_config(const ScenarioConfig& cfg);
CoefficientProfile profile_from_config(const ScenarioConfig& cfg);

// Runs the requested suites; failing checks are recorded, never thrown.
// Singular or non-positive profiles mark the affected suite as skipped with
// the reason in the note field.
Report run_scenario(const ScenarioConfig& cfg);

// The default verification set covering the case families, the flat
// profile and the deliberate-violation scenarios over n in {2, 3, 5}.
std::vector<ScenarioConfig> builtin_scenarios();

// Throws std::invalid_argument for unknown names.
ScenarioConfig scenario_by_name(const std::string& name);

// Plain-text key-value scenario definition ("key = value" lines, '#'
// comments).  Unknown keys are rejected.
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin = "config");

// CTLIFT_SEED and CTLIFT_REPORT override seed and report path.
void apply_env_overrides(ScenarioConfig& cfg);

}  // namespace ctlift
