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

//! Command line front end: `ctlift verify` runs verification scenarios and
//! writes deterministic reports, `ctlift list-scenarios` shows the built-in
//! set.  Exit code 0 iff every executed scenario passes.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctlift/harness.hpp"

namespace {

struct VerifyOptions {
  std::vector<std::string> scenario_names;
  bool run_all = false;
  std::string config_path;

  // Ad-hoc / override flags with presence tracking handled by CLI11 counts.
  ctlift::ScenarioConfig flags;
  std::vector<std::string> suite_list;
  std::vector<std::string> tol_list;     // key=value
  std::vector<std::string> expect_list;  // suite=expectation
  std::string report_path;
};

std::pair<std::string, std::string> split_kv(const std::string& s,
                                             const std::string& what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos)
    throw CLI::ValidationError(what + " expects key=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

void apply_overrides(const CLI::App& verify, const VerifyOptions& opt,
                     ctlift::ScenarioConfig& cfg) {
  auto given = [&](const std::string& flag) {
    return verify.count(flag) > 0;
  };

  if (given("--name")) cfg.name = opt.flags.name;
  if (given("--n")) cfg.n = opt.flags.n;
  if (given("--c")) cfg.c = opt.flags.c;
  if (given("--case")) cfg.profile = opt.flags.profile;
  if (given("--B")) cfg.B = opt.flags.B;
  if (given("--k")) cfg.k = opt.flags.k;
  if (given("--lambda-const")) cfg.lambda_const = opt.flags.lambda_const;
  if (given("--b1-offset")) cfg.b1_offset = opt.flags.b1_offset;
  if (given("--mu-offset")) cfg.mu_offset = opt.flags.mu_offset;
  if (given("--t-lo")) cfg.t_lo = opt.flags.t_lo;
  if (given("--t-hi")) cfg.t_hi = opt.flags.t_hi;
  if (given("--samples")) cfg.samples = opt.flags.samples;
  if (given("--seed")) cfg.seed = opt.flags.seed;
  if (given("--chart-radius")) cfg.chart_radius = opt.flags.chart_radius;
  if (given("--report")) cfg.report_path = opt.report_path;

  if (given("--suites")) {
    cfg.suites.clear();
    for (const std::string& s : opt.suite_list)
      cfg.suites.push_back(ctlift::suite_from_string(s));
  }
  for (const std::string& t : opt.tol_list) {
    const auto [key, value] = split_kv(t, "--tol");
    const double v = std::stod(value);
    if (key == "tight") cfg.tol.tight = v;
    else if (key == "fd") cfg.tol.fd = v;
    else if (key == "curvature") cfg.tol.curvature = v;
    else if (key == "detect") cfg.tol.detect = v;
    else throw CLI::ValidationError("unknown tolerance '" + key + "'");
  }
  for (const std::string& e : opt.expect_list) {
    const auto [key, value] = split_kv(e, "--expect");
    cfg.expect[ctlift::suite_from_string(key)] =
        ctlift::expectation_from_string(value);
  }

  ctlift::apply_env_overrides(cfg);
}

int run_verify(const CLI::App& verify, const VerifyOptions& opt) {
  std::vector<ctlift::ScenarioConfig> configs;

  if (opt.run_all) {
    configs = ctlift::builtin_scenarios();
  } else if (!opt.scenario_names.empty()) {
    for (const std::string& name : opt.scenario_names)
      configs.push_back(ctlift::scenario_by_name(name));
  } else if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "error: cannot open config file " << opt.config_path << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    configs.push_back(ctlift::parse_scenario_text(buf.str(), opt.config_path));
  } else {
    // Ad-hoc scenario straight from the flags.
    ctlift::ScenarioConfig cfg;
    cfg.name = "adhoc";
    configs.push_back(cfg);
  }

  bool all_pass = true;
  std::string report_accum;
  std::string report_path;

  for (ctlift::ScenarioConfig cfg : configs) {
    apply_overrides(verify, opt, cfg);
    if (!report_path.empty() && cfg.report_path != report_path)
      report_path = cfg.report_path;  // last writer wins for multi-scenario
    if (report_path.empty()) report_path = cfg.report_path;

    const ctlift::Report report = ctlift::run_scenario(cfg);
    std::cout << report.full_text() << "\n";
    report_accum += report.full_text() + "\n";
    all_pass = all_pass && report.overall;
  }

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write report to " << report_path << "\n";
      return 2;
    }
    out << report_accum;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagonal lift structures on cotangent bundles: "
               "numerical verification"};
  app.require_subcommand(1);

  VerifyOptions opt;
  CLI::App* verify =
      app.add_subcommand("verify", "run verification scenarios");
  verify->add_option("--scenario", opt.scenario_names,
                     "built-in scenario name (repeatable)");
  verify->add_flag("--all", opt.run_all, "run every built-in scenario");
  verify->add_option("--config", opt.config_path,
                     "key-value scenario definition file");
  verify->add_option("--name", opt.flags.name, "scenario name for the report");
  verify->add_option("--n", opt.flags.n, "base dimension (n >= 2)");
  verify->add_option("--c", opt.flags.c, "constant sectional curvature");
  verify->add_option("--case", opt.flags.profile,
                     "profile: flat | case1 | case2 | case3 | example-lambda1");
  verify->add_option("--B", opt.flags.B, "radical profile constant B");
  verify->add_option("--k", opt.flags.k, "case constant k");
  verify->add_option("--lambda-const", opt.flags.lambda_const,
                     "constant lambda for case3");
  verify->add_option("--b1-offset", opt.flags.b1_offset,
                     "shift b1 off the integrable value");
  verify->add_option("--mu-offset", opt.flags.mu_offset,
                     "shift mu off lambda'");
  verify->add_option("--t-lo", opt.flags.t_lo, "energy density range start");
  verify->add_option("--t-hi", opt.flags.t_hi, "energy density range end");
  verify->add_option("--samples", opt.flags.samples, "points per scenario");
  verify->add_option("--seed", opt.flags.seed, "sampling seed");
  verify->add_option("--chart-radius", opt.flags.chart_radius,
                     "coordinate ball radius (0 = default)");
  verify->add_option("--suites", opt.suite_list,
                     "comma/space separated suite subset")
      ->delimiter(',');
  verify->add_option("--tol", opt.tol_list,
                     "tolerance override key=value (tight, fd, curvature, "
                     "detect; repeatable)");
  verify->add_option("--expect", opt.expect_list,
                     "per-suite expectation suite=hold|violation|non-constant");
  verify->add_option("--report", opt.report_path, "report output path");

  CLI::App* list =
      app.add_subcommand("list-scenarios", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const ctlift::ScenarioConfig& cfg : ctlift::builtin_scenarios()) {
        std::cout << cfg.name << "\n    " << cfg.description << "\n";
      }
      return 0;
    }
    return run_verify(*verify, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
