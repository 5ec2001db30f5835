// Copyright 2026 The eevc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front-end: runs the placement approaches over the diurnal profile,
// exports solver-ready model files, and compares the heuristic against the
// exact engine. Environment variables are never consulted; every input
// comes from the scenario file and the flags.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "eevc/experiment.hpp"
#include "eevc/scenario_file.hpp"

namespace {

struct CliArgs {
  std::string scenario_path;
  std::string approach;
  std::string hours;
  std::string engine;
  std::string out_dir;
  std::int64_t seed = -1;
  double inter_traffic = -1.0;
  double gap_tol = -1.0;
  std::int64_t node_limit = -1;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--scenario", args.scenario_path,
                  "Scenario file; built-in defaults when omitted");
  cmd->add_option("--approach", args.approach,
                  "caching-only | virt-only | integrated | all");
  cmd->add_option("--hours", args.hours, "Hours to run, e.g. 0-23 or 3,7,19");
  cmd->add_option("--seed", args.seed, "Demand draw seed");
  cmd->add_option("--engine", args.engine, "heuristic | milp | both");
  cmd->add_option("--inter-traffic", args.inter_traffic,
                  "Inter-VM traffic fraction of total backhaul, in [0,1]");
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--gap-tol", args.gap_tol, "Exact-engine relative gap tolerance");
  cmd->add_option("--node-limit", args.node_limit, "Exact-engine node limit");
}

int apply_args(const CliArgs& args, eevc::ScenarioFile& file,
               eevc::RunConfig& config) {
  try {
    if (!args.scenario_path.empty()) {
      file = eevc::load_scenario_file(args.scenario_path);
    } else {
      file = eevc::parse_scenario_text(eevc::default_scenario_text());
    }
    eevc::RunDefaults defaults = file.run;
    if (!args.approach.empty()) defaults.approach = args.approach;
    if (!args.hours.empty()) defaults.hours = eevc::parse_hours_spec(args.hours);
    if (args.seed >= 0) defaults.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.engine.empty()) defaults.engine = args.engine;
    if (args.inter_traffic >= 0.0) defaults.inter_traffic = args.inter_traffic;
    if (!args.out_dir.empty()) defaults.out_dir = args.out_dir;
    if (args.gap_tol >= 0.0) defaults.gap_tol = args.gap_tol;
    if (args.node_limit >= 0) defaults.node_limit = args.node_limit;
    config = eevc::RunConfig::from_defaults(defaults);
    if (defaults.inter_traffic < 0.0 || defaults.inter_traffic > 1.0) {
      std::cerr << "error: --inter-traffic must be in [0,1]\n";
      return 2;
    }
    if (config.hours.empty()) {
      std::cerr << "error: empty hour set\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-optimal VM placement and content caching toolkit"};
  app.require_subcommand(1);

  CliArgs run_args, export_args, compare_args;
  CLI::App* run = app.add_subcommand(
      "run", "Run approaches over the profile and write CSV reports");
  add_common_flags(run, run_args);
  CLI::App* exp = app.add_subcommand(
      "export", "Write MPS/LP model files and build reports");
  add_common_flags(exp, export_args);
  CLI::App* cmp = app.add_subcommand(
      "compare", "Compare the heuristic against the exact engine");
  add_common_flags(cmp, compare_args);
  bool print_scenario = false;
  app.add_flag("--print-default-scenario", print_scenario,
               "Print the built-in scenario file and exit");

  CLI11_PARSE(app, argc, argv);

  if (print_scenario) {
    std::cout << eevc::default_scenario_text();
    return 0;
  }

  eevc::ScenarioFile file;
  eevc::RunConfig config;
  if (run->parsed()) {
    if (int rc = apply_args(run_args, file, config)) return rc;
    return eevc::cmd_run(file, config, std::cout, std::cerr);
  }
  if (exp->parsed()) {
    if (int rc = apply_args(export_args, file, config)) return rc;
    return eevc::cmd_export(file, config, std::cout, std::cerr);
  }
  if (cmp->parsed()) {
    if (int rc = apply_args(compare_args, file, config)) return rc;
    if (config.engine != "both") config.engine = "both";
    return eevc::cmd_compare(file, config, std::cout, std::cerr);
  }
  return 2;
}
