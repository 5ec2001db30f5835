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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eevc/formulation.hpp"
#include "eevc/scenario_file.hpp"

namespace eevc {

/// One batch invocation: approaches x hours on one scenario.
struct RunConfig {
  std::vector<Approach> approaches;  // run in the given order
  std::vector<int> hours;            // ascending
  std::uint64_t seed = 1;
  std::string engine = "heuristic";  // heuristic | milp | both
  double inter_traffic_fraction = 0.0;
  std::string out_dir = "out";
  double gap_tol = 1e-4;
  long node_limit = 2000000;

  static RunConfig from_defaults(const RunDefaults& defaults);
};

/// Runs every (hour, approach) case and writes power.csv, placement.csv and
/// savings.csv under out_dir. Returns 0 when all cases completed and all
/// feasibility checks passed.
int cmd_run(const ScenarioFile& scenario_file, const RunConfig& config,
            std::ostream& log, std::ostream& err);

/// Writes one MPS file, one LP file and one build report per (hour,
/// approach) under out_dir.
int cmd_export(const ScenarioFile& scenario_file, const RunConfig& config,
               std::ostream& log, std::ostream& err);

/// Heuristic-versus-exact comparison: writes compare.csv and prints the
/// per-hour gaps plus the max/average summary.
int cmd_compare(const ScenarioFile& scenario_file, const RunConfig& config,
                std::ostream& log, std::ostream& err);

}  // namespace eevc
