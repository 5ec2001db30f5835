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
#include <string>
#include <vector>

#include "eevc/scenario.hpp"
#include "eevc/topology.hpp"

namespace eevc {

/// Topology parameters from the [topology] section.
struct TopologySpec {
  int cores = 3;
  int olts_per_core = 2;
  int onus_per_olt = 3;
  double core_link_km = 400.0;
  int regenerators_per_link = 0;

  Topology build(const PowerParams& power) const {
    return build_tree_topology(cores, olts_per_core, onus_per_olt, core_link_km,
                               power.edfa_span_km, regenerators_per_link);
  }
};

/// Defaults from the [run] section; command-line flags override these.
struct RunDefaults {
  std::string approach = "all";
  std::vector<int> hours;  // empty means 0..23
  std::uint64_t seed = 1;
  std::string engine = "heuristic";
  double inter_traffic = 0.0;
  double gap_tol = 1e-4;
  long node_limit = 2000000;
  std::string out_dir = "out";
};

struct ScenarioFile {
  Scenario scenario;
  TopologySpec topology;
  RunDefaults run;
};

/// Parses the key=value section format ([radio], [power], [zipf],
/// [profile], [topology], [run]). Unknown sections or keys are errors.
ScenarioFile parse_scenario_text(const std::string& text);

/// Reads and parses a scenario file. Throws std::runtime_error on I/O or
/// parse problems.
ScenarioFile load_scenario_file(const std::string& path);

/// The built-in defaults rendered as a complete scenario file.
std::string default_scenario_text();

/// Hour list syntax used by scenario files and the command line:
/// "0-23", "3", "1,5,9", "0-3 20-23".
std::vector<int> parse_hours_spec(const std::string& value);

}  // namespace eevc
