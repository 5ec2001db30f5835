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

#include <string>
#include <vector>

#include "eevc/formulation.hpp"
#include "eevc/power.hpp"
#include "eevc/scenario.hpp"
#include "eevc/solution.hpp"
#include "eevc/topology.hpp"

namespace eevc::heuristic {

struct Options {
  Approach approach = Approach::kIntegrated;
  double inter_traffic_fraction = 0.0;
  double hit_ratio_grid_step = 0.01;
  // Hit ratios stay off this much from 1 so the video server always carries
  // a residual stream (the model pins exactly one active server).
  double max_hit_ratio = 0.99;
};

/// Candidate plan for the baseband VM layer: the greedy nearest-OLT pass
/// from the algorithm, or consolidation onto the top-k most loaded core
/// nodes.
struct VmPlan {
  bool olt_first = true;
  int core_top_k = 0;  // used when !olt_first

  std::string name() const;
};

struct SweepStep {
  int count = 0;       // i or j
  double power_w = 0.0;
};

struct HeuristicTrace {
  std::vector<int> bbuvm_host;  // hosting index per RRH
  std::string vm_plan;
  std::vector<std::pair<std::string, double>> plan_power;  // evaluated plans
  std::vector<SweepStep> cnvm_sweep;
  std::vector<SweepStep> cache_sweep;
  std::vector<int> cnvm_hosts;    // hosting indices, active set
  int video_server_core = 0;
  bool cache_sites_are_olts = false;
  std::vector<int> cache_sites;   // hosting indices
  std::vector<double> cache_hit;  // per site
};

struct RunResult {
  Solution solution;
  PowerBreakdown power;
  HeuristicTrace trace;
};

/// Greedy BBUVM placement: each cell in ascending id order goes to the
/// nearest OLT with spare hosting budget, falling through to the nearest
/// core node. Returns the hosting index per RRH. Throws std::runtime_error
/// when no node can take a cell.
std::vector<int> place_bbuvms(const DemandSet& demand, const Topology& topology,
                              const Scenario& scenario);

/// Same, under an explicit layer plan.
std::vector<int> place_bbuvms(const DemandSet& demand, const Topology& topology,
                              const Scenario& scenario, const VmPlan& plan);

/// Full pipeline: VM plan selection, CNVM count sweep, video server
/// pinning, cache count sweep under the 50%-of-capacity site rule. The
/// returned solution satisfies the full constraint set.
RunResult run(const Scenario& scenario, const Topology& topology,
              const DemandSet& demand, const Options& options);

}  // namespace eevc::heuristic
