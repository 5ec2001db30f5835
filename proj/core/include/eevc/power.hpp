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

#include "eevc/scenario.hpp"
#include "eevc/solution.hpp"
#include "eevc/topology.hpp"

namespace eevc {

/// Wattage per device category plus the exact total.
struct PowerBreakdown {
  double router_ports = 0.0;
  double transponders = 0.0;
  double edfas = 0.0;
  double regenerators = 0.0;
  double onu_rrh = 0.0;
  double olt = 0.0;
  double vm_servers = 0.0;
  double video_server = 0.0;
  double caches = 0.0;
  double total = 0.0;

  double category_sum() const {
    return router_ports + transponders + edfas + regenerators + onu_rrh + olt +
           vm_servers + video_server + caches;
  }
};

/// Evaluates the total power of a candidate solution, category by category.
/// Pure; independent of how the solution was produced.
PowerBreakdown eval_total(const Solution& solution, const Scenario& scenario,
                          const Topology& topology);

/// Power draw of the servers at one hosting node: idle power per committed
/// server (integer part plus the activity flag) plus the dynamic range
/// scaled by the fractional load.
double server_power(double workload_int, double workload_frac, double active,
                    const PowerParams& params);

/// Power of a cache provisioned at an integer percentage of full capacity.
double cache_power(double size_int_percent, const PowerParams& params);

/// Idle-plus-linear OLT power for the traffic traversing it.
double olt_power(double traversing_gbps, const PowerParams& params);

/// Streaming energy of the video server for the given routed traffic sum.
double video_server_power(double routed_server_traffic_gbps,
                          const PowerParams& params);

}  // namespace eevc
