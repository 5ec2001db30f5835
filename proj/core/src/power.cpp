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

#include "eevc/power.hpp"

#include <stdexcept>

namespace eevc {

double server_power(double workload_int, double workload_frac, double active,
                    const PowerParams& params) {
  if (workload_frac < 0.0 || workload_frac >= 1.0) {
    throw std::invalid_argument("server_power: fractional load must be in [0,1)");
  }
  if (workload_int < 0.0 || (active != 0.0 && active != 1.0)) {
    throw std::invalid_argument("server_power: bad integer load or activity flag");
  }
  return params.server_idle_w * (workload_int + active) +
         workload_frac * (params.server_max_w - params.server_idle_w);
}

double cache_power(double size_int_percent, const PowerParams& params) {
  if (size_int_percent < 0.0 || size_int_percent > 100.0) {
    throw std::invalid_argument("cache_power: size percent out of [0,100]");
  }
  return params.cache_w_per_gb() * params.cache_capacity_gb *
         (size_int_percent / 100.0);
}

double olt_power(double traversing_gbps, const PowerParams& params) {
  if (traversing_gbps < 0.0) {
    throw std::invalid_argument("olt_power: negative traffic");
  }
  if (traversing_gbps > params.olt_capacity_gbps) {
    throw std::domain_error("olt_power: traffic exceeds OLT capacity");
  }
  return params.olt_idle_w + (params.olt_max_w - params.olt_idle_w) /
                                 params.olt_capacity_gbps * traversing_gbps;
}

double video_server_power(double routed_server_traffic_gbps,
                          const PowerParams& params) {
  return params.server_energy_j_per_gb * params.backhaul_ratio *
         routed_server_traffic_gbps;
}

PowerBreakdown eval_total(const Solution& solution, const Scenario& scenario,
                          const Topology& topology) {
  const PowerParams& pw = scenario.power;
  if (solution.num_hosting != topology.num_hosting() ||
      solution.num_rrh != topology.num_rrh() ||
      solution.num_core != topology.num_core() ||
      solution.num_arcs != static_cast<int>(topology.arcs().size())) {
    throw std::invalid_argument("eval_total: solution does not match topology");
  }
  const int H = solution.num_hosting;
  const int R = solution.num_rrh;
  const int N = solution.num_core;
  const int AC = solution.num_core_arcs;

  PowerBreakdown out;

  double wp_sum = 0.0;
  for (int a = 0; a < AC; ++a) wp_sum += solution.wavelengths_physical[a];
  double ports_sum = 0.0;
  for (int m = 0; m < N; ++m) ports_sum += solution.agg_ports[m];
  out.router_ports = pw.router_port_w * (ports_sum + wp_sum);
  out.transponders = pw.transponder_w * wp_sum;

  double edfa_sum = 0.0;
  double regen_sum = 0.0;
  for (int a = 0; a < AC; ++a) {
    const CoreLink& link = topology.core_arc_link(a);
    edfa_sum += edfa_count(link.distance_km, link.span_km) * solution.fibers[a];
    regen_sum += link.regenerators * solution.wavelengths_physical[a];
  }
  out.edfas = pw.edfa_w * edfa_sum;
  out.regenerators = pw.regenerator_w * regen_sum;

  // Traversing traffic at ONUs and OLTs is counted on their outgoing arcs.
  auto out_arc_traffic = [&](NodeRef x) {
    double sum = 0.0;
    for (NodeRef y : topology.neighbors(x)) {
      int arc = topology.arc_index(x, y);
      for (int h = 0; h < H; ++h) {
        for (int r = 0; r < R; ++r) {
          sum += solution.rrh_link_flow[solution.hra(h, r, arc)];
        }
      }
      if (Topology::is_hosting_kind(y.kind)) {
        int harc = topology.hosting_arc_index(x, y);
        if (harc >= 0) {
          for (int p = 0; p < H; ++p) {
            for (int q = 0; q < H; ++q) {
              if (p == q) continue;
              sum += solution.pair_link_flow[solution.pqa(p, q, harc)];
            }
          }
        }
      }
    }
    return sum;
  };

  for (int u = 0; u < topology.num_onu(); ++u) {
    out.onu_rrh += pw.rrh_w + (pw.onu_max_w / pw.onu_capacity_gbps) *
                                  out_arc_traffic({NodeKind::kOnu, u});
  }
  for (int l = 0; l < topology.num_olt(); ++l) {
    out.olt += pw.olt_idle_w + (pw.olt_max_w - pw.olt_idle_w) /
                                   pw.olt_capacity_gbps *
                                   out_arc_traffic({NodeKind::kOlt, l});
  }

  for (int h = 0; h < H; ++h) {
    out.vm_servers +=
        pw.server_idle_w * (solution.workload_int[h] + solution.hosts_any_vm[h]) +
        solution.workload_frac[h] * (pw.server_max_w - pw.server_idle_w);
  }

  double served = 0.0;
  for (double v : solution.server_routed) served += v;
  out.video_server = pw.server_energy_j_per_gb * pw.backhaul_ratio * served;

  for (int u = 0; u < H; ++u) {
    out.caches += pw.cache_w_per_gb() * pw.cache_capacity_gb *
                  (solution.cache_size_int[u] / 100.0);
  }

  out.total = out.category_sum();
  return out;
}

}  // namespace eevc
