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

#include "eevc/solution.hpp"

namespace eevc {

Solution::Solution(const Topology& topology)
    : num_hosting(topology.num_hosting()),
      num_rrh(topology.num_rrh()),
      num_core(topology.num_core()),
      num_arcs(static_cast<int>(topology.arcs().size())),
      num_hosting_arcs(static_cast<int>(topology.hosting_arcs().size())),
      num_core_arcs(static_cast<int>(topology.core_arcs().size())) {
  const int H = num_hosting, R = num_rrh, N = num_core;
  cnvm_traffic.assign(H * H, 0.0);
  bbuvm_traffic.assign(H * R, 0.0);
  regular_traffic.assign(H * R, 0.0);
  inter_cnvm.assign(H * H, 0.0);
  cache_traffic.assign(H * R, 0.0);
  cache_routed.assign(H * H * R, 0.0);
  server_traffic.assign(N * R, 0.0);
  server_routed.assign(N * H * R, 0.0);
  server_to_host.assign(N * H, 0.0);
  pair_traffic.assign(H * H, 0.0);
  hosts_bbuvm.assign(H, 0.0);
  serves_rrh.assign(H * R, 0.0);
  cnvm_serves.assign(H * H, 0.0);
  hosts_cnvm.assign(H, 0.0);
  cnvm_pair.assign(H * H, 0.0);
  hosts_any_vm.assign(H, 0.0);
  cache_serves.assign(H * R, 0.0);
  hosts_server.assign(N, 0.0);
  hit_ratio.assign(H, 0.0);
  hit_gate.assign(H * R, 0.0);
  cache_size.assign(H, 0.0);
  cache_size_int.assign(H, 0.0);
  cache_size_frac.assign(H, 0.0);
  bbu_workload.assign(H, 0.0);
  workload_int.assign(H, 0.0);
  workload_frac.assign(H, 0.0);
  rrh_link_flow.assign(H * R * num_arcs, 0.0);
  pair_link_flow.assign(H * H * num_hosting_arcs, 0.0);
  wavelengths_virtual.assign(N * N, 0.0);
  wavelengths_routed.assign(N * N * num_core_arcs, 0.0);
  wavelengths_physical.assign(num_core_arcs, 0.0);
  fibers.assign(num_core_arcs, 0.0);
  agg_ports.assign(N, 0.0);
}

}  // namespace eevc
