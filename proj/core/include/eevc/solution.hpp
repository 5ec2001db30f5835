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

#include <vector>

#include "eevc/topology.hpp"

namespace eevc {

/// Full placement/flow/cache assignment. One slot per decision quantity of
/// the optimization model; binaries are stored as 0/1 doubles. Indices: h,
/// p, q, u run over hosting nodes, r over RRHs, s over core nodes, and arc
/// slots over the topology's deterministic arc tables.
struct Solution {
  explicit Solution(const Topology& topology);

  int num_hosting = 0;  // H
  int num_rrh = 0;      // R
  int num_core = 0;     // N
  int num_arcs = 0;     // all directed arcs
  int num_hosting_arcs = 0;
  int num_core_arcs = 0;

  // Traffic between entities (Gbps).
  std::vector<double> cnvm_traffic;    // lambda^B[p][h], H*H
  std::vector<double> bbuvm_traffic;   // lambda^R[h][r], H*R
  std::vector<double> regular_traffic; // lambda^G[h][r], H*R
  std::vector<double> inter_cnvm;      // lambda^E[p][q], H*H
  std::vector<double> cache_traffic;   // lambda^C[u][r], H*R
  std::vector<double> cache_routed;    // lambda^C[u][h][r], H*H*R
  std::vector<double> server_traffic;  // lambda^S[s][r], N*R
  std::vector<double> server_routed;   // lambda^S[s][h][r], N*H*R
  std::vector<double> server_to_host;  // lambda^S[s][h], N*H
  std::vector<double> pair_traffic;    // lambda^T[p][q], H*H

  // Hosting indicators (0/1).
  std::vector<double> hosts_bbuvm;     // sigma^B[h], H
  std::vector<double> serves_rrh;      // sigma^B[h][r], H*R
  std::vector<double> cnvm_serves;     // sigma^E[p][h], H*H
  std::vector<double> hosts_cnvm;      // sigma^E[p], H
  std::vector<double> cnvm_pair;       // psi[p][q], H*H (diagonal unused)
  std::vector<double> hosts_any_vm;    // sigma^X[h], H
  std::vector<double> cache_serves;    // sigma^C[u][r], H*R
  std::vector<double> hosts_server;    // sigma^S[s], N

  // Caching.
  std::vector<double> hit_ratio;       // delta[u], H
  std::vector<double> hit_gate;        // Theta[u][r], H*R
  std::vector<double> cache_size;      // Z^C[u] (percent of capacity), H
  std::vector<double> cache_size_int;  // Z^iC[u], H
  std::vector<double> cache_size_frac; // Z^fC[u], H

  // Workloads.
  std::vector<double> bbu_workload;    // Psi^B[h] (GOPS), H
  std::vector<double> workload_int;    // Psi^i[h], H
  std::vector<double> workload_frac;   // Psi^f[h], H

  // Per-arc flows.
  std::vector<double> rrh_link_flow;   // lambda^R[h][r][arc], H*R*A
  std::vector<double> pair_link_flow;  // lambda^T[p][q][hosting arc], H*H*AH

  // Optical layer.
  std::vector<double> wavelengths_virtual;  // W[i][j], N*N (diagonal unused)
  std::vector<double> wavelengths_routed;   // W[i][j][core arc], N*N*AC
  std::vector<double> wavelengths_physical; // W[m][n] per core arc, AC
  std::vector<double> fibers;               // f[m][n] per core arc, AC
  std::vector<double> agg_ports;            // Lambda[m], N

  // Flat-index helpers.
  int hh(int p, int h) const { return p * num_hosting + h; }
  int hr(int h, int r) const { return h * num_rrh + r; }
  int sr(int s, int r) const { return s * num_rrh + r; }
  int sh(int s, int h) const { return s * num_hosting + h; }
  int uhr(int u, int h, int r) const {
    return (u * num_hosting + h) * num_rrh + r;
  }
  int shr(int s, int h, int r) const {
    return (s * num_hosting + h) * num_rrh + r;
  }
  int hra(int h, int r, int arc) const {
    return (h * num_rrh + r) * num_arcs + arc;
  }
  int pqa(int p, int q, int arc) const {
    return (p * num_hosting + q) * num_hosting_arcs + arc;
  }
  int nn(int i, int j) const { return i * num_core + j; }
  int nna(int i, int j, int arc) const {
    return (i * num_core + j) * num_core_arcs + arc;
  }
};

}  // namespace eevc
