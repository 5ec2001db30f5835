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

#include <array>
#include <cstdint>
#include <vector>

#include "eevc/topology.hpp"

namespace eevc {

/// Radio access parameters. Defaults reproduce the evaluation setup.
struct RadioParams {
  double line_coding = 10.0 / 8.0;  // bits per sample
  int mimo_layers = 2;
  int qam_bits = 6;
  int antennas = 2;
  double cpri_rate_gbps = 9.8304;  // per fully loaded cell
  int prb_per_user = 5;
  int cell_prb_total = 50;  // PRBs per cell; a full cell saturates one CPRI link
  int max_users_per_cell = 10;
  double video_fraction = 0.8;  // video share of download traffic

  /// Baseband workload of a fully loaded cell (GOPS):
  /// 30a + 10a^2 + 20*q*l*y.
  double bbu_workload_full_gops() const {
    return 30.0 * antennas + 10.0 * antennas * antennas +
           20.0 * qam_bits * line_coding * mimo_layers;
  }
};

/// Power and capacity parameters of the network devices.
struct PowerParams {
  double onu_max_w = 15.0;
  double onu_capacity_gbps = 10.0;
  double olt_max_w = 1940.0;
  double olt_idle_w = 60.0;
  double olt_capacity_gbps = 8600.0;
  double rrh_w = 1140.0;
  double server_max_w = 365.0;
  double server_idle_w = 112.0;
  double server_max_gops = 368.0;
  double cnvm_gops = 26.17;
  double cache_max_w = 550.0;
  double cache_capacity_gb = 14400.0;
  double server_energy_j_per_gb = 211.1;
  double backhaul_ratio = 0.1344;  // alpha
  double wavelength_gbps = 40.0;   // B
  int wavelengths_per_fiber = 32;  // w
  double transponder_w = 167.0;
  double router_port_w = 825.0;
  double regenerator_w = 334.0;
  double edfa_w = 55.0;
  double edfa_span_km = 80.0;  // S
  // Hosting budget per node kind, the cap on expression (54). Generous by
  // default; the source material never prints these.
  double host_budget_onu_w = 5000.0;
  double host_budget_olt_w = 5000.0;
  double host_budget_core_w = 5000.0;

  double cache_w_per_gb() const { return cache_max_w / cache_capacity_gb; }
  double host_budget_w(NodeKind kind) const;
};

/// Popularity curve controls for cache sizing.
struct ZipfParams {
  double exponent = 0.8;
  int catalog_size = 10000;
  int segments = 5;
};

/// Hourly mean active users per cell. The shipped default is a synthetic
/// day shape (quiet nights, evening peak); it stands in for operator data
/// and is fully configurable.
struct DiurnalProfile {
  std::array<double, 24> mean_users = {2, 1, 1, 1, 1, 2, 3, 4, 6, 7, 8, 8,
                                       9, 9, 8, 8, 7, 8, 9, 10, 9, 7, 5, 3};
};

struct Scenario {
  RadioParams radio;
  PowerParams power;
  ZipfParams zipf;
  DiurnalProfile profile;
};

/// Per-cell demand for one hour.
struct CellDemand {
  int users = 0;
  double fronthaul_gbps = 0.0;  // lambda^R_r
  double video_gbps = 0.0;      // lambda^V_r
  double regular_gbps = 0.0;    // lambda^G_r
};

struct DemandSet {
  int hour = 0;
  std::uint64_t seed = 0;
  std::vector<CellDemand> cells;  // by RRH index

  double total_fronthaul_gbps() const;
  double total_video_gbps() const;
  int total_users() const;
};

/// CPRI-rate demand of a cell with the given number of active users:
/// (prb_per_user / cell_prb_total) * cpri_rate * users.
double rrh_demand(int users, const RadioParams& radio);

/// 80/20 video/regular split of a download demand.
struct DemandSplit {
  double video_gbps;
  double regular_gbps;
};
DemandSplit split_demand(double fronthaul_gbps, const RadioParams& radio);

/// Baseband workload (GOPS) needed for a given download traffic volume.
double bbuvm_workload(double traffic_gbps, const RadioParams& radio);

/// Draws per-cell user counts for one hour: discrete uniform over the
/// half-width-2 window centered on the hourly mean, clamped to
/// [1, max_users]. Pure function of (profile, hour, seed).
DemandSet draw_cell_loads(const DiurnalProfile& profile, int hour,
                          std::uint64_t seed, const Topology& topology,
                          const RadioParams& radio);

/// Demand set with every cell at exactly `users` active users.
DemandSet uniform_cell_loads(int users, const Topology& topology,
                             const RadioParams& radio);

/// Pairwise traffic between VM hosts in the mobile core.
struct CnvmInterTraffic {
  double fraction = 0.0;
  // Dense ordered-pair matrix over hosting indices; zero diagonal.
  std::vector<std::vector<double>> gbps;

  double at(int p, int q) const { return gbps.empty() ? 0.0 : gbps[p][q]; }
  double total() const;
};

/// Splits `fraction` of the total backhaul traffic uniformly over the given
/// ordered hosting-node pairs.
CnvmInterTraffic cnvm_inter_traffic(double fraction, const DemandSet& demand,
                                    const Scenario& scenario,
                                    const Topology& topology,
                                    const std::vector<std::pair<int, int>>& pairs);

/// Ordered pairs of core-layer hosting indices, the default candidate set
/// for inter-VM traffic.
std::vector<std::pair<int, int>> core_hosting_pairs(const Topology& topology);

}  // namespace eevc
