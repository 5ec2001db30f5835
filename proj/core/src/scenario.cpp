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

#include "eevc/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace eevc {
namespace {

// splitmix64; fixed-width arithmetic keeps draws identical everywhere.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

double PowerParams::host_budget_w(NodeKind kind) const {
  switch (kind) {
    case NodeKind::kOnu: return host_budget_onu_w;
    case NodeKind::kOlt: return host_budget_olt_w;
    case NodeKind::kCore: return host_budget_core_w;
    default: return 0.0;
  }
}

double DemandSet::total_fronthaul_gbps() const {
  double sum = 0.0;
  for (const CellDemand& c : cells) sum += c.fronthaul_gbps;
  return sum;
}

double DemandSet::total_video_gbps() const {
  double sum = 0.0;
  for (const CellDemand& c : cells) sum += c.video_gbps;
  return sum;
}

int DemandSet::total_users() const {
  int sum = 0;
  for (const CellDemand& c : cells) sum += c.users;
  return sum;
}

double rrh_demand(int users, const RadioParams& radio) {
  if (users < 0 || users > radio.max_users_per_cell) {
    throw std::invalid_argument("rrh_demand: user count out of range");
  }
  return (static_cast<double>(radio.prb_per_user) / radio.cell_prb_total) *
         radio.cpri_rate_gbps * users;
}

DemandSplit split_demand(double fronthaul_gbps, const RadioParams& radio) {
  if (fronthaul_gbps < 0.0) {
    throw std::invalid_argument("split_demand: negative demand");
  }
  double video = radio.video_fraction * fronthaul_gbps;
  return {video, fronthaul_gbps - video};
}

double bbuvm_workload(double traffic_gbps, const RadioParams& radio) {
  return (traffic_gbps / radio.cpri_rate_gbps) * radio.bbu_workload_full_gops();
}

static CellDemand make_cell(int users, const RadioParams& radio) {
  CellDemand cell;
  cell.users = users;
  cell.fronthaul_gbps = rrh_demand(users, radio);
  DemandSplit split = split_demand(cell.fronthaul_gbps, radio);
  cell.video_gbps = split.video_gbps;
  cell.regular_gbps = split.regular_gbps;
  return cell;
}

DemandSet draw_cell_loads(const DiurnalProfile& profile, int hour,
                          std::uint64_t seed, const Topology& topology,
                          const RadioParams& radio) {
  if (hour < 0 || hour > 23) {
    throw std::invalid_argument("draw_cell_loads: hour out of range");
  }
  DemandSet out;
  out.hour = hour;
  out.seed = seed;
  const int center = static_cast<int>(std::llround(profile.mean_users[hour]));
  for (int r = 0; r < topology.num_rrh(); ++r) {
    std::uint64_t state = seed ^ (0x632be59bd9b4e019ULL * (hour + 1)) ^
                          (0x9e3779b97f4a7c15ULL * (r + 1));
    (void)splitmix64(state);  // decorrelate the mixed-in indices
    int offset = static_cast<int>(unit_double(splitmix64(state)) * 5.0) - 2;
    int users = center + offset;
    if (users < 1) users = 1;
    if (users > radio.max_users_per_cell) users = radio.max_users_per_cell;
    out.cells.push_back(make_cell(users, radio));
  }
  return out;
}

DemandSet uniform_cell_loads(int users, const Topology& topology,
                             const RadioParams& radio) {
  DemandSet out;
  out.hour = 0;
  out.seed = 0;
  for (int r = 0; r < topology.num_rrh(); ++r) {
    out.cells.push_back(make_cell(users, radio));
  }
  return out;
}

double CnvmInterTraffic::total() const {
  double sum = 0.0;
  for (const auto& row : gbps)
    for (double v : row) sum += v;
  return sum;
}

CnvmInterTraffic cnvm_inter_traffic(double fraction, const DemandSet& demand,
                                    const Scenario& scenario,
                                    const Topology& topology,
                                    const std::vector<std::pair<int, int>>& pairs) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("cnvm_inter_traffic: fraction out of [0,1]");
  }
  CnvmInterTraffic out;
  out.fraction = fraction;
  const int nh = topology.num_hosting();
  out.gbps.assign(nh, std::vector<double>(nh, 0.0));
  if (pairs.empty() || fraction == 0.0) return out;
  const double total_backhaul =
      scenario.power.backhaul_ratio * demand.total_fronthaul_gbps();
  const double per_pair = fraction * total_backhaul / pairs.size();
  for (auto [p, q] : pairs) {
    if (p == q || p < 0 || q < 0 || p >= nh || q >= nh) {
      throw std::invalid_argument("cnvm_inter_traffic: bad hosting pair");
    }
    out.gbps[p][q] = per_pair;
  }
  return out;
}

std::vector<std::pair<int, int>> core_hosting_pairs(const Topology& topology) {
  std::vector<std::pair<int, int>> pairs;
  for (int m = 0; m < topology.num_core(); ++m) {
    for (int n = 0; n < topology.num_core(); ++n) {
      if (m == n) continue;
      pairs.emplace_back(topology.hosting_index({NodeKind::kCore, m}),
                         topology.hosting_index({NodeKind::kCore, n}));
    }
  }
  return pairs;
}

}  // namespace eevc
