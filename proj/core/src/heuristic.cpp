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

#include "eevc/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eevc/piecewise.hpp"
#include "eevc/power.hpp"

namespace eevc::heuristic {
namespace {

constexpr double kInfPower = std::numeric_limits<double>::infinity();

int int_ceil(double value) {
  if (value <= 1e-9) return 0;
  return static_cast<int>(std::ceil(value - 1e-9));
}

std::pair<double, double> floor_split(double value) {
  double int_part = std::floor(value + 1e-9);
  double frac = value - int_part;
  if (frac < 0.0) frac = 0.0;
  return {int_part, frac};
}

struct PathTables {
  int H = 0, R = 0;
  std::vector<std::vector<int>> rrh_arcs;   // [h*R+r] -> arc ids
  std::vector<std::vector<int>> pair_arcs;  // [p*H+q] -> hosting arc ids
  std::vector<char> pair_ok;                // [p*H+q]
  std::vector<int> hop_host_host;           // undirected hops
  std::vector<int> hop_rrh_host;            // [r*H+h]

  static PathTables build(const Topology& topo) {
    PathTables t;
    t.H = topo.num_hosting();
    t.R = topo.num_rrh();
    t.rrh_arcs.assign(t.H * t.R, {});
    t.pair_arcs.assign(t.H * t.H, {});
    t.pair_ok.assign(t.H * t.H, 0);
    t.hop_host_host.assign(t.H * t.H, 0);
    t.hop_rrh_host.assign(t.R * t.H, 0);
    for (int h = 0; h < t.H; ++h) {
      const NodeRef from = topo.hosting_node(h);
      for (int r = 0; r < t.R; ++r) {
        auto path = topo.downstream_path(from, {NodeKind::kRrh, r});
        if (!path) {
          throw std::runtime_error("heuristic: no downstream route " +
                                   to_string(from) + " -> RRH" + std::to_string(r));
        }
        for (std::size_t k = 0; k + 1 < path->size(); ++k) {
          t.rrh_arcs[h * t.R + r].push_back(
              topo.arc_index((*path)[k], (*path)[k + 1]));
        }
        t.hop_rrh_host[r * t.H + h] =
            static_cast<int>(topo.shortest_path({NodeKind::kRrh, r}, from).size()) - 1;
      }
      for (int q = 0; q < t.H; ++q) {
        if (h == q) {
          t.pair_ok[h * t.H + q] = 1;
          continue;
        }
        const NodeRef to = topo.hosting_node(q);
        auto path = topo.downstream_path(from, to);
        if (path) {
          t.pair_ok[h * t.H + q] = 1;
          for (std::size_t k = 0; k + 1 < path->size(); ++k) {
            t.pair_arcs[h * t.H + q].push_back(
                topo.hosting_arc_index((*path)[k], (*path)[k + 1]));
          }
        }
        t.hop_host_host[h * t.H + q] =
            static_cast<int>(topo.shortest_path(from, to).size()) - 1;
      }
    }
    return t;
  }
};

struct Placement {
  std::vector<int> bbuvm_host;         // per RRH: hosting index
  std::vector<int> cnvm_of_host;       // per hosting index: serving CNVM, -1
  int server_core = 0;                 // core index
  std::vector<int> cache_site_of_rrh;  // per RRH: hosting index or -1
  std::vector<double> site_hit;        // per hosting index
};

struct Assembler {
  const Scenario& scenario;
  const Topology& topo;
  const DemandSet& demand;
  const CnvmInterTraffic& inter;
  const PathTables& paths;
  const PiecewiseSegments& piecewise;
  int H, R, N;

  Assembler(const Scenario& sc, const Topology& tp, const DemandSet& dm,
            const CnvmInterTraffic& it, const PathTables& pt,
            const PiecewiseSegments& pw)
      : scenario(sc), topo(tp), demand(dm), inter(it), paths(pt), piecewise(pw),
        H(tp.num_hosting()), R(tp.num_rrh()), N(tp.num_core()) {}

  Solution assemble(const Placement& plan) const {
    Solution sol(topo);
    const double alpha = scenario.power.backhaul_ratio;

    // Demand-side flows through the serving BBUVMs.
    for (int r = 0; r < R; ++r) {
      const int h = plan.bbuvm_host[r];
      const CellDemand& cell = demand.cells[r];
      sol.regular_traffic[sol.hr(h, r)] = cell.regular_gbps;
      sol.serves_rrh[sol.hr(h, r)] = 1.0;
      double cached = 0.0;
      const int u = plan.cache_site_of_rrh[r];
      if (u >= 0 && plan.site_hit[u] > 0.0) {
        const double hit = plan.site_hit[u];
        cached = hit * cell.video_gbps;
        sol.cache_traffic[sol.hr(u, r)] = cached;
        sol.cache_serves[sol.hr(u, r)] = 1.0;
        sol.hit_gate[sol.hr(u, r)] = hit;
        sol.cache_routed[sol.uhr(u, h, r)] = cached;
      }
      const int s = plan.server_core;
      const double streamed = cell.video_gbps - cached;
      sol.server_traffic[sol.sr(s, r)] = streamed;
      sol.server_routed[sol.shr(s, h, r)] = streamed;
      sol.bbuvm_traffic[sol.hr(h, r)] =
          cell.regular_gbps + cached + streamed;  // equals the fronthaul demand
    }

    for (int u = 0; u < H; ++u) sol.hit_ratio[u] = plan.site_hit[u];

    // Hosting indicators and the CNVM feeds.
    std::vector<double> host_load(H, 0.0);
    for (int h = 0; h < H; ++h) {
      for (int r = 0; r < R; ++r) host_load[h] += sol.bbuvm_traffic[sol.hr(h, r)];
      if (host_load[h] > 0.0) sol.hosts_bbuvm[h] = 1.0;
    }
    for (int h = 0; h < H; ++h) {
      if (host_load[h] <= 0.0) continue;
      const int p = plan.cnvm_of_host[h];
      sol.cnvm_traffic[sol.hh(p, h)] += alpha * host_load[h];
    }
    for (int p = 0; p < H; ++p) {
      double fed = 0.0;
      for (int h = 0; h < H; ++h) {
        const double v = sol.cnvm_traffic[sol.hh(p, h)];
        if (v > 0.0) sol.cnvm_serves[sol.hh(p, h)] = 1.0;
        fed += v;
      }
      if (fed > 0.0) sol.hosts_cnvm[p] = 1.0;
    }
    for (int p = 0; p < H; ++p) {
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        if (sol.hosts_cnvm[p] > 0.0 && sol.hosts_cnvm[q] > 0.0) {
          sol.cnvm_pair[sol.hh(p, q)] = 1.0;
          sol.inter_cnvm[sol.hh(p, q)] = inter.at(p, q);
        }
      }
    }
    for (int h = 0; h < H; ++h) {
      sol.hosts_any_vm[h] =
          (sol.hosts_bbuvm[h] > 0.0 || sol.hosts_cnvm[h] > 0.0) ? 1.0 : 0.0;
    }
    sol.hosts_server[plan.server_core] = 1.0;
    for (int s = 0; s < N; ++s) {
      for (int h = 0; h < H; ++h) {
        double sum = 0.0;
        for (int r = 0; r < R; ++r) sum += sol.server_routed[sol.shr(s, h, r)];
        sol.server_to_host[sol.sh(s, h)] = sum;
      }
    }

    // Route the BBUVM->RRH flows.
    for (int h = 0; h < H; ++h) {
      for (int r = 0; r < R; ++r) {
        const double flow = sol.bbuvm_traffic[sol.hr(h, r)];
        if (flow <= 0.0) continue;
        for (int arc : paths.rrh_arcs[h * R + r]) {
          sol.rrh_link_flow[sol.hra(h, r, arc)] += flow;
        }
      }
    }

    // Hosting-pair volumes and their routes.
    for (int p = 0; p < H; ++p) {
      const bool p_is_core = topo.hosting_node(p).kind == NodeKind::kCore;
      const int s = p_is_core ? topo.hosting_node(p).index : -1;
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        double volume = sol.inter_cnvm[sol.hh(p, q)] + sol.cnvm_traffic[sol.hh(p, q)];
        for (int r = 0; r < R; ++r) {
          volume += alpha * sol.cache_routed[sol.uhr(p, q, r)];
        }
        if (p_is_core) {
          for (int r = 0; r < R; ++r) {
            volume += alpha * sol.server_routed[sol.shr(s, q, r)];
          }
        }
        if (volume <= 0.0) continue;
        sol.pair_traffic[sol.hh(p, q)] = volume;
        if (!paths.pair_ok[p * H + q]) {
          throw std::runtime_error("heuristic: infeasible hosting-pair route");
        }
        for (int arc : paths.pair_arcs[p * H + q]) {
          sol.pair_link_flow[sol.pqa(p, q, arc)] += volume;
        }
      }
    }

    // Workloads and cache sizes.
    const double wl_rate = scenario.radio.bbu_workload_full_gops() /
                           scenario.radio.cpri_rate_gbps;
    for (int h = 0; h < H; ++h) {
      sol.bbu_workload[h] = host_load[h] * wl_rate;
      const double norm =
          (sol.bbu_workload[h] + scenario.power.cnvm_gops * sol.hosts_cnvm[h]) /
          scenario.power.server_max_gops;
      auto [ip, fp] = floor_split(norm);
      sol.workload_int[h] = ip;
      sol.workload_frac[h] = fp;
    }
    for (int u = 0; u < H; ++u) {
      const double size = piecewise.envelope(sol.hit_ratio[u]);
      sol.cache_size[u] = size;
      auto [ip, fp] = floor_split(size);
      sol.cache_size_int[u] = ip;
      sol.cache_size_frac[u] = fp;
    }

    // Optical-layer configuration from the per-arc flow totals.
    const double B = scenario.power.wavelength_gbps;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const NodeRef ci{NodeKind::kCore, i}, cj{NodeKind::kCore, j};
        const int arc = topo.arc_index(ci, cj);
        if (arc < 0) continue;
        const int harc = topo.hosting_arc_index(ci, cj);
        double load = 0.0;
        for (int h = 0; h < H; ++h)
          for (int r = 0; r < R; ++r) load += sol.rrh_link_flow[sol.hra(h, r, arc)];
        for (int p = 0; p < H; ++p)
          for (int q = 0; q < H; ++q)
            if (p != q) load += sol.pair_link_flow[sol.pqa(p, q, harc)];
        const int channels = int_ceil(load / B);
        if (channels == 0) continue;
        sol.wavelengths_virtual[sol.nn(i, j)] = channels;
        // Lightpaths follow the physical min-hop core route.
        const auto path = topo.shortest_path(ci, cj);
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
          const int ca = topo.core_arc_index(path[k].index, path[k + 1].index);
          sol.wavelengths_routed[sol.nna(i, j, ca)] += channels;
        }
      }
    }
    for (int a = 0; a < sol.num_core_arcs; ++a) {
      double total = 0.0;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j) total += sol.wavelengths_routed[sol.nna(i, j, a)];
      sol.wavelengths_physical[a] = total;
      sol.fibers[a] =
          int_ceil(total / scenario.power.wavelengths_per_fiber);
    }
    for (int i = 0; i < N; ++i) {
      const NodeRef core{NodeKind::kCore, i};
      double down = 0.0;
      for (NodeRef y : topo.neighbors(core)) {
        if (y.kind != NodeKind::kOlt) continue;
        const int arc = topo.arc_index(core, y);
        const int harc = topo.hosting_arc_index(core, y);
        for (int h = 0; h < H; ++h)
          for (int r = 0; r < R; ++r) down += sol.rrh_link_flow[sol.hra(h, r, arc)];
        for (int p = 0; p < H; ++p)
          for (int q = 0; q < H; ++q)
            if (p != q) down += sol.pair_link_flow[sol.pqa(p, q, harc)];
      }
      sol.agg_ports[i] = int_ceil(down / B);
    }
    return sol;
  }

  double evaluate(const Placement& plan) const {
    return eval_total(assemble(plan), scenario, topo).total;
  }
};

// Power at a hosting node under constraint-(54) semantics.
double host_power_w(double workload_gops, bool any_vm, const PowerParams& pw) {
  const double norm = workload_gops / pw.server_max_gops;
  auto [ip, fp] = floor_split(norm);
  return pw.server_idle_w * (ip + (any_vm ? 1.0 : 0.0)) +
         fp * (pw.server_max_w - pw.server_idle_w);
}

struct HostState {
  std::vector<double> gops;      // committed baseband workload
  std::vector<char> has_cnvm;
};

bool fits(const Topology& topo, const Scenario& scenario, const HostState& state,
          int h, double extra_gops, bool extra_cnvm) {
  const double gops = state.gops[h] + extra_gops +
                      ((state.has_cnvm[h] || extra_cnvm) ? scenario.power.cnvm_gops : 0.0);
  return host_power_w(gops, true, scenario.power) <=
         scenario.power.host_budget_w(topo.hosting_node(h).kind) + 1e-9;
}

std::vector<int> cores_by_users(const Topology& topo, const DemandSet& demand) {
  std::vector<std::pair<int, int>> loaded;  // (-users, core)
  for (int m = 0; m < topo.num_core(); ++m) {
    int users = 0;
    for (int r : topo.rrhs_under({NodeKind::kCore, m})) users += demand.cells[r].users;
    loaded.emplace_back(-users, m);
  }
  std::sort(loaded.begin(), loaded.end());
  std::vector<int> order;
  for (auto& [neg, m] : loaded) order.push_back(m);
  return order;
}

std::vector<int> olts_by_users(const Topology& topo, const DemandSet& demand) {
  std::vector<std::pair<int, int>> loaded;
  for (int l = 0; l < topo.num_olt(); ++l) {
    int users = 0;
    for (int r : topo.rrhs_under({NodeKind::kOlt, l})) users += demand.cells[r].users;
    loaded.emplace_back(-users, l);
  }
  std::sort(loaded.begin(), loaded.end());
  std::vector<int> order;
  for (auto& [neg, l] : loaded) order.push_back(l);
  return order;
}

std::vector<int> place_with_plan(const DemandSet& demand, const Topology& topo,
                                 const Scenario& scenario, const VmPlan& plan,
                                 const PathTables& paths,
                                 const std::vector<int>& core_order) {
  const int R = topo.num_rrh();
  HostState state;
  state.gops.assign(topo.num_hosting(), 0.0);
  state.has_cnvm.assign(topo.num_hosting(), 0);

  std::vector<int> candidates;  // hosting indices in preference order base
  if (plan.olt_first) {
    for (int l = 0; l < topo.num_olt(); ++l)
      candidates.push_back(topo.hosting_index({NodeKind::kOlt, l}));
  } else {
    const int k = std::min(plan.core_top_k, topo.num_core());
    for (int i = 0; i < k; ++i)
      candidates.push_back(topo.hosting_index({NodeKind::kCore, core_order[i]}));
  }
  std::vector<int> fallback;  // core layer, for the greedy OLT pass
  if (plan.olt_first) {
    for (int m = 0; m < topo.num_core(); ++m)
      fallback.push_back(topo.hosting_index({NodeKind::kCore, m}));
  }

  std::vector<int> host_of(R, -1);
  for (int r = 0; r < R; ++r) {
    const double gops = bbuvm_workload(demand.cells[r].fronthaul_gbps, scenario.radio);
    auto try_assign = [&](const std::vector<int>& pool) {
      // Nearest first; pool order breaks hop ties.
      int best = -1, best_hops = 1 << 20, best_rank = 1 << 20;
      for (std::size_t rank = 0; rank < pool.size(); ++rank) {
        const int h = pool[rank];
        if (!fits(topo, scenario, state, h, gops, false)) continue;
        const int hops = paths.hop_rrh_host[r * topo.num_hosting() + h];
        if (hops < best_hops || (hops == best_hops && static_cast<int>(rank) < best_rank)) {
          best = h;
          best_hops = hops;
          best_rank = static_cast<int>(rank);
        }
      }
      return best;
    };
    int h = try_assign(candidates);
    if (h < 0 && !fallback.empty()) h = try_assign(fallback);
    if (h < 0) {
      throw std::runtime_error("place_bbuvms: no hosting node can take RRH" +
                               std::to_string(r));
    }
    host_of[r] = h;
    state.gops[h] += gops;
  }
  return host_of;
}

struct PipelineResult {
  bool ok = false;
  double power = kInfPower;
  Placement placement;
  std::vector<SweepStep> cnvm_sweep;
  std::vector<SweepStep> cache_sweep;
  std::vector<int> cnvm_hosts;
  bool sites_are_olts = false;
  std::vector<int> cache_sites;
};

// CNVM count sweep followed by the cache count sweep; returns the finished
// placement and its power.
PipelineResult run_pipeline(const Scenario& scenario, const Topology& topo,
                            const DemandSet& demand, const Options& options,
                            const Assembler& assembler, const PathTables& paths,
                            const std::vector<int>& core_order,
                            const std::vector<int>& olt_order,
                            std::vector<int> bbuvm_host) {
  const int H = topo.num_hosting();
  const int R = topo.num_rrh();
  PipelineResult out;

  HostState state;
  state.gops.assign(H, 0.0);
  state.has_cnvm.assign(H, 0);
  for (int r = 0; r < R; ++r) {
    state.gops[bbuvm_host[r]] +=
        bbuvm_workload(demand.cells[r].fronthaul_gbps, scenario.radio);
  }

  Placement plan;
  plan.bbuvm_host = std::move(bbuvm_host);
  plan.cnvm_of_host.assign(H, -1);
  plan.server_core = core_order[0];
  plan.cache_site_of_rrh.assign(R, -1);
  plan.site_hit.assign(H, 0.0);

  // Sweep the CNVM count over the sorted core nodes.
  Placement best_plan = plan;
  double best_power = kInfPower;
  int best_i = 0;
  for (int i = 1; i <= topo.num_core(); ++i) {
    Placement trial = plan;
    std::vector<int> actives;
    for (int k = 0; k < i; ++k)
      actives.push_back(topo.hosting_index({NodeKind::kCore, core_order[k]}));
    bool feasible = true;
    std::vector<char> cnvm_used(H, 0);
    for (int h = 0; h < H && feasible; ++h) {
      if (state.gops[h] <= 0.0) continue;
      int chosen = -1, chosen_hops = 1 << 20, chosen_rank = 1 << 20;
      for (std::size_t rank = 0; rank < actives.size(); ++rank) {
        const int p = actives[rank];
        if (!fits(topo, scenario, state, p, p == h ? 0.0 : 0.0, true)) continue;
        const int hops = paths.hop_host_host[p * H + h];
        if (hops < chosen_hops ||
            (hops == chosen_hops && static_cast<int>(rank) < chosen_rank)) {
          chosen = p;
          chosen_hops = hops;
          chosen_rank = static_cast<int>(rank);
        }
      }
      if (chosen < 0) {
        feasible = false;
        break;
      }
      trial.cnvm_of_host[h] = chosen;
      cnvm_used[chosen] = 1;
    }
    if (!feasible) break;
    const double power = assembler.evaluate(trial);
    out.cnvm_sweep.push_back({i, power});
    if (power < best_power - 1e-9) {
      best_power = power;
      best_plan = trial;
      best_i = i;
    } else {
      break;  // first non-improving count ends the sweep
    }
  }
  if (best_i == 0) return out;  // no feasible CNVM assignment
  plan = best_plan;

  // Cache phase: site layer per the 50%-of-capacity rule.
  if (options.approach != Approach::kVirtOnly) {
    const int capacity = R * scenario.radio.max_users_per_cell;
    const bool busy = demand.total_users() >= 0.5 * capacity;
    out.sites_are_olts = busy;
    std::vector<int> sites;
    if (busy) {
      for (int l : olt_order) sites.push_back(topo.hosting_index({NodeKind::kOlt, l}));
    } else {
      for (int m : core_order) sites.push_back(topo.hosting_index({NodeKind::kCore, m}));
    }

    Placement cached_best = plan;
    double cached_best_power = best_power;
    double prev_power = kInfPower;
    for (int j = 1; j <= static_cast<int>(sites.size()); ++j) {
      Placement trial = plan;
      // Serve each cell from the nearest feasible active site.
      for (int r = 0; r < R; ++r) {
        const int h = trial.bbuvm_host[r];
        int chosen = -1, chosen_hops = 1 << 20, chosen_rank = 1 << 20;
        for (int rank = 0; rank < j; ++rank) {
          const int u = sites[rank];
          if (u != h && !paths.pair_ok[u * H + h]) continue;
          const int hops = paths.hop_host_host[u * H + h];
          if (hops < chosen_hops || (hops == chosen_hops && rank < chosen_rank)) {
            chosen = u;
            chosen_hops = hops;
            chosen_rank = rank;
          }
        }
        trial.cache_site_of_rrh[r] = chosen;
      }
      // One-dimensional hit-ratio search per site, in site order.
      for (int rank = 0; rank < j; ++rank) {
        const int u = sites[rank];
        double best_hit = 0.0;
        double best_site_power = kInfPower;
        const int steps =
            static_cast<int>(options.max_hit_ratio / options.hit_ratio_grid_step);
        for (int g = 0; g <= steps; ++g) {
          const double hit = g * options.hit_ratio_grid_step;
          trial.site_hit[u] = hit;
          const double power = assembler.evaluate(trial);
          if (power < best_site_power - 1e-9) {
            best_site_power = power;
            best_hit = hit;
          }
        }
        trial.site_hit[u] = best_hit;
      }
      const double power = assembler.evaluate(trial);
      out.cache_sweep.push_back({j, power});
      if (power < cached_best_power - 1e-9) {
        cached_best_power = power;
        cached_best = trial;
      }
      if (j > 1 && power >= prev_power - 1e-9) break;
      prev_power = power;
    }
    plan = cached_best;
    best_power = cached_best_power;
  }

  out.ok = true;
  out.power = best_power;
  out.placement = plan;
  for (int h = 0; h < H; ++h) {
    // Report the active CNVM hosts (those actually feeding a BBUVM).
    if (state.gops[h] > 0.0 && plan.cnvm_of_host[h] >= 0) {
      if (std::find(out.cnvm_hosts.begin(), out.cnvm_hosts.end(),
                    plan.cnvm_of_host[h]) == out.cnvm_hosts.end()) {
        out.cnvm_hosts.push_back(plan.cnvm_of_host[h]);
      }
    }
  }
  std::sort(out.cnvm_hosts.begin(), out.cnvm_hosts.end());
  for (int u = 0; u < H; ++u) {
    if (plan.site_hit[u] > 0.0) out.cache_sites.push_back(u);
  }
  return out;
}

}  // namespace

std::string VmPlan::name() const {
  if (olt_first) return "olt-first";
  return "core-top" + std::to_string(core_top_k);
}

std::vector<int> place_bbuvms(const DemandSet& demand, const Topology& topology,
                              const Scenario& scenario) {
  return place_bbuvms(demand, topology, scenario, VmPlan{true, 0});
}

std::vector<int> place_bbuvms(const DemandSet& demand, const Topology& topology,
                              const Scenario& scenario, const VmPlan& plan) {
  PathTables paths = PathTables::build(topology);
  return place_with_plan(demand, topology, scenario, plan, paths,
                         cores_by_users(topology, demand));
}

RunResult run(const Scenario& scenario, const Topology& topology,
              const DemandSet& demand, const Options& options) {
  if (static_cast<int>(demand.cells.size()) != topology.num_rrh()) {
    throw std::invalid_argument("heuristic::run: demand does not match topology");
  }
  PathTables paths = PathTables::build(topology);
  const std::vector<int> core_order = cores_by_users(topology, demand);
  const std::vector<int> olt_order = olts_by_users(topology, demand);
  const CnvmInterTraffic inter =
      cnvm_inter_traffic(options.inter_traffic_fraction, demand, scenario, topology,
                         core_hosting_pairs(topology));
  const PiecewiseSegments piecewise = build_piecewise_segments(
      scenario.zipf.exponent, scenario.zipf.catalog_size, scenario.zipf.segments);
  Assembler assembler(scenario, topology, demand, inter, paths, piecewise);

  // Candidate VM plans: the greedy OLT-first pass, then core-layer
  // consolidation at increasing spread. The caching-only baseline keeps its
  // VMs pinned at the parent core of each cell.
  std::vector<VmPlan> plans;
  if (options.approach == Approach::kCachingOnly) {
    plans.push_back({false, topology.num_core()});
  } else {
    plans.push_back({true, 0});
    for (int k = 1; k <= topology.num_core(); ++k) plans.push_back({false, k});
  }

  RunResult result{Solution(topology), {}, {}};
  double best_power = kInfPower;
  PipelineResult best_pipeline;
  std::string best_plan_name;

  for (const VmPlan& plan : plans) {
    std::vector<int> hosts;
    try {
      hosts = place_with_plan(demand, topology, scenario, plan, paths, core_order);
    } catch (const std::runtime_error&) {
      result.trace.plan_power.emplace_back(plan.name(), kInfPower);
      continue;
    }
    PipelineResult pipeline =
        run_pipeline(scenario, topology, demand, options, assembler, paths,
                     core_order, olt_order, std::move(hosts));
    result.trace.plan_power.emplace_back(plan.name(), pipeline.power);
    if (pipeline.ok && pipeline.power < best_power - 1e-9) {
      best_power = pipeline.power;
      best_pipeline = std::move(pipeline);
      best_plan_name = plan.name();
    }
  }
  if (!std::isfinite(best_power)) {
    throw std::runtime_error("heuristic::run: no feasible placement");
  }

  result.solution = assembler.assemble(best_pipeline.placement);
  result.power = eval_total(result.solution, scenario, topology);
  result.trace.bbuvm_host = best_pipeline.placement.bbuvm_host;
  result.trace.vm_plan = best_plan_name;
  result.trace.cnvm_sweep = best_pipeline.cnvm_sweep;
  result.trace.cache_sweep = best_pipeline.cache_sweep;
  result.trace.cnvm_hosts = best_pipeline.cnvm_hosts;
  result.trace.video_server_core = best_pipeline.placement.server_core;
  result.trace.cache_sites_are_olts = best_pipeline.sites_are_olts;
  result.trace.cache_sites = best_pipeline.cache_sites;
  for (int u : best_pipeline.cache_sites) {
    result.trace.cache_hit.push_back(best_pipeline.placement.site_hit[u]);
  }
  return result;
}

}  // namespace eevc::heuristic
