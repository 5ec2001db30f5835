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

#include "eevc/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eevc/branch_and_bound.hpp"
#include "eevc/heuristic.hpp"
#include "eevc/mps_io.hpp"
#include "eevc/power.hpp"

namespace eevc {
namespace {

namespace fs = std::filesystem;

std::string fmt(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

struct CaseResult {
  int hour = 0;
  Approach approach = Approach::kIntegrated;
  std::string engine;
  PowerBreakdown power;
  Solution solution;
  bool feasible = true;
  std::string note;

  CaseResult(const Topology& topo) : solution(topo) {}
};

// Cheap structural checks applied to every produced solution; the small
// instances additionally get the full constraint check against the model.
std::vector<std::string> light_checks(const Solution& sol, const DemandSet& demand,
                                      const Scenario& scenario,
                                      const Topology& topo) {
  std::vector<std::string> problems;
  const int H = sol.num_hosting, R = sol.num_rrh, N = sol.num_core;
  const double alpha = scenario.power.backhaul_ratio;
  for (int r = 0; r < R; ++r) {
    double regular = 0.0, video = 0.0;
    for (int h = 0; h < H; ++h) regular += sol.regular_traffic[sol.hr(h, r)];
    for (int s = 0; s < N; ++s) video += sol.server_traffic[sol.sr(s, r)];
    for (int u = 0; u < H; ++u) video += sol.cache_traffic[sol.hr(u, r)];
    if (std::fabs(regular - demand.cells[r].regular_gbps) > 1e-6) {
      problems.push_back("regular demand mismatch at RRH" + std::to_string(r));
    }
    if (std::fabs(video - demand.cells[r].video_gbps) > 1e-6) {
      problems.push_back("video demand mismatch at RRH" + std::to_string(r));
    }
    double caches = 0.0;
    for (int u = 0; u < H; ++u) caches += sol.cache_serves[sol.hr(u, r)];
    if (caches > 1.0 + 1e-9) {
      problems.push_back("more than one cache serves RRH" + std::to_string(r));
    }
  }
  for (int h = 0; h < H; ++h) {
    double fed = 0.0, load = 0.0;
    for (int p = 0; p < H; ++p) fed += sol.cnvm_traffic[sol.hh(p, h)];
    for (int r = 0; r < R; ++r) load += sol.bbuvm_traffic[sol.hr(h, r)];
    if (std::fabs(fed - alpha * load) > 1e-6) {
      problems.push_back("backhaul feed mismatch at host " + std::to_string(h));
    }
    const double power =
        scenario.power.server_idle_w * (sol.workload_int[h] + sol.hosts_any_vm[h]) +
        sol.workload_frac[h] * (scenario.power.server_max_w - scenario.power.server_idle_w);
    if (power > scenario.power.host_budget_w(topo.hosting_node(h).kind) + 1e-6) {
      problems.push_back("hosting budget exceeded at host " + std::to_string(h));
    }
  }
  return problems;
}

CaseResult run_heuristic_case(const Scenario& scenario, const Topology& topo,
                              const DemandSet& demand, Approach approach,
                              double inter_fraction) {
  heuristic::Options options;
  options.approach = approach;
  options.inter_traffic_fraction = inter_fraction;
  heuristic::RunResult run = heuristic::run(scenario, topo, demand, options);
  CaseResult result(topo);
  result.approach = approach;
  result.engine = "heuristic";
  result.hour = demand.hour;
  result.power = run.power;
  result.solution = std::move(run.solution);
  return result;
}

CaseResult run_milp_case(const Scenario& scenario, const Topology& topo,
                         const DemandSet& demand, Approach approach,
                         double inter_fraction, double gap_tol, long node_limit,
                         std::string* status_note) {
  const CnvmInterTraffic inter = cnvm_inter_traffic(
      inter_fraction, demand, scenario, topo, core_hosting_pairs(topo));
  Formulation form = build_formulation(scenario, topo, approach, demand, inter);

  // The heuristic solution both seeds the incumbent and bounds the search.
  heuristic::Options hopt;
  hopt.approach = approach;
  hopt.inter_traffic_fraction = inter_fraction;
  heuristic::RunResult warm = heuristic::run(scenario, topo, demand, hopt);
  std::vector<double> warm_assignment = encode_solution(warm.solution, form.vars);

  solver::MilpOptions mopt;
  mopt.gap_tol = gap_tol;
  mopt.node_limit = node_limit;
  mopt.initial_incumbent = &warm_assignment;
  solver::MilpResult milp = solver::solve_milp(form.model, mopt);
  if (!milp.has_incumbent) {
    throw std::runtime_error("milp engine found no incumbent");
  }
  CaseResult result(topo);
  result.approach = approach;
  result.engine = "milp";
  result.hour = demand.hour;
  result.solution = decode_solution(milp.values, form.vars, topo);
  result.power = eval_total(result.solution, scenario, topo);
  if (status_note) {
    std::ostringstream note;
    note << to_cstring(milp.status) << " bound=" << fmt(milp.best_bound)
         << " gap=" << fmt(milp.gap * 100.0) << "%";
    *status_note = note.str();
  }
  return result;
}

std::string approach_key(Approach a) { return to_cstring(a); }

}  // namespace

RunConfig RunConfig::from_defaults(const RunDefaults& defaults) {
  RunConfig config;
  if (defaults.approach == "all") {
    config.approaches = {Approach::kCachingOnly, Approach::kVirtOnly,
                         Approach::kIntegrated};
  } else {
    config.approaches = {approach_from_string(defaults.approach)};
  }
  config.hours = defaults.hours;
  if (config.hours.empty()) {
    for (int h = 0; h < 24; ++h) config.hours.push_back(h);
  }
  config.seed = defaults.seed;
  config.engine = defaults.engine;
  config.inter_traffic_fraction = defaults.inter_traffic;
  config.out_dir = defaults.out_dir;
  config.gap_tol = defaults.gap_tol;
  config.node_limit = defaults.node_limit;
  return config;
}

int cmd_run(const ScenarioFile& scenario_file, const RunConfig& config,
            std::ostream& log, std::ostream& err) {
  try {
    const Scenario& scenario = scenario_file.scenario;
    Topology topo = scenario_file.topology.build(scenario.power);
    if (!topo.validate().empty()) {
      err << "error: scenario topology fails validation\n";
      return 2;
    }
    if (config.engine != "heuristic" && config.engine != "milp" &&
        config.engine != "both") {
      err << "error: unknown engine " << config.engine << "\n";
      return 2;
    }
    fs::create_directories(config.out_dir);

    std::ostringstream power_csv, placement_csv, savings_csv;
    power_csv << "# eevc power.csv v1: hour,approach,engine,router_ports,"
                 "transponders,edfas,regenerators,onu_rrh,olt,vm_servers,"
                 "video_server,caches,total\n";
    power_csv << "hour,approach,engine,router_ports,transponders,edfas,"
                 "regenerators,onu_rrh,olt,vm_servers,video_server,caches,total\n";
    placement_csv << "# eevc placement.csv v1: hour,approach,engine,node,"
                     "vm_workload_fraction,cache_percent\n";
    placement_csv << "hour,approach,engine,node,vm_workload_fraction,cache_percent\n";
    savings_csv << "# eevc savings.csv v1: hour,engine,virt_vs_caching_pct,"
                   "integrated_vs_virt_pct,integrated_vs_caching_pct\n";
    savings_csv << "hour,engine,virt_vs_caching_pct,integrated_vs_virt_pct,"
                   "integrated_vs_caching_pct\n";

    bool all_ok = true;
    const bool full_check = topo.num_hosting() <= 12;

    for (int hour : config.hours) {
      DemandSet demand = draw_cell_loads(scenario.profile, hour, config.seed, topo,
                                         scenario.radio);
      std::map<std::string, std::map<std::string, double>> totals;  // engine -> approach -> W
      for (Approach approach : config.approaches) {
        std::vector<CaseResult> cases;
        if (config.engine == "heuristic" || config.engine == "both") {
          cases.push_back(run_heuristic_case(scenario, topo, demand, approach,
                                             config.inter_traffic_fraction));
        }
        if (config.engine == "milp" || config.engine == "both") {
          std::string note;
          cases.push_back(run_milp_case(scenario, topo, demand, approach,
                                        config.inter_traffic_fraction,
                                        config.gap_tol, config.node_limit, &note));
          if (!note.empty()) log << "h" << hour << " " << approach_key(approach)
                                 << " milp: " << note << "\n";
        }
        for (CaseResult& result : cases) {
          // Row-level re-check: the total must equal the category sum.
          if (std::fabs(result.power.total - result.power.category_sum()) > 1e-9) {
            err << "internal error: breakdown sum mismatch\n";
            all_ok = false;
          }
          std::vector<std::string> problems =
              light_checks(result.solution, demand, scenario, topo);
          if (full_check) {
            const CnvmInterTraffic inter = cnvm_inter_traffic(
                config.inter_traffic_fraction, demand, scenario, topo,
                core_hosting_pairs(topo));
            Formulation form =
                build_formulation(scenario, topo, approach, demand, inter);
            auto violations = check_solution(
                form.model, encode_solution(result.solution, form.vars), 1e-6);
            for (const auto& v : violations) {
              problems.push_back("constraint " + v.label + " violated");
            }
          }
          for (const std::string& p : problems) {
            err << "feasibility: h" << hour << " " << approach_key(approach) << " "
                << result.engine << ": " << p << "\n";
            all_ok = false;
          }

          const PowerBreakdown& pb = result.power;
          power_csv << hour << ',' << approach_key(approach) << ','
                    << result.engine << ',' << fmt(pb.router_ports) << ','
                    << fmt(pb.transponders) << ',' << fmt(pb.edfas) << ','
                    << fmt(pb.regenerators) << ',' << fmt(pb.onu_rrh) << ','
                    << fmt(pb.olt) << ',' << fmt(pb.vm_servers) << ','
                    << fmt(pb.video_server) << ',' << fmt(pb.caches) << ','
                    << fmt(pb.total) << '\n';
          totals[result.engine][approach_key(approach)] = pb.total;

          double total_workload = 0.0;
          for (int h = 0; h < topo.num_hosting(); ++h) {
            total_workload += result.solution.bbu_workload[h] +
                              scenario.power.cnvm_gops * result.solution.hosts_cnvm[h];
          }
          for (int h = 0; h < topo.num_hosting(); ++h) {
            const double workload =
                result.solution.bbu_workload[h] +
                scenario.power.cnvm_gops * result.solution.hosts_cnvm[h];
            const double fraction =
                total_workload > 0.0 ? workload / total_workload : 0.0;
            placement_csv << hour << ',' << approach_key(approach) << ','
                          << result.engine << ','
                          << to_string(topo.hosting_node(h)) << ','
                          << fmt(fraction) << ','
                          << fmt(result.solution.cache_size[h]) << '\n';
          }
        }
      }
      for (const auto& [engine, by_approach] : totals) {
        auto get = [&](const char* name) {
          auto it = by_approach.find(name);
          return it == by_approach.end() ? -1.0 : it->second;
        };
        const double caching = get("caching-only");
        const double virt = get("virt-only");
        const double integrated = get("integrated");
        auto saving = [](double from, double to) {
          return from > 0.0 && to > 0.0 ? (from - to) / from * 100.0 : 0.0;
        };
        savings_csv << hour << ',' << engine << ','
                    << (caching > 0 && virt > 0 ? fmt(saving(caching, virt)) : "")
                    << ','
                    << (virt > 0 && integrated > 0 ? fmt(saving(virt, integrated))
                                                   : "")
                    << ','
                    << (caching > 0 && integrated > 0
                            ? fmt(saving(caching, integrated))
                            : "")
                    << '\n';
      }
    }

    write_atomic(fs::path(config.out_dir) / "power.csv", power_csv.str());
    write_atomic(fs::path(config.out_dir) / "placement.csv", placement_csv.str());
    write_atomic(fs::path(config.out_dir) / "savings.csv", savings_csv.str());
    log << "wrote " << (fs::path(config.out_dir) / "power.csv").string() << ", "
        << "placement.csv, savings.csv\n";
    return all_ok ? 0 : 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

int cmd_export(const ScenarioFile& scenario_file, const RunConfig& config,
               std::ostream& log, std::ostream& err) {
  try {
    const Scenario& scenario = scenario_file.scenario;
    Topology topo = scenario_file.topology.build(scenario.power);
    fs::create_directories(config.out_dir);
    for (int hour : config.hours) {
      DemandSet demand = draw_cell_loads(scenario.profile, hour, config.seed, topo,
                                         scenario.radio);
      const CnvmInterTraffic inter = cnvm_inter_traffic(
          config.inter_traffic_fraction, demand, scenario, topo,
          core_hosting_pairs(topo));
      for (Approach approach : config.approaches) {
        Formulation form =
            build_formulation(scenario, topo, approach, demand, inter);
        char stem[128];
        std::snprintf(stem, sizeof(stem), "model_h%02d_%s_s%llu", hour,
                      to_cstring(approach),
                      static_cast<unsigned long long>(config.seed));
        write_atomic(fs::path(config.out_dir) / (std::string(stem) + ".mps"),
                     milp::emit_mps(form.model));
        write_atomic(fs::path(config.out_dir) / (std::string(stem) + ".lp"),
                     milp::emit_lp(form.model));
        write_atomic(fs::path(config.out_dir) / (std::string(stem) + ".report.txt"),
                     form.report.to_text());
        log << "exported " << stem << " (" << form.model.num_variables()
            << " variables, " << form.model.num_constraints() << " constraints)\n";
      }
    }
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

int cmd_compare(const ScenarioFile& scenario_file, const RunConfig& config,
                std::ostream& log, std::ostream& err) {
  try {
    const Scenario& scenario = scenario_file.scenario;
    Topology topo = scenario_file.topology.build(scenario.power);
    fs::create_directories(config.out_dir);

    std::ostringstream csv;
    csv << "# eevc compare.csv v1: hour,approach,heuristic_w,milp_w,bound_w,"
           "status,gap_pct,gap_vs_bound_pct\n";
    csv << "hour,approach,heuristic_w,milp_w,bound_w,status,gap_pct,"
           "gap_vs_bound_pct\n";
    double max_gap = 0.0, sum_gap = 0.0;
    int count = 0;
    bool all_proven = true;

    for (int hour : config.hours) {
      DemandSet demand = draw_cell_loads(scenario.profile, hour, config.seed, topo,
                                         scenario.radio);
      for (Approach approach : config.approaches) {
        const CnvmInterTraffic inter = cnvm_inter_traffic(
            config.inter_traffic_fraction, demand, scenario, topo,
            core_hosting_pairs(topo));
        Formulation form =
            build_formulation(scenario, topo, approach, demand, inter);

        heuristic::Options hopt;
        hopt.approach = approach;
        hopt.inter_traffic_fraction = config.inter_traffic_fraction;
        heuristic::RunResult heur = heuristic::run(scenario, topo, demand, hopt);
        std::vector<double> warm = encode_solution(heur.solution, form.vars);

        solver::MilpOptions mopt;
        mopt.gap_tol = config.gap_tol;
        mopt.node_limit = config.node_limit;
        mopt.initial_incumbent = &warm;
        solver::MilpResult milp = solver::solve_milp(form.model, mopt);
        if (!milp.has_incumbent) {
          err << "h" << hour << ": milp found no incumbent\n";
          return 1;
        }
        const double h_power = heur.power.total;
        const double m_power = milp.objective;
        const double gap = (h_power - m_power) / m_power * 100.0;
        const double gap_vs_bound =
            (h_power - milp.best_bound) / milp.best_bound * 100.0;
        const bool proven = milp.status == solver::MilpStatus::kOptimal;
        if (!proven) all_proven = false;
        csv << hour << ',' << to_cstring(approach) << ',' << fmt(h_power) << ','
            << fmt(m_power) << ',' << fmt(milp.best_bound) << ','
            << to_cstring(milp.status) << ',' << fmt(gap) << ','
            << fmt(gap_vs_bound) << '\n';
        log << "h" << hour << " " << to_cstring(approach) << ": heuristic "
            << fmt(h_power) << " W, milp " << fmt(m_power) << " W ("
            << to_cstring(milp.status) << "), gap " << fmt(gap) << "%"
            << (proven ? "" : " [vs bound " + fmt(gap_vs_bound) + "%]") << "\n";
        const double counted = proven ? gap : gap_vs_bound;
        max_gap = std::max(max_gap, counted);
        sum_gap += counted;
        ++count;
      }
    }
    write_atomic(fs::path(config.out_dir) / "compare.csv", csv.str());
    log << "summary: max gap " << fmt(max_gap) << "%, average "
        << fmt(count ? sum_gap / count : 0.0) << "%"
        << (all_proven ? "" : " (some hours bounded, not proven)") << "\n";
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace eevc
