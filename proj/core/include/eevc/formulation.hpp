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

#include "eevc/model.hpp"
#include "eevc/piecewise.hpp"
#include "eevc/scenario.hpp"
#include "eevc/solution.hpp"
#include "eevc/topology.hpp"

namespace eevc {

enum class Approach { kCachingOnly, kVirtOnly, kIntegrated };

const char* to_cstring(Approach approach);
Approach approach_from_string(const std::string& name);

/// Ids of every model variable, laid out exactly like Solution. -1 marks
/// slots that do not exist (e.g. the diagonal of pair matrices).
struct VariableMap {
  int num_hosting = 0, num_rrh = 0, num_core = 0;
  int num_arcs = 0, num_hosting_arcs = 0, num_core_arcs = 0;

  std::vector<int> cnvm_traffic, bbuvm_traffic, regular_traffic, inter_cnvm,
      cache_traffic, cache_routed, server_traffic, server_routed, server_to_host,
      pair_traffic;
  std::vector<int> hosts_bbuvm, serves_rrh, cnvm_serves, hosts_cnvm, cnvm_pair,
      hosts_any_vm, cache_serves, hosts_server;
  std::vector<int> hit_ratio, hit_gate, cache_size, cache_size_int,
      cache_size_frac;
  std::vector<int> bbu_workload, workload_int, workload_frac;
  std::vector<int> rrh_link_flow, pair_link_flow;
  std::vector<int> wavelengths_virtual, wavelengths_routed, wavelengths_physical,
      fibers, agg_ports;

  int hh(int p, int h) const { return p * num_hosting + h; }
  int hr(int h, int r) const { return h * num_rrh + r; }
  int sr(int s, int r) const { return s * num_rrh + r; }
  int sh(int s, int h) const { return s * num_hosting + h; }
  int uhr(int u, int h, int r) const { return (u * num_hosting + h) * num_rrh + r; }
  int shr(int s, int h, int r) const { return (s * num_hosting + h) * num_rrh + r; }
  int hra(int h, int r, int arc) const { return (h * num_rrh + r) * num_arcs + arc; }
  int pqa(int p, int q, int arc) const {
    return (p * num_hosting + q) * num_hosting_arcs + arc;
  }
  int nn(int i, int j) const { return i * num_core + j; }
  int nna(int i, int j, int arc) const {
    return (i * num_core + j) * num_core_arcs + arc;
  }
};

struct BuildReport {
  Approach approach = Approach::kIntegrated;
  int hour = 0;
  std::uint64_t seed = 0;
  int num_variables = 0;
  int num_constraints = 0;
  int num_binary = 0;
  int num_integer = 0;
  double big_m = 0.0;
  double zipf_exponent = 0.0;
  int zipf_catalog = 0;
  PiecewiseSegments piecewise;
  std::vector<std::pair<std::string, int>> variable_counts;  // by symbol
  std::vector<std::pair<int, int>> constraint_counts;        // by number

  std::string to_text() const;
};

struct Formulation {
  milp::Model model;
  VariableMap vars;
  BuildReport report;
};

/// Emits every model variable and constraint for one demand snapshot.
/// Approach flags are applied as bound fixings (no caches for the
/// virtualization-only runs; VM hosting restricted to the core layer for
/// the caching-only runs).
Formulation build_formulation(const Scenario& scenario, const Topology& topology,
                              Approach approach, const DemandSet& demand,
                              const CnvmInterTraffic& inter_traffic);

/// Packs a Solution into a model assignment (by variable id).
std::vector<double> encode_solution(const Solution& solution,
                                    const VariableMap& vars);

/// Reads a model assignment back into a Solution.
Solution decode_solution(const std::vector<double>& assignment,
                         const VariableMap& vars, const Topology& topology);

struct ConstraintViolation {
  std::string label;
  double residual = 0.0;
};

/// Every constraint (and variable bound / integrality requirement) violated
/// beyond tol, with its signed residual.
std::vector<ConstraintViolation> check_solution(const milp::Model& model,
                                                const std::vector<double>& assignment,
                                                double tol = 1e-6);

}  // namespace eevc
