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

#include "eevc/model.hpp"

namespace eevc::solver {

enum class MilpStatus { kOptimal, kFeasibleGap, kInfeasible, kNodeLimit };

const char* to_cstring(MilpStatus status);

struct MilpResult {
  MilpStatus status = MilpStatus::kInfeasible;
  double objective = 0.0;   // incumbent, valid when has_incumbent
  double best_bound = 0.0;
  double gap = 0.0;         // (objective - best_bound) / max(1, |objective|)
  bool has_incumbent = false;
  std::vector<double> values;
  long nodes_explored = 0;
  long lp_iterations = 0;
};

struct MilpOptions {
  double gap_tol = 1e-6;
  double integrality_tol = 1e-6;
  long node_limit = -1;              // unlimited
  double time_limit_s = -1.0;        // unlimited; termination only, never search order
  bool root_presolve = true;
  bool warm_start_nodes = true;      // dual-simplex warm starts within the tree
  // Optional warm incumbent (full assignment by variable id). Used only for
  // pruning; solutions found by the search replace it.
  const std::vector<double>* initial_incumbent = nullptr;
};

/// Best-bound branch and bound with depth-first dives. Branches on the most
/// fractional integer variable (ties towards the lowest id). Node
/// relaxations warm-start the dual simplex from the parent basis.
MilpResult solve_milp(const milp::Model& model, const MilpOptions& options = {});

struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> values;
  long lp_solves = 0;
};

/// Exhausts all 0/1 assignments of `binary_subset` (at most 25 variables),
/// solving the continuous completion of each by LP, and returns the best.
/// Exact for models whose only integrality lies in the subset.
OracleResult enumerate_oracle(const milp::Model& model,
                              const std::vector<int>& binary_subset);

}  // namespace eevc::solver
