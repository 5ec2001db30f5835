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

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kFailure };

const char* to_cstring(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kFailure;
  double objective = 0.0;
  double dual_objective = 0.0;      // reconstructed; <= objective + 1e-6
  std::vector<double> values;       // one per model variable
  long iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  long max_iterations = -1;  // default 50*(m+n) + 10000
};

/// Primal simplex with bounded variables; integrality is ignored. Dantzig
/// pricing with a Bland's-rule fallback after 10*(m+n) degenerate pivots.
LpResult solve_lp(const milp::Model& model, const SimplexOptions& options = {});

}  // namespace eevc::solver
