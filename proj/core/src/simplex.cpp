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

#include "eevc/simplex.hpp"

#include "simplex_core.hpp"

namespace eevc::solver {

const char* to_cstring(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
    case LpStatus::kFailure: return "failure";
  }
  return "?";
}

LpResult solve_lp(const milp::Model& model, const SimplexOptions& options) {
  model.validate();
  std::vector<char> keep(model.num_constraints(), 1);
  SimplexCore core(model, keep);
  core.set_tolerances(options.feasibility_tol, options.optimality_tol);
  if (options.max_iterations > 0) core.set_iteration_cap(options.max_iterations);
  LpResult out;
  out.status = core.primal_solve();
  out.iterations = core.iterations();
  if (out.status == LpStatus::kOptimal) {
    out.objective = core.objective();
    out.dual_objective = core.dual_objective();
    out.values = core.structural_values();
  }
  return out;
}

}  // namespace eevc::solver
