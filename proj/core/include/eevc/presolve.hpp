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

namespace eevc::solver {

struct PresolveResult {
  bool infeasible = false;
  std::string infeasible_reason;
  std::vector<double> lower, upper;  // tightened bounds, one per variable
  std::vector<char> keep_row;        // rows still needed after tightening
  int rounds = 0;
  int fixed_variables = 0;
  int dropped_rows = 0;
};

/// Iterated bound tightening: implied bounds from row activities, singleton
/// rows folded into bounds, redundant rows dropped, integer bounds rounded.
/// The model itself is left untouched.
PresolveResult presolve_bounds(const milp::Model& model);

/// One tightening sweep over the given working bounds (no row dropping).
/// Returns false when the bounds prove infeasibility. Used at search nodes.
bool propagate_bounds(const milp::Model& model, const std::vector<char>& keep_row,
                      std::vector<double>& lower, std::vector<double>& upper,
                      int max_rounds = 3);

}  // namespace eevc::solver
