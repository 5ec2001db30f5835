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

#include "eevc/model.hpp"

namespace eevc::milp {

/// Free-format MPS text (ROWS/COLUMNS with integer markers/RHS/BOUNDS).
/// Deterministic: ordered by variable and constraint id; numbers printed
/// with 17 significant digits so a reread reproduces the exact doubles.
std::string emit_mps(const Model& model);

/// CPLEX-style LP text (Minimize/Subject To/Bounds/Generals/Binaries).
/// Names are sanitized for the LP grammar; write-only companion format.
std::string emit_lp(const Model& model);

/// Reads free-format MPS as written by emit_mps (a superset: any
/// whitespace-separated free MPS with L/G/E rows, one N row, RHS, and
/// UP/LO/FX/FR/MI/PL/BV/UI/LI bounds). Throws std::runtime_error on
/// malformed input.
Model parse_mps(const std::string& text);

}  // namespace eevc::milp
