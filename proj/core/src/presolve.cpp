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

#include "eevc/presolve.hpp"

#include <algorithm>
#include <cmath>

namespace eevc::solver {
namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = milp::kInf;

struct RowRange {
  double lo = -kInf;  // required activity lower bound
  double hi = kInf;   // required activity upper bound
};

RowRange row_range(const milp::LinearConstraint& row) {
  switch (row.sense) {
    case milp::Sense::kLe: return {-kInf, row.rhs};
    case milp::Sense::kGe: return {row.rhs, kInf};
    case milp::Sense::kEq: return {row.rhs, row.rhs};
  }
  return {};
}

void round_integer_bounds(const milp::Model& model, std::vector<double>& lower,
                          std::vector<double>& upper) {
  for (const milp::Variable& var : model.variables()) {
    if (var.kind == milp::VarKind::kContinuous) continue;
    if (std::isfinite(lower[var.id])) lower[var.id] = std::ceil(lower[var.id] - 1e-7);
    if (std::isfinite(upper[var.id])) upper[var.id] = std::floor(upper[var.id] + 1e-7);
  }
}

// One pass of implied-bound tightening over the kept rows. Returns the
// number of bound changes; sets *infeasible on a proven empty box.
int sweep(const milp::Model& model, const std::vector<char>& keep_row,
          std::vector<double>& lower, std::vector<double>& upper,
          bool* infeasible, std::string* reason, std::vector<char>* drop_out) {
  int changes = 0;
  const auto& rows = model.constraints();
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (!keep_row[c]) continue;
    if (drop_out && !(*drop_out)[c]) continue;
    const milp::LinearConstraint& row = rows[c];
    const RowRange need = row_range(row);

    // Min/max activity with counts of infinite contributions.
    double min_act = 0.0, max_act = 0.0;
    int min_inf = 0, max_inf = 0;
    for (const milp::LinearTerm& t : row.terms) {
      const double l = lower[t.var], u = upper[t.var];
      if (t.coef > 0.0) {
        if (std::isfinite(l)) min_act += t.coef * l; else ++min_inf;
        if (std::isfinite(u)) max_act += t.coef * u; else ++max_inf;
      } else {
        if (std::isfinite(u)) min_act += t.coef * u; else ++min_inf;
        if (std::isfinite(l)) max_act += t.coef * l; else ++max_inf;
      }
    }
    const double row_scale = 1.0 + std::fabs(row.rhs);
    if (min_inf == 0 && min_act > need.hi + kTol * row_scale) {
      *infeasible = true;
      if (reason) *reason = "row " + row.label + " cannot reach its bound";
      return changes;
    }
    if (max_inf == 0 && max_act < need.lo - kTol * row_scale) {
      *infeasible = true;
      if (reason) *reason = "row " + row.label + " cannot reach its bound";
      return changes;
    }
    // Redundant row: always satisfied under the current box.
    if (drop_out) {
      const bool hi_ok = need.hi == kInf || (max_inf == 0 && max_act <= need.hi + kTol * row_scale);
      const bool lo_ok = need.lo == -kInf || (min_inf == 0 && min_act >= need.lo - kTol * row_scale);
      if (hi_ok && lo_ok) {
        (*drop_out)[c] = 0;
        continue;
      }
    }

    // Implied bounds for each variable in the row.
    for (const milp::LinearTerm& t : row.terms) {
      const double l = lower[t.var], u = upper[t.var];
      // Activity of the rest of the row.
      double rest_min, rest_max;
      bool rest_min_ok, rest_max_ok;
      if (t.coef > 0.0) {
        rest_min_ok = min_inf == 0 || (min_inf == 1 && !std::isfinite(l));
        rest_max_ok = max_inf == 0 || (max_inf == 1 && !std::isfinite(u));
        rest_min = min_act - (std::isfinite(l) ? t.coef * l : 0.0);
        rest_max = max_act - (std::isfinite(u) ? t.coef * u : 0.0);
      } else {
        rest_min_ok = min_inf == 0 || (min_inf == 1 && !std::isfinite(u));
        rest_max_ok = max_inf == 0 || (max_inf == 1 && !std::isfinite(l));
        rest_min = min_act - (std::isfinite(u) ? t.coef * u : 0.0);
        rest_max = max_act - (std::isfinite(l) ? t.coef * l : 0.0);
      }
      // need.lo <= coef*x + rest <= need.hi
      if (need.hi != kInf && rest_min_ok) {
        const double limit = (need.hi - rest_min) / t.coef;
        if (t.coef > 0.0) {
          if (limit < upper[t.var] - 1e-7 * (1.0 + std::fabs(limit))) {
            upper[t.var] = limit;
            ++changes;
          }
        } else if (limit > lower[t.var] + 1e-7 * (1.0 + std::fabs(limit))) {
          lower[t.var] = limit;
          ++changes;
        }
      }
      if (need.lo != -kInf && rest_max_ok) {
        const double limit = (need.lo - rest_max) / t.coef;
        if (t.coef > 0.0) {
          if (limit > lower[t.var] + 1e-7 * (1.0 + std::fabs(limit))) {
            lower[t.var] = limit;
            ++changes;
          }
        } else if (limit < upper[t.var] - 1e-7 * (1.0 + std::fabs(limit))) {
          upper[t.var] = limit;
          ++changes;
        }
      }
    }
  }
  round_integer_bounds(model, lower, upper);
  for (const milp::Variable& var : model.variables()) {
    if (lower[var.id] > upper[var.id] + 1e-7) {
      *infeasible = true;
      if (reason) *reason = "empty domain for " + var.name;
      return changes;
    }
    // Snap near-crossed bounds onto a point.
    if (lower[var.id] > upper[var.id]) lower[var.id] = upper[var.id];
  }
  return changes;
}

}  // namespace

PresolveResult presolve_bounds(const milp::Model& model) {
  PresolveResult out;
  const int n = model.num_variables();
  out.lower.resize(n);
  out.upper.resize(n);
  for (const milp::Variable& var : model.variables()) {
    out.lower[var.id] = var.lower;
    out.upper[var.id] = var.upper;
  }
  round_integer_bounds(model, out.lower, out.upper);
  out.keep_row.assign(model.num_constraints(), 1);

  std::vector<char> all(model.num_constraints(), 1);
  for (int round = 0; round < 25; ++round) {
    ++out.rounds;
    bool infeasible = false;
    int changes = sweep(model, all, out.lower, out.upper, &infeasible,
                        &out.infeasible_reason, &out.keep_row);
    if (infeasible) {
      out.infeasible = true;
      return out;
    }
    if (changes == 0) break;
  }
  for (int v = 0; v < n; ++v) {
    if (out.lower[v] == out.upper[v]) ++out.fixed_variables;
  }
  for (char kept : out.keep_row) {
    if (!kept) ++out.dropped_rows;
  }
  return out;
}

bool propagate_bounds(const milp::Model& model, const std::vector<char>& keep_row,
                      std::vector<double>& lower, std::vector<double>& upper,
                      int max_rounds) {
  for (int round = 0; round < max_rounds; ++round) {
    bool infeasible = false;
    int changes = sweep(model, keep_row, lower, upper, &infeasible, nullptr, nullptr);
    if (infeasible) return false;
    if (changes == 0) break;
  }
  return true;
}

}  // namespace eevc::solver
