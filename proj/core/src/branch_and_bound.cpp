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

#include "eevc/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "eevc/presolve.hpp"
#include "simplex_core.hpp"

namespace eevc::solver {

const char* to_cstring(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kFeasibleGap: return "feasible-gap";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kNodeLimit: return "node-limit";
  }
  return "?";
}

namespace {

constexpr double kInf = milp::kInf;

struct BoundChange {
  std::shared_ptr<BoundChange> parent;
  int var = -1;
  double lower = 0.0;
  double upper = 0.0;
};

struct Node {
  double bound = -kInf;  // parent LP objective, a valid lower bound
  long id = 0;
  int depth = 0;
  std::shared_ptr<BoundChange> changes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;
  }
};

bool rows_satisfied(const milp::Model& model, const std::vector<double>& x,
                    double tol) {
  for (const milp::LinearConstraint& row : model.constraints()) {
    double activity = 0.0;
    for (const milp::LinearTerm& t : row.terms) activity += t.coef * x[t.var];
    const double scale = 1.0 + std::fabs(row.rhs);
    switch (row.sense) {
      case milp::Sense::kLe:
        if (activity > row.rhs + tol * scale) return false;
        break;
      case milp::Sense::kGe:
        if (activity < row.rhs - tol * scale) return false;
        break;
      case milp::Sense::kEq:
        if (std::fabs(activity - row.rhs) > tol * scale) return false;
        break;
    }
  }
  return true;
}

}  // namespace

MilpResult solve_milp(const milp::Model& model, const MilpOptions& options) {
  model.validate();
  MilpResult result;

  std::vector<int> int_vars;
  for (const milp::Variable& var : model.variables()) {
    if (var.kind != milp::VarKind::kContinuous) {
      if (!std::isfinite(var.lower) || !std::isfinite(var.upper)) {
        throw std::invalid_argument("solve_milp: integer variable " + var.name +
                                    " must be bounded");
      }
      int_vars.push_back(var.id);
    }
  }

  // Root presolve: bound tightening plus redundant-row elimination.
  std::vector<double> root_lower, root_upper;
  std::vector<char> keep(model.num_constraints(), 1);
  if (options.root_presolve) {
    PresolveResult pre = presolve_bounds(model);
    if (pre.infeasible) {
      result.status = MilpStatus::kInfeasible;
      return result;
    }
    root_lower = std::move(pre.lower);
    root_upper = std::move(pre.upper);
    keep = std::move(pre.keep_row);
  } else {
    root_lower.resize(model.num_variables());
    root_upper.resize(model.num_variables());
    for (const milp::Variable& var : model.variables()) {
      root_lower[var.id] = var.lower;
      root_upper[var.id] = var.upper;
    }
  }

  SimplexCore core(model, keep);

  const auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    if (options.time_limit_s <= 0.0) return false;
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - started);
    return elapsed.count() > options.time_limit_s;
  };

  double incumbent_obj = kInf;
  std::vector<double> incumbent;
  if (options.initial_incumbent != nullptr) {
    const std::vector<double>& cand = *options.initial_incumbent;
    if (static_cast<int>(cand.size()) == model.num_variables() &&
        rows_satisfied(model, cand, options.integrality_tol)) {
      bool integral = true;
      for (int v : int_vars) {
        if (std::fabs(cand[v] - std::round(cand[v])) > options.integrality_tol) {
          integral = false;
          break;
        }
      }
      if (integral) {
        incumbent = cand;
        incumbent_obj = model.objective_value(cand);
      }
    }
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({-kInf, next_id++, 0, nullptr});

  std::vector<double> cur_lower, cur_upper;
  auto apply_chain = [&](const std::shared_ptr<BoundChange>& chain) {
    cur_lower = root_lower;
    cur_upper = root_upper;
    for (const BoundChange* c = chain.get(); c != nullptr; c = c->parent.get()) {
      cur_lower[c->var] = std::max(cur_lower[c->var], c->lower);
      cur_upper[c->var] = std::min(cur_upper[c->var], c->upper);
    }
  };

  auto prune_threshold = [&]() {
    if (!std::isfinite(incumbent_obj)) return kInf;
    return incumbent_obj - std::max(options.gap_tol * std::max(1.0, std::fabs(incumbent_obj)),
                                    1e-9);
  };

  bool hit_node_limit = false;
  bool hit_time_limit = false;
  bool root_solved = false;

  while (!open.empty()) {
    if (std::isfinite(incumbent_obj) && open.top().bound >= prune_threshold()) {
      break;  // everything left is dominated; the bound closes the gap
    }
    if (hit_node_limit || hit_time_limit) break;

    Node node = open.top();
    open.pop();

    // Depth-first dive from the popped node.
    bool diving = true;
    std::shared_ptr<BoundChange> chain = node.changes;
    int depth = node.depth;
    while (diving) {
      if (options.node_limit >= 0 && result.nodes_explored >= options.node_limit) {
        hit_node_limit = true;
        // Preserve this subtree's bound for reporting.
        open.push({node.bound, next_id++, depth, chain});
        break;
      }
      if (out_of_time()) {
        hit_time_limit = true;
        open.push({node.bound, next_id++, depth, chain});
        break;
      }

      apply_chain(chain);
      ++result.nodes_explored;
      if (!propagate_bounds(model, keep, cur_lower, cur_upper, 2)) {
        break;  // node infeasible by propagation
      }
      core.set_structural_bounds(cur_lower, cur_upper);
      LpStatus status = root_solved && options.warm_start_nodes
                            ? core.dual_resolve()
                            : core.primal_solve();
      root_solved = true;
      result.lp_iterations += core.iterations();
      if (status == LpStatus::kInfeasible) break;
      if (status == LpStatus::kUnbounded) {
        throw std::runtime_error("solve_milp: relaxation is unbounded");
      }
      if (status != LpStatus::kOptimal) {
        throw std::runtime_error("solve_milp: relaxation solve failed");
      }
      const double lp_obj = core.objective();
      node.bound = std::max(node.bound, lp_obj);
      if (lp_obj >= prune_threshold()) break;

      std::vector<double> values = core.structural_values();
      // Most fractional integer variable; ties to the lowest id.
      int branch_var = -1;
      double branch_frac = options.integrality_tol;
      double branch_value = 0.0;
      for (int v : int_vars) {
        const double frac = std::fabs(values[v] - std::round(values[v]));
        if (frac > branch_frac + 1e-12) {
          branch_frac = frac;
          branch_var = v;
          branch_value = values[v];
        }
      }

      if (branch_var < 0) {
        // Integral leaf. Fix the integers at their rounded values and
        // resolve so the continuous part is exact, then accept.
        std::vector<double> leaf_lower = cur_lower, leaf_upper = cur_upper;
        for (int v : int_vars) {
          const double rounded = std::round(values[v]);
          leaf_lower[v] = rounded;
          leaf_upper[v] = rounded;
        }
        core.set_structural_bounds(leaf_lower, leaf_upper);
        LpStatus fix_status = core.dual_resolve();
        result.lp_iterations += core.iterations();
        std::vector<double> leaf_values;
        double leaf_obj = kInf;
        if (fix_status == LpStatus::kOptimal) {
          leaf_values = core.structural_values();
          leaf_obj = core.objective();
        } else {
          leaf_values = values;
          leaf_obj = lp_obj;
        }
        if (leaf_obj < incumbent_obj - 1e-12) {
          incumbent_obj = leaf_obj;
          incumbent = leaf_values;
        }
        break;
      }

      // Children: dive towards the nearest integer, queue the sibling.
      const double floor_val = std::floor(branch_value);
      auto down = std::make_shared<BoundChange>();
      down->parent = chain;
      down->var = branch_var;
      down->lower = -kInf;
      down->upper = floor_val;
      auto up = std::make_shared<BoundChange>();
      up->parent = chain;
      up->var = branch_var;
      up->lower = floor_val + 1.0;
      up->upper = kInf;

      const bool dive_down = branch_value - floor_val < 0.5;
      Node sibling;
      sibling.bound = lp_obj;
      sibling.id = next_id++;
      sibling.depth = depth + 1;
      sibling.changes = dive_down ? up : down;
      open.push(sibling);

      chain = dive_down ? down : up;
      node.bound = lp_obj;
      ++depth;
    }
  }

  // Final bound: the least of the remaining open bounds and the incumbent.
  const double best_open_bound = open.empty() ? kInf : open.top().bound;
  double bound = std::min(best_open_bound, incumbent_obj);
  if (!hit_node_limit && !hit_time_limit && open.empty()) {
    bound = incumbent_obj;  // search exhausted
  }

  result.has_incumbent = std::isfinite(incumbent_obj);
  result.objective = incumbent_obj;
  result.best_bound = bound;
  result.values = std::move(incumbent);
  if (result.has_incumbent) {
    result.gap = (result.objective - result.best_bound) /
                 std::max(1.0, std::fabs(result.objective));
    if (result.gap < 0.0) result.gap = 0.0;
  } else {
    result.gap = kInf;
  }

  if (!result.has_incumbent) {
    result.status = (hit_node_limit || hit_time_limit) ? MilpStatus::kNodeLimit
                                                       : MilpStatus::kInfeasible;
  } else if (hit_node_limit) {
    result.status = MilpStatus::kNodeLimit;
  } else if (hit_time_limit) {
    result.status = MilpStatus::kFeasibleGap;
  } else {
    result.status = MilpStatus::kOptimal;
  }
  return result;
}

OracleResult enumerate_oracle(const milp::Model& model,
                              const std::vector<int>& binary_subset) {
  if (binary_subset.size() > 25) {
    throw std::invalid_argument("enumerate_oracle: subset larger than 25");
  }
  for (int v : binary_subset) {
    if (v < 0 || v >= model.num_variables()) {
      throw std::invalid_argument("enumerate_oracle: unknown variable in subset");
    }
  }
  model.validate();

  std::vector<char> keep(model.num_constraints(), 1);
  SimplexCore core(model, keep);
  std::vector<double> lower(model.num_variables()), upper(model.num_variables());
  for (const milp::Variable& var : model.variables()) {
    lower[var.id] = var.lower;
    upper[var.id] = var.upper;
  }

  OracleResult out;
  out.objective = kInf;
  const std::uint64_t patterns = 1ULL << binary_subset.size();
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::vector<double> lo = lower, hi = upper;
    bool valid = true;
    for (std::size_t b = 0; b < binary_subset.size(); ++b) {
      const int var = binary_subset[b];
      const double value = (mask >> b) & 1ULL ? 1.0 : 0.0;
      if (value < lower[var] - 1e-12 || value > upper[var] + 1e-12) {
        valid = false;
        break;
      }
      lo[var] = hi[var] = value;
    }
    if (!valid) continue;
    core.set_structural_bounds(lo, hi);
    LpStatus status = core.primal_solve();
    ++out.lp_solves;
    if (status != LpStatus::kOptimal) continue;
    if (core.objective() < out.objective - 1e-12) {
      out.objective = core.objective();
      out.values = core.structural_values();
      out.feasible = true;
    }
  }
  if (!out.feasible) out.objective = 0.0;
  return out;
}

}  // namespace eevc::solver
