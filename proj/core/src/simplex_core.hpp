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

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <memory>
#include <vector>

#include "eevc/model.hpp"
#include "eevc/simplex.hpp"

namespace eevc::solver {

// Revised bounded-variable simplex over a fixed row subset of a model.
// Columns: n structurals, then m slacks, then m artificials (phase 1 only).
// The basis inverse is an Eigen SparseLU factor plus product-form eta
// updates; refactorization every kRefactorEvery pivots.
class SimplexCore {
 public:
  enum class VarStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFreeAtZero };

  SimplexCore(const milp::Model& model, const std::vector<char>& keep_row);

  int num_rows() const { return m_; }
  int num_structural() const { return n_; }

  // Working bounds of structural variables (slack bounds are fixed by the
  // row senses).
  void set_structural_bounds(const std::vector<double>& lower,
                             const std::vector<double>& upper);

  void set_tolerances(double feasibility, double optimality) {
    feas_tol_ = feasibility;
    opt_tol_ = optimality;
  }
  void set_iteration_cap(long cap) { iteration_cap_ = cap; }

  // Cold start: phase-1 artificial basis, then phase 2 on the model costs.
  LpStatus primal_solve();
  // Warm start from the current basis after bound changes; falls back to a
  // cold primal solve if the dual iteration stalls.
  LpStatus dual_resolve();

  double objective() const { return objective_; }
  double dual_objective() const { return dual_objective_; }
  long iterations() const { return iterations_; }
  // Structural variable values (size n).
  std::vector<double> structural_values() const;

  struct Basis {
    std::vector<int> basic;
    std::vector<VarStatus> status;
  };
  Basis save_basis() const { return {basic_, status_}; }
  void load_basis(const Basis& basis);
  bool has_basis() const { return !basic_.empty(); }

 private:
  static constexpr int kRefactorEvery = 100;

  int total_cols() const { return n_ + m_ + m_; }
  bool is_artificial(int j) const { return j >= n_ + m_; }
  double lower_of(int j) const { return lower_[j]; }
  double upper_of(int j) const { return upper_[j]; }

  // Column access: structure of column j appended to (rows, vals).
  void column(int j, std::vector<int>& rows, std::vector<double>& vals) const;
  double col_dot(int j, const std::vector<double>& y) const;

  bool refactorize();
  void ftran(std::vector<double>& x);
  void btran(std::vector<double>& y);
  void compute_basic_values();
  double nonbasic_value(int j) const;

  // Phase result: optimal/unbounded/iteration trouble.
  LpStatus primal_loop(const std::vector<double>& cost, bool phase_one);
  LpStatus dual_loop();
  void set_phase2_costs(std::vector<double>& cost) const;
  double reduced_cost_dual_obj(const std::vector<double>& cost);

  int m_ = 0;  // kept rows
  int n_ = 0;  // structural columns
  std::vector<int> kept_rows_;   // kept row -> model row
  std::vector<double> rhs_;      // per kept row

  // Structural matrix, column-wise.
  std::vector<int> col_start_, col_rows_;
  std::vector<double> col_vals_;

  std::vector<double> lower_, upper_;  // all columns
  std::vector<double> art_sign_;       // artificial column signs

  std::vector<int> basic_;             // per row: basic column
  std::vector<VarStatus> status_;      // per column
  std::vector<double> beta_;           // basic values
  std::vector<int> basic_pos_;         // column -> row or -1

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  struct Eta {
    int row;
    std::vector<std::pair<int, double>> entries;  // sparse column, incl. pivot
    double pivot;
  };
  std::vector<Eta> etas_;
  bool factor_ok_ = false;

  double objective_ = 0.0;
  double dual_objective_ = 0.0;
  double objective_constant_ = 0.0;
  std::vector<double> model_cost_;
  long iterations_ = 0;

  double feas_tol_ = 1e-9;
  double opt_tol_ = 1e-9;
  double pivot_tol_ = 1e-8;
  long iteration_cap_ = -1;
};

}  // namespace eevc::solver
