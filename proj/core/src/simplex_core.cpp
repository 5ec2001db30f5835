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

#include "simplex_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eevc::solver {

namespace {
constexpr double kInf = milp::kInf;
}

SimplexCore::SimplexCore(const milp::Model& model, const std::vector<char>& keep_row) {
  n_ = model.num_variables();
  for (std::size_t c = 0; c < keep_row.size(); ++c) {
    if (keep_row[c]) kept_rows_.push_back(static_cast<int>(c));
  }
  m_ = static_cast<int>(kept_rows_.size());
  rhs_.resize(m_);
  std::vector<int> local_of_row(model.num_constraints(), -1);
  for (int i = 0; i < m_; ++i) {
    local_of_row[kept_rows_[i]] = i;
    rhs_[i] = model.constraints()[kept_rows_[i]].rhs;
  }

  // Column-wise structural matrix over the kept rows.
  std::vector<int> counts(n_, 0);
  for (int row : kept_rows_) {
    for (const milp::LinearTerm& t : model.constraints()[row].terms) ++counts[t.var];
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
  col_rows_.assign(col_start_[n_], 0);
  col_vals_.assign(col_start_[n_], 0.0);
  std::vector<int> fill = col_start_;
  for (int i = 0; i < m_; ++i) {
    for (const milp::LinearTerm& t : model.constraints()[kept_rows_[i]].terms) {
      col_rows_[fill[t.var]] = i;
      col_vals_[fill[t.var]] = t.coef;
      ++fill[t.var];
    }
  }

  lower_.assign(total_cols(), 0.0);
  upper_.assign(total_cols(), 0.0);
  for (const milp::Variable& var : model.variables()) {
    lower_[var.id] = var.lower;
    upper_[var.id] = var.upper;
  }
  for (int i = 0; i < m_; ++i) {
    switch (model.constraints()[kept_rows_[i]].sense) {
      case milp::Sense::kLe:
        lower_[n_ + i] = 0.0;
        upper_[n_ + i] = kInf;
        break;
      case milp::Sense::kGe:
        lower_[n_ + i] = -kInf;
        upper_[n_ + i] = 0.0;
        break;
      case milp::Sense::kEq:
        lower_[n_ + i] = 0.0;
        upper_[n_ + i] = 0.0;
        break;
    }
    lower_[n_ + m_ + i] = 0.0;
    upper_[n_ + m_ + i] = 0.0;  // artificials closed until phase 1 opens them
  }
  art_sign_.assign(m_, 1.0);

  model_cost_.assign(total_cols(), 0.0);
  for (int j = 0; j < n_; ++j) model_cost_[j] = model.objective_coef(j);
  objective_constant_ = model.objective_constant();

  status_.assign(total_cols(), VarStatus::kAtLower);
  basic_pos_.assign(total_cols(), -1);
}

void SimplexCore::set_structural_bounds(const std::vector<double>& lower,
                                        const std::vector<double>& upper) {
  if (static_cast<int>(lower.size()) != n_ || static_cast<int>(upper.size()) != n_) {
    throw std::invalid_argument("set_structural_bounds: size mismatch");
  }
  for (int j = 0; j < n_; ++j) {
    lower_[j] = lower[j];
    upper_[j] = upper[j];
  }
}

void SimplexCore::column(int j, std::vector<int>& rows,
                         std::vector<double>& vals) const {
  rows.clear();
  vals.clear();
  if (j < n_) {
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      rows.push_back(col_rows_[k]);
      vals.push_back(col_vals_[k]);
    }
  } else if (j < n_ + m_) {
    rows.push_back(j - n_);
    vals.push_back(1.0);
  } else {
    rows.push_back(j - n_ - m_);
    vals.push_back(art_sign_[j - n_ - m_]);
  }
}

double SimplexCore::col_dot(int j, const std::vector<double>& y) const {
  if (j < n_) {
    double sum = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      sum += col_vals_[k] * y[col_rows_[k]];
    }
    return sum;
  }
  if (j < n_ + m_) return y[j - n_];
  return art_sign_[j - n_ - m_] * y[j - n_ - m_];
}

bool SimplexCore::refactorize() {
  if (m_ == 0) {
    etas_.clear();
    factor_ok_ = true;
    return true;
  }
  Eigen::SparseMatrix<double> basis(m_, m_);
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<int> rows;
  std::vector<double> vals;
  for (int i = 0; i < m_; ++i) {
    column(basic_[i], rows, vals);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      triplets.emplace_back(rows[k], i, vals[k]);
    }
  }
  basis.setFromTriplets(triplets.begin(), triplets.end());
  lu_.analyzePattern(basis);
  lu_.factorize(basis);
  etas_.clear();
  factor_ok_ = lu_.info() == Eigen::Success;
  return factor_ok_;
}

void SimplexCore::ftran(std::vector<double>& x) {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> map(x.data(), m_);
  Eigen::VectorXd solved = lu_.solve(map);
  for (int i = 0; i < m_; ++i) x[i] = solved[i];
  for (const Eta& eta : etas_) {
    const double xr = x[eta.row] / eta.pivot;
    for (const auto& [row, value] : eta.entries) {
      if (row != eta.row) x[row] -= value * xr;
    }
    x[eta.row] = xr;
  }
}

void SimplexCore::btran(std::vector<double>& y) {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double dot = 0.0;
    for (const auto& [row, value] : it->entries) {
      if (row != it->row) dot += value * y[row];
    }
    y[it->row] = (y[it->row] - dot) / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> map(y.data(), m_);
  Eigen::VectorXd solved = lu_.transpose().solve(map);
  for (int i = 0; i < m_; ++i) y[i] = solved[i];
}

double SimplexCore::nonbasic_value(int j) const {
  switch (status_[j]) {
    case VarStatus::kAtLower: return lower_[j];
    case VarStatus::kAtUpper: return upper_[j];
    case VarStatus::kFreeAtZero: return 0.0;
    case VarStatus::kBasic: break;
  }
  return beta_[basic_pos_[j]];
}

void SimplexCore::compute_basic_values() {
  std::vector<double> rhs_eff = rhs_;
  std::vector<int> rows;
  std::vector<double> vals;
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    const double value = nonbasic_value(j);
    if (value == 0.0) continue;
    column(j, rows, vals);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      rhs_eff[rows[k]] -= vals[k] * value;
    }
  }
  ftran(rhs_eff);
  beta_ = std::move(rhs_eff);
}

void SimplexCore::load_basis(const Basis& basis) {
  basic_ = basis.basic;
  status_ = basis.status;
  std::fill(basic_pos_.begin(), basic_pos_.end(), -1);
  for (int i = 0; i < m_; ++i) basic_pos_[basic_[i]] = i;
  // Normalize nonbasic statuses against the current bounds.
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    if (lower_[j] == upper_[j]) {
      status_[j] = VarStatus::kAtLower;
    } else if (status_[j] == VarStatus::kAtLower && !std::isfinite(lower_[j])) {
      status_[j] = std::isfinite(upper_[j]) ? VarStatus::kAtUpper
                                            : VarStatus::kFreeAtZero;
    } else if (status_[j] == VarStatus::kAtUpper && !std::isfinite(upper_[j])) {
      status_[j] = std::isfinite(lower_[j]) ? VarStatus::kAtLower
                                            : VarStatus::kFreeAtZero;
    }
  }
  if (!refactorize()) {
    throw std::runtime_error("simplex: singular basis on load");
  }
  compute_basic_values();
}

void SimplexCore::set_phase2_costs(std::vector<double>& cost) const {
  cost = model_cost_;
}

double SimplexCore::reduced_cost_dual_obj(const std::vector<double>& cost) {
  std::vector<double> y(m_, 0.0);
  for (int i = 0; i < m_; ++i) y[i] = cost[basic_[i]];
  btran(y);
  double dual = objective_constant_;
  for (int i = 0; i < m_; ++i) dual += y[i] * rhs_[i];
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    const double value = nonbasic_value(j);
    if (value == 0.0) continue;
    dual += (cost[j] - col_dot(j, y)) * value;
  }
  return dual;
}

LpStatus SimplexCore::primal_solve() {
  iterations_ = 0;
  for (int j = 0; j < total_cols(); ++j) {
    if (lower_[j] > upper_[j]) return LpStatus::kInfeasible;
  }

  // Nonbasic start at finite bounds.
  for (int j = 0; j < n_ + m_; ++j) {
    if (std::isfinite(lower_[j])) status_[j] = VarStatus::kAtLower;
    else if (std::isfinite(upper_[j])) status_[j] = VarStatus::kAtUpper;
    else status_[j] = VarStatus::kFreeAtZero;
  }
  std::fill(basic_pos_.begin(), basic_pos_.end(), -1);

  // Row residuals under the nonbasic point decide between slack basis and
  // artificial columns.
  std::vector<double> residual = rhs_;
  for (int j = 0; j < n_; ++j) {
    double value = 0.0;
    if (status_[j] == VarStatus::kAtLower) value = lower_[j];
    if (status_[j] == VarStatus::kAtUpper) value = upper_[j];
    if (value == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      residual[col_rows_[k]] -= col_vals_[k] * value;
    }
  }
  basic_.assign(m_, -1);
  beta_.assign(m_, 0.0);
  bool need_phase1 = false;
  for (int i = 0; i < m_; ++i) {
    const int slack = n_ + i;
    const int art = n_ + m_ + i;
    lower_[art] = 0.0;
    upper_[art] = 0.0;
    status_[art] = VarStatus::kAtLower;
    if (residual[i] >= lower_[slack] - feas_tol_ &&
        residual[i] <= upper_[slack] + feas_tol_) {
      basic_[i] = slack;
      beta_[i] = residual[i];
      status_[slack] = VarStatus::kBasic;
      basic_pos_[slack] = i;
    } else {
      art_sign_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
      upper_[art] = kInf;
      basic_[i] = art;
      beta_[i] = std::fabs(residual[i]);
      status_[art] = VarStatus::kBasic;
      basic_pos_[art] = i;
      // The slack stays nonbasic at the bound nearest the residual.
      status_[slack] = std::isfinite(lower_[slack]) ? VarStatus::kAtLower
                                                    : VarStatus::kAtUpper;
      need_phase1 = true;
    }
  }
  if (!refactorize()) return LpStatus::kFailure;

  if (need_phase1) {
    std::vector<double> cost(total_cols(), 0.0);
    for (int i = 0; i < m_; ++i) cost[n_ + m_ + i] = 1.0;
    LpStatus status = primal_loop(cost, true);
    if (status == LpStatus::kFailure || status == LpStatus::kIterationLimit) {
      return status;
    }
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (is_artificial(basic_[i])) infeas += std::max(0.0, beta_[i]);
    }
    if (infeas > 1e-7) return LpStatus::kInfeasible;
    // Close the artificials; basic ones stay pinned at zero.
    for (int i = 0; i < m_; ++i) upper_[n_ + m_ + i] = 0.0;
  }

  std::vector<double> cost;
  set_phase2_costs(cost);
  LpStatus status = primal_loop(cost, false);
  if (status == LpStatus::kOptimal) {
    objective_ = objective_constant_;
    for (int j = 0; j < n_; ++j) {
      objective_ += model_cost_[j] *
                    (status_[j] == VarStatus::kBasic ? beta_[basic_pos_[j]]
                                                     : nonbasic_value(j));
    }
    dual_objective_ = reduced_cost_dual_obj(cost);
  }
  return status;
}

LpStatus SimplexCore::primal_loop(const std::vector<double>& cost, bool phase_one) {
  const long default_cap =
      iteration_cap_ > 0 ? iteration_cap_ : 50L * (m_ + n_) + 10000;
  long degenerate_streak = 0;
  bool bland = false;
  const long bland_threshold = 10L * (m_ + n_);

  std::vector<double> y(m_), w(m_);
  std::vector<int> col_rows;
  std::vector<double> col_vals;

  for (long iter = 0;; ++iter, ++iterations_) {
    if (iter > default_cap) return LpStatus::kIterationLimit;
    if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
      if (!refactorize()) return LpStatus::kFailure;
      compute_basic_values();
    }

    // Duals and entering candidate.
    for (int i = 0; i < m_; ++i) y[i] = cost[basic_[i]];
    btran(y);
    int entering = -1;
    double best_score = 0.0;
    for (int j = 0; j < total_cols(); ++j) {
      const VarStatus st = status_[j];
      if (st == VarStatus::kBasic) continue;
      if (lower_[j] == upper_[j]) continue;  // fixed
      const double d = cost[j] - col_dot(j, y);
      double score = 0.0;
      if (st == VarStatus::kAtLower && d < -opt_tol_) score = -d;
      else if (st == VarStatus::kAtUpper && d > opt_tol_) score = d;
      else if (st == VarStatus::kFreeAtZero && std::fabs(d) > opt_tol_) score = std::fabs(d);
      if (score > 0.0) {
        if (bland) {
          entering = j;
          break;
        }
        if (score > best_score + 1e-12) {
          best_score = score;
          entering = j;
        }
      }
    }
    if (entering < 0) return LpStatus::kOptimal;

    const double d_enter = cost[entering] - col_dot(entering, y);
    double dir = 1.0;
    if (status_[entering] == VarStatus::kAtUpper) dir = -1.0;
    if (status_[entering] == VarStatus::kFreeAtZero) dir = d_enter < 0.0 ? 1.0 : -1.0;

    column(entering, col_rows, col_vals);
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t k = 0; k < col_rows.size(); ++k) w[col_rows[k]] = col_vals[k];
    ftran(w);

    // Ratio test with bound flips.
    double theta = kInf;
    if (std::isfinite(lower_[entering]) && std::isfinite(upper_[entering])) {
      theta = upper_[entering] - lower_[entering];
    }
    int leave_row = -1;
    double leave_pivot = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double ww = dir * w[i];
      const int bi = basic_[i];
      double limit = kInf;
      if (ww > pivot_tol_) {
        if (std::isfinite(lower_[bi])) limit = (beta_[i] - lower_[bi]) / ww;
      } else if (ww < -pivot_tol_) {
        if (std::isfinite(upper_[bi])) limit = (beta_[i] - upper_[bi]) / ww;
      } else {
        continue;
      }
      if (limit < 0.0) limit = 0.0;
      const bool better =
          limit < theta - 1e-10 ||
          (limit < theta + 1e-10 && leave_row >= 0 &&
           (bland ? bi < basic_[leave_row]
                  : std::fabs(w[i]) > std::fabs(leave_pivot) + 1e-12));
      if (leave_row < 0 ? limit < theta - 1e-10 : better) {
        theta = limit;
        leave_row = i;
        leave_pivot = w[i];
      }
    }

    if (!std::isfinite(theta)) {
      return phase_one ? LpStatus::kFailure : LpStatus::kUnbounded;
    }

    if (theta > 1e-9) {
      degenerate_streak = 0;
      bland = false;
    } else if (++degenerate_streak > bland_threshold) {
      bland = true;
    }

    if (leave_row < 0) {
      // Bound flip: entering runs to its other bound.
      for (int i = 0; i < m_; ++i) beta_[i] -= theta * dir * w[i];
      status_[entering] = status_[entering] == VarStatus::kAtLower
                              ? VarStatus::kAtUpper
                              : VarStatus::kAtLower;
      continue;
    }

    const double enter_value = nonbasic_value(entering) + dir * theta;
    const int leaving = basic_[leave_row];
    for (int i = 0; i < m_; ++i) {
      if (i != leave_row) beta_[i] -= theta * dir * w[i];
    }
    // Leaving variable exits at the bound it ran into.
    status_[leaving] =
        dir * w[leave_row] > 0.0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
    if (!std::isfinite(lower_[leaving]) && status_[leaving] == VarStatus::kAtLower) {
      status_[leaving] = VarStatus::kFreeAtZero;  // cannot happen with finite hit
    }
    basic_pos_[leaving] = -1;
    basic_[leave_row] = entering;
    basic_pos_[entering] = leave_row;
    status_[entering] = VarStatus::kBasic;
    beta_[leave_row] = enter_value;

    Eta eta;
    eta.row = leave_row;
    eta.pivot = w[leave_row];
    for (int i = 0; i < m_; ++i) {
      if (std::fabs(w[i]) > 1e-13) eta.entries.emplace_back(i, w[i]);
    }
    etas_.push_back(std::move(eta));
  }
}

LpStatus SimplexCore::dual_resolve() {
  if (basic_.empty()) return primal_solve();
  iterations_ = 0;
  if (!refactorize()) return primal_solve();
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    if (lower_[j] == upper_[j]) {
      status_[j] = VarStatus::kAtLower;
    } else if (status_[j] == VarStatus::kAtLower && !std::isfinite(lower_[j])) {
      status_[j] = std::isfinite(upper_[j]) ? VarStatus::kAtUpper
                                            : VarStatus::kFreeAtZero;
    } else if (status_[j] == VarStatus::kAtUpper && !std::isfinite(upper_[j])) {
      status_[j] = std::isfinite(lower_[j]) ? VarStatus::kAtLower
                                            : VarStatus::kFreeAtZero;
    }
  }
  compute_basic_values();
  LpStatus status = dual_loop();
  if (status == LpStatus::kIterationLimit || status == LpStatus::kFailure) {
    return primal_solve();
  }
  if (status == LpStatus::kOptimal) {
    objective_ = objective_constant_;
    for (int j = 0; j < n_; ++j) {
      objective_ += model_cost_[j] *
                    (status_[j] == VarStatus::kBasic ? beta_[basic_pos_[j]]
                                                     : nonbasic_value(j));
    }
    std::vector<double> cost;
    set_phase2_costs(cost);
    dual_objective_ = reduced_cost_dual_obj(cost);
  }
  return status;
}

LpStatus SimplexCore::dual_loop() {
  const long cap = 20L * m_ + 2000;
  std::vector<double> y(m_), rho(m_), w(m_);
  std::vector<int> col_rows;
  std::vector<double> col_vals;
  long stall = 0;

  for (long iter = 0;; ++iter, ++iterations_) {
    if (iter > cap) return LpStatus::kIterationLimit;
    if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
      if (!refactorize()) return LpStatus::kFailure;
      compute_basic_values();
    }

    // Most-violated basic variable leaves.
    int leave_row = -1;
    double worst = feas_tol_ * 10.0;
    double target = 0.0;
    double s = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int bi = basic_[i];
      const double lo = lower_[bi], hi = upper_[bi];
      if (beta_[i] < lo - worst) {
        worst = lo - beta_[i];
        leave_row = i;
        target = lo;
        s = -1.0;
      } else if (beta_[i] > hi + worst) {
        worst = beta_[i] - hi;
        leave_row = i;
        target = hi;
        s = 1.0;
      }
    }
    if (leave_row < 0) return LpStatus::kOptimal;

    std::fill(rho.begin(), rho.end(), 0.0);
    rho[leave_row] = 1.0;
    btran(rho);
    for (int i = 0; i < m_; ++i) y[i] = model_cost_[basic_[i]];
    btran(y);

    int entering = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int j = 0; j < total_cols(); ++j) {
      const VarStatus st = status_[j];
      if (st == VarStatus::kBasic) continue;
      if (lower_[j] == upper_[j]) continue;
      const double alpha = col_dot(j, rho);
      bool ok = false;
      if (st == VarStatus::kAtLower || st == VarStatus::kFreeAtZero) {
        ok = s * alpha > pivot_tol_;
      } else if (st == VarStatus::kAtUpper) {
        ok = s * alpha < -pivot_tol_;
      }
      if (!ok) continue;
      const double d = model_cost_[j] - col_dot(j, y);
      double ratio = d / (s * alpha);
      if (ratio < 0.0) ratio = 0.0;
      const bool better =
          ratio < best_ratio - 1e-10 ||
          (ratio < best_ratio + 1e-10 && entering >= 0 &&
           (stall > 100 ? j < entering
                        : std::fabs(alpha) > std::fabs(best_alpha) + 1e-12));
      if (entering < 0 ? ratio < best_ratio : better) {
        best_ratio = ratio;
        best_alpha = alpha;
        entering = j;
      }
    }
    if (entering < 0) return LpStatus::kInfeasible;  // dual ray

    column(entering, col_rows, col_vals);
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t k = 0; k < col_rows.size(); ++k) w[col_rows[k]] = col_vals[k];
    ftran(w);
    const double pivot = w[leave_row];
    if (std::fabs(pivot) < pivot_tol_) {
      if (!refactorize()) return LpStatus::kFailure;
      compute_basic_values();
      if (++stall > 200) return LpStatus::kIterationLimit;
      continue;
    }

    const double step = (beta_[leave_row] - target) / pivot;
    if (std::fabs(step) < 1e-11) ++stall; else stall = 0;

    const int leaving = basic_[leave_row];
    const double enter_value = nonbasic_value(entering) + step;
    for (int i = 0; i < m_; ++i) {
      if (i != leave_row) beta_[i] -= step * w[i];
    }
    status_[leaving] = s > 0.0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
    basic_pos_[leaving] = -1;
    basic_[leave_row] = entering;
    basic_pos_[entering] = leave_row;
    status_[entering] = VarStatus::kBasic;
    beta_[leave_row] = enter_value;

    Eta eta;
    eta.row = leave_row;
    eta.pivot = pivot;
    for (int i = 0; i < m_; ++i) {
      if (std::fabs(w[i]) > 1e-13) eta.entries.emplace_back(i, w[i]);
    }
    etas_.push_back(std::move(eta));
  }
}

std::vector<double> SimplexCore::structural_values() const {
  std::vector<double> out(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    out[j] = status_[j] == VarStatus::kBasic ? beta_[basic_pos_[j]]
                                             : nonbasic_value(j);
  }
  return out;
}

}  // namespace eevc::solver
