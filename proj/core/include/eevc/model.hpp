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

#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eevc::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary, kInteger };
enum class Sense { kLe, kGe, kEq };

struct Variable {
  int id = -1;
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
};

struct LinearTerm {
  int var = -1;
  double coef = 0.0;
};

struct LinearConstraint {
  std::string label;
  std::vector<LinearTerm> terms;  // unique variable ids, ascending
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

/// Solver-agnostic linear model: variables with bounds, sparse rows, and a
/// minimization objective. Immutable once building is done; building is
/// single-threaded.
class Model {
 public:
  std::string name = "model";

  int add_variable(const std::string& var_name, VarKind kind, double lower,
                   double upper);
  void add_constraint(const std::string& label, std::vector<LinearTerm> terms,
                      Sense sense, double rhs);
  /// Accumulates an objective coefficient onto a variable.
  void add_objective(int var, double coef);
  void add_objective_constant(double value) { objective_constant_ += value; }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  Variable& variable(int id) { return variables_[id]; }
  const Variable& variable(int id) const { return variables_[id]; }

  /// Id for a name; -1 when absent.
  int find_variable(const std::string& var_name) const;
  double objective_coef(int var) const { return objective_coef_[var]; }
  const std::vector<double>& objective() const { return objective_coef_; }
  double objective_constant() const { return objective_constant_; }
  /// Objective as sparse terms in ascending variable id order.
  std::vector<LinearTerm> objective_terms() const;
  double objective_value(const std::vector<double>& assignment) const;

  /// Structural checks (bounds ordered, rows reference declared variables,
  /// binaries within [0,1]); throws std::runtime_error on failure.
  void validate() const;

 private:
  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<double> objective_coef_;
  double objective_constant_ = 0.0;
  std::unordered_map<std::string, int> name_to_id_;
};

/// Constraint label "C38[u=3,r=7]" decomposed into the printed constraint
/// number and its index tuple.
struct ParsedLabel {
  int number = 0;
  std::vector<std::pair<std::string, int>> indices;
};
ParsedLabel parse_label(const std::string& label);
std::string make_label(int number,
                       std::initializer_list<std::pair<const char*, int>> indices);

// Linearization gadgets. Each appends the listed constraints; the AND/OR/
// product/split forms also create their output variable. All throw
// std::invalid_argument on misuse (non-binary inputs, missing bounds,
// non-positive big constants).

/// psi = sig_p AND sig_q via psi <= sig_p, psi <= sig_q,
/// psi >= sig_p + sig_q - 1.
int gadget_and(Model& model, int sig_p, int sig_q, const std::string& psi_name,
               const std::string& label_le_p, const std::string& label_le_q,
               const std::string& label_ge);

/// sig_x = sig_b OR sig_e via sig_x <= sig_b + sig_e, sig_x >= sig_b,
/// sig_x >= sig_e.
int gadget_or(Model& model, int sig_b, int sig_e, const std::string& x_name,
              const std::string& label_le, const std::string& label_ge_b,
              const std::string& label_ge_e);

/// Activity link: M*x >= sigma and x <= M*sigma; with sigma cost-penalized,
/// sigma tracks x > 0.
void gadget_activity_link(Model& model, const std::vector<LinearTerm>& x_terms,
                          int sigma, double big_m, const std::string& label_ge,
                          const std::string& label_le);

/// theta = sigma * delta for binary sigma and delta in [0,1]:
/// theta <= sigma, theta <= delta, theta >= delta - (1 - sigma), theta >= 0.
int gadget_product(Model& model, int sigma, int delta,
                   const std::string& theta_name, const std::string& label_le_sig,
                   const std::string& label_le_delta, const std::string& label_ge,
                   const std::string& label_nonneg);

/// Gated copy: routed = source when sigma = 1, else 0:
/// routed <= mu*sigma, routed <= source, routed >= source - mu*(1 - sigma),
/// routed >= 0.
void gadget_gate(Model& model, int routed, int source, int sigma, double mu,
                 const std::string& label_le_gate, const std::string& label_le_src,
                 const std::string& label_ge, const std::string& label_nonneg);

/// Integer/fractional split x = x_int + x_frac with x_frac in [0, 1-1e-6];
/// under minimization pressure on x_int this is the floor split. Returns
/// (x_int id, x_frac id).
std::pair<int, int> gadget_int_frac_split(Model& model, int x,
                                          const std::string& int_name,
                                          const std::string& frac_name,
                                          const std::string& label_eq);

/// Strictness gap used to approximate x_frac < 1.
constexpr double kFracStrictness = 1e-6;

}  // namespace eevc::milp
