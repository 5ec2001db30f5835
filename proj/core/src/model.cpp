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

#include "eevc/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eevc::milp {

int Model::add_variable(const std::string& var_name, VarKind kind, double lower,
                        double upper) {
  if (var_name.empty() || var_name.size() > 255) {
    throw std::invalid_argument("model error: variable name empty or too long");
  }
  if (name_to_id_.count(var_name)) {
    throw std::invalid_argument("model error: duplicate variable name " + var_name);
  }
  if (!(lower <= upper)) {
    throw std::invalid_argument("model error: crossed bounds on " + var_name);
  }
  if (kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0)) {
    throw std::invalid_argument("model error: binary bounds outside [0,1] on " +
                                var_name);
  }
  Variable var;
  var.id = static_cast<int>(variables_.size());
  var.name = var_name;
  var.kind = kind;
  var.lower = lower;
  var.upper = upper;
  name_to_id_.emplace(var_name, var.id);
  variables_.push_back(std::move(var));
  objective_coef_.push_back(0.0);
  return variables_.back().id;
}

void Model::add_constraint(const std::string& label, std::vector<LinearTerm> terms,
                           Sense sense, double rhs) {
  if (label.empty() || label.size() > 255) {
    throw std::invalid_argument("model error: constraint label empty or too long");
  }
  // Zero coefficients carry no information and would not survive a file
  // round trip.
  std::erase_if(terms, [](const LinearTerm& t) { return t.coef == 0.0; });
  std::sort(terms.begin(), terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  int prev = -1;
  for (const LinearTerm& term : terms) {
    if (term.var < 0 || term.var >= num_variables()) {
      throw std::invalid_argument("model error: unknown variable in " + label);
    }
    if (term.var == prev) {
      throw std::invalid_argument("model error: duplicate variable in " + label);
    }
    if (!std::isfinite(term.coef)) {
      throw std::invalid_argument("model error: non-finite coefficient in " + label);
    }
    prev = term.var;
  }
  LinearConstraint row;
  row.label = label;
  row.terms = std::move(terms);
  row.sense = sense;
  row.rhs = rhs;
  constraints_.push_back(std::move(row));
}

void Model::add_objective(int var, double coef) {
  if (var < 0 || var >= num_variables()) {
    throw std::invalid_argument("model error: objective on unknown variable");
  }
  objective_coef_[var] += coef;
}

int Model::find_variable(const std::string& var_name) const {
  auto it = name_to_id_.find(var_name);
  return it == name_to_id_.end() ? -1 : it->second;
}

std::vector<LinearTerm> Model::objective_terms() const {
  std::vector<LinearTerm> out;
  for (int id = 0; id < num_variables(); ++id) {
    if (objective_coef_[id] != 0.0) out.push_back({id, objective_coef_[id]});
  }
  return out;
}

double Model::objective_value(const std::vector<double>& assignment) const {
  if (assignment.size() != variables_.size()) {
    throw std::invalid_argument("objective_value: assignment size mismatch");
  }
  double value = objective_constant_;
  for (int id = 0; id < num_variables(); ++id) {
    value += objective_coef_[id] * assignment[id];
  }
  return value;
}

void Model::validate() const {
  for (const Variable& var : variables_) {
    if (!(var.lower <= var.upper)) {
      throw std::runtime_error("model validate: crossed bounds on " + var.name);
    }
    if (var.kind == VarKind::kBinary && (var.lower < 0.0 || var.upper > 1.0)) {
      throw std::runtime_error("model validate: binary bounds on " + var.name);
    }
  }
  for (const LinearConstraint& row : constraints_) {
    int prev = -1;
    for (const LinearTerm& term : row.terms) {
      if (term.var < 0 || term.var >= num_variables() || term.var <= prev) {
        throw std::runtime_error("model validate: bad terms in " + row.label);
      }
      if (!std::isfinite(term.coef)) {
        throw std::runtime_error("model validate: bad coefficient in " + row.label);
      }
      prev = term.var;
    }
  }
}

ParsedLabel parse_label(const std::string& label) {
  ParsedLabel out;
  if (label.size() < 2 || label[0] != 'C') {
    throw std::invalid_argument("parse_label: expected C<number>[...]: " + label);
  }
  std::size_t pos = 1;
  while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos])))
    ++pos;
  if (pos == 1) throw std::invalid_argument("parse_label: missing number: " + label);
  out.number = std::stoi(label.substr(1, pos - 1));
  if (pos == label.size()) return out;  // no index tuple
  if (label[pos] != '[' || label.back() != ']') {
    throw std::invalid_argument("parse_label: malformed index tuple: " + label);
  }
  std::string body = label.substr(pos + 1, label.size() - pos - 2);
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string item = body.substr(start, comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("parse_label: missing '=' in " + label);
    }
    out.indices.emplace_back(item.substr(0, eq), std::stoi(item.substr(eq + 1)));
    start = comma + 1;
  }
  return out;
}

std::string make_label(int number,
                       std::initializer_list<std::pair<const char*, int>> indices) {
  std::string label = "C" + std::to_string(number);
  if (indices.size() == 0) return label;
  label += '[';
  bool first = true;
  for (const auto& [key, value] : indices) {
    if (!first) label += ',';
    first = false;
    label += key;
    label += '=';
    label += std::to_string(value);
  }
  label += ']';
  return label;
}

namespace {

void require_binary(const Model& model, int var, const char* what) {
  if (model.variable(var).kind != VarKind::kBinary) {
    throw std::invalid_argument(std::string("model error: ") + what +
                                " requires a binary input");
  }
}

}  // namespace

int gadget_and(Model& model, int sig_p, int sig_q, const std::string& psi_name,
               const std::string& label_le_p, const std::string& label_le_q,
               const std::string& label_ge) {
  require_binary(model, sig_p, "gadget_and");
  require_binary(model, sig_q, "gadget_and");
  int psi = model.add_variable(psi_name, VarKind::kBinary, 0.0, 1.0);
  model.add_constraint(label_le_p, {{psi, 1.0}, {sig_p, -1.0}}, Sense::kLe, 0.0);
  model.add_constraint(label_le_q, {{psi, 1.0}, {sig_q, -1.0}}, Sense::kLe, 0.0);
  model.add_constraint(label_ge, {{psi, 1.0}, {sig_p, -1.0}, {sig_q, -1.0}},
                       Sense::kGe, -1.0);
  return psi;
}

int gadget_or(Model& model, int sig_b, int sig_e, const std::string& x_name,
              const std::string& label_le, const std::string& label_ge_b,
              const std::string& label_ge_e) {
  require_binary(model, sig_b, "gadget_or");
  require_binary(model, sig_e, "gadget_or");
  int sig_x = model.add_variable(x_name, VarKind::kBinary, 0.0, 1.0);
  model.add_constraint(label_le, {{sig_x, 1.0}, {sig_b, -1.0}, {sig_e, -1.0}},
                       Sense::kLe, 0.0);
  model.add_constraint(label_ge_b, {{sig_x, 1.0}, {sig_b, -1.0}}, Sense::kGe, 0.0);
  model.add_constraint(label_ge_e, {{sig_x, 1.0}, {sig_e, -1.0}}, Sense::kGe, 0.0);
  return sig_x;
}

void gadget_activity_link(Model& model, const std::vector<LinearTerm>& x_terms,
                          int sigma, double big_m, const std::string& label_ge,
                          const std::string& label_le) {
  require_binary(model, sigma, "gadget_activity_link");
  if (!(big_m > 0.0) || !std::isfinite(big_m)) {
    throw std::invalid_argument("model error: gadget_activity_link needs M > 0");
  }
  // M*x >= sigma
  std::vector<LinearTerm> ge_terms;
  for (const LinearTerm& t : x_terms) ge_terms.push_back({t.var, big_m * t.coef});
  ge_terms.push_back({sigma, -1.0});
  model.add_constraint(label_ge, std::move(ge_terms), Sense::kGe, 0.0);
  // x <= M*sigma
  std::vector<LinearTerm> le_terms = x_terms;
  le_terms.push_back({sigma, -big_m});
  model.add_constraint(label_le, std::move(le_terms), Sense::kLe, 0.0);
}

int gadget_product(Model& model, int sigma, int delta,
                   const std::string& theta_name, const std::string& label_le_sig,
                   const std::string& label_le_delta, const std::string& label_ge,
                   const std::string& label_nonneg) {
  require_binary(model, sigma, "gadget_product");
  const Variable& d = model.variable(delta);
  if (!(d.lower >= 0.0) || !(d.upper <= 1.0)) {
    throw std::invalid_argument("model error: gadget_product needs delta in [0,1]");
  }
  int theta = model.add_variable(theta_name, VarKind::kContinuous, 0.0, 1.0);
  model.add_constraint(label_le_sig, {{theta, 1.0}, {sigma, -1.0}}, Sense::kLe, 0.0);
  model.add_constraint(label_le_delta, {{theta, 1.0}, {delta, -1.0}}, Sense::kLe, 0.0);
  // theta >= delta - (1 - sigma); the printed delta*(1-sigma) form fails its
  // own truth table at sigma = 1.
  model.add_constraint(label_ge, {{theta, 1.0}, {delta, -1.0}, {sigma, -1.0}},
                       Sense::kGe, -1.0);
  model.add_constraint(label_nonneg, {{theta, 1.0}}, Sense::kGe, 0.0);
  return theta;
}

void gadget_gate(Model& model, int routed, int source, int sigma, double mu,
                 const std::string& label_le_gate, const std::string& label_le_src,
                 const std::string& label_ge, const std::string& label_nonneg) {
  require_binary(model, sigma, "gadget_gate");
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("model error: gadget_gate needs mu > 0");
  }
  model.add_constraint(label_le_gate, {{routed, 1.0}, {sigma, -mu}}, Sense::kLe, 0.0);
  model.add_constraint(label_le_src, {{routed, 1.0}, {source, -1.0}}, Sense::kLe, 0.0);
  model.add_constraint(label_ge, {{routed, 1.0}, {source, -1.0}, {sigma, -mu}},
                       Sense::kGe, -mu);
  model.add_constraint(label_nonneg, {{routed, 1.0}}, Sense::kGe, 0.0);
  return;
}

std::pair<int, int> gadget_int_frac_split(Model& model, int x,
                                          const std::string& int_name,
                                          const std::string& frac_name,
                                          const std::string& label_eq) {
  const Variable& xvar = model.variable(x);
  if (!std::isfinite(xvar.upper)) {
    throw std::invalid_argument("model error: gadget_int_frac_split needs a bounded input");
  }
  int xi = model.add_variable(int_name, VarKind::kInteger, 0.0,
                              std::ceil(xvar.upper));
  int xf = model.add_variable(frac_name, VarKind::kContinuous, 0.0,
                              1.0 - kFracStrictness);
  model.add_constraint(label_eq, {{xi, 1.0}, {xf, 1.0}, {x, -1.0}}, Sense::kEq, 0.0);
  return {xi, xf};
}

}  // namespace eevc::milp
