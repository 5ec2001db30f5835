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

#include "eevc/mps_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace eevc::milp {
namespace {

std::string num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

char sense_char(Sense sense) {
  switch (sense) {
    case Sense::kLe: return 'L';
    case Sense::kGe: return 'G';
    case Sense::kEq: return 'E';
  }
  return '?';
}

// LP-format identifiers: keep alnum, '_', '.'; everything else becomes '_'.
std::string lp_name(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out.insert(out.begin(), 'x');
  }
  return out;
}

}  // namespace

std::string emit_mps(const Model& model) {
  model.validate();
  std::ostringstream out;
  out << "NAME " << model.name << "\n";
  out << "ROWS\n";
  out << " N OBJ\n";
  for (const LinearConstraint& row : model.constraints()) {
    out << ' ' << sense_char(row.sense) << ' ' << row.label << "\n";
  }

  // Column-major entries: objective first, then rows in id order.
  std::vector<std::vector<std::pair<int, double>>> by_col(model.num_variables());
  for (int c = 0; c < model.num_constraints(); ++c) {
    for (const LinearTerm& term : model.constraints()[c].terms) {
      by_col[term.var].emplace_back(c, term.coef);
    }
  }

  out << "COLUMNS\n";
  bool in_integer = false;
  int marker = 0;
  for (const Variable& var : model.variables()) {
    const bool integral = var.kind != VarKind::kContinuous;
    if (integral && !in_integer) {
      out << " MARKER M" << marker++ << " 'MARKER' 'INTORG'\n";
      in_integer = true;
    } else if (!integral && in_integer) {
      out << " MARKER M" << marker++ << " 'MARKER' 'INTEND'\n";
      in_integer = false;
    }
    bool any = false;
    if (model.objective_coef(var.id) != 0.0) {
      out << ' ' << var.name << " OBJ " << num(model.objective_coef(var.id)) << "\n";
      any = true;
    }
    for (const auto& [row, coef] : by_col[var.id]) {
      out << ' ' << var.name << ' ' << model.constraints()[row].label << ' '
          << num(coef) << "\n";
      any = true;
    }
    if (!any) {
      // Keep empty columns alive for strict readers.
      out << ' ' << var.name << " OBJ 0\n";
    }
  }
  if (in_integer) out << " MARKER M" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  if (model.objective_constant() != 0.0) {
    out << " RHS OBJ " << num(-model.objective_constant()) << "\n";
  }
  for (const LinearConstraint& row : model.constraints()) {
    if (row.rhs != 0.0) {
      out << " RHS " << row.label << ' ' << num(row.rhs) << "\n";
    }
  }

  out << "BOUNDS\n";
  for (const Variable& var : model.variables()) {
    if (var.kind == VarKind::kBinary && var.lower == 0.0 && var.upper == 1.0) {
      out << " BV BND " << var.name << "\n";
      continue;
    }
    if (var.kind == VarKind::kInteger) {
      out << " LI BND " << var.name << ' ' << num(var.lower) << "\n";
      if (std::isfinite(var.upper)) {
        out << " UI BND " << var.name << ' ' << num(var.upper) << "\n";
      }
      continue;
    }
    if (var.lower == var.upper) {
      out << " FX BND " << var.name << ' ' << num(var.lower) << "\n";
      continue;
    }
    if (var.lower == -kInf && var.upper == kInf) {
      out << " FR BND " << var.name << "\n";
      continue;
    }
    if (var.lower == -kInf) {
      out << " MI BND " << var.name << "\n";
    } else if (var.lower != 0.0) {
      out << " LO BND " << var.name << ' ' << num(var.lower) << "\n";
    }
    if (std::isfinite(var.upper)) {
      out << " UP BND " << var.name << ' ' << num(var.upper) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

std::string emit_lp(const Model& model) {
  model.validate();
  std::ostringstream out;
  out << "\\ " << model.name << "\n";
  out << "Minimize\n obj:";
  int written = 0;
  for (const LinearTerm& term : model.objective_terms()) {
    const double coef = term.coef;
    out << (coef < 0.0 ? " - " : " + ") << num(std::fabs(coef)) << ' '
        << lp_name(model.variable(term.var).name);
    if (++written % 8 == 0) out << "\n   ";
  }
  if (model.objective_constant() != 0.0) {
    const double c = model.objective_constant();
    out << (c < 0.0 ? " - " : " + ") << num(std::fabs(c));
  }
  if (written == 0 && model.objective_constant() == 0.0) out << " 0 "
      << lp_name(model.variables().empty() ? std::string("x")
                                           : model.variables()[0].name);
  out << "\nSubject To\n";
  for (const LinearConstraint& row : model.constraints()) {
    out << ' ' << lp_name(row.label) << ':';
    for (const LinearTerm& term : row.terms) {
      out << (term.coef < 0.0 ? " - " : " + ") << num(std::fabs(term.coef)) << ' '
          << lp_name(model.variable(term.var).name);
    }
    switch (row.sense) {
      case Sense::kLe: out << " <= "; break;
      case Sense::kGe: out << " >= "; break;
      case Sense::kEq: out << " = "; break;
    }
    out << num(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const Variable& var : model.variables()) {
    const std::string name = lp_name(var.name);
    if (var.lower == -kInf && var.upper == kInf) {
      out << ' ' << name << " free\n";
    } else if (var.lower == var.upper) {
      out << ' ' << name << " = " << num(var.lower) << "\n";
    } else {
      if (var.lower == -kInf) {
        out << " -inf <= " << name;
      } else {
        out << ' ' << num(var.lower) << " <= " << name;
      }
      if (std::isfinite(var.upper)) out << " <= " << num(var.upper);
      out << "\n";
    }
  }
  std::vector<const Variable*> generals, binaries;
  for (const Variable& var : model.variables()) {
    if (var.kind == VarKind::kInteger) generals.push_back(&var);
    if (var.kind == VarKind::kBinary) binaries.push_back(&var);
  }
  if (!generals.empty()) {
    out << "Generals\n";
    for (const Variable* var : generals) out << ' ' << lp_name(var->name) << "\n";
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (const Variable* var : binaries) out << ' ' << lp_name(var->name) << "\n";
  }
  out << "End\n";
  return out.str();
}

namespace {

struct Tokenizer {
  std::istringstream stream;
  std::string line;
  std::vector<std::string> fields;

  explicit Tokenizer(const std::string& text) : stream(text) {}

  // Next non-empty, non-comment line split on whitespace.
  bool next() {
    while (std::getline(stream, line)) {
      if (!line.empty() && (line[0] == '*' || line[0] == '$')) continue;
      fields.clear();
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) fields.push_back(tok);
      if (!fields.empty()) return true;
    }
    return false;
  }

  bool is_section() const {
    return !line.empty() && !std::isspace(static_cast<unsigned char>(line[0]));
  }
};

double parse_num(const std::string& tok) {
  std::size_t used = 0;
  double value = std::stod(tok, &used);
  if (used != tok.size()) {
    throw std::runtime_error("parse_mps: bad number '" + tok + "'");
  }
  return value;
}

}  // namespace

Model parse_mps(const std::string& text) {
  Model model;
  Tokenizer tk(text);
  if (!tk.next()) throw std::runtime_error("parse_mps: empty input");

  std::string obj_row;
  std::unordered_map<std::string, int> row_ids;  // label -> constraint id
  std::vector<Sense> row_sense;
  std::vector<std::vector<LinearTerm>> row_terms;
  std::vector<double> row_rhs;
  std::vector<std::string> row_labels;
  bool in_integer = false;
  bool have_columns = false;

  std::string section;
  auto begin_section = [&](const std::string& s) { section = s; };

  if (tk.fields[0] == "NAME") {
    model.name = tk.fields.size() > 1 ? tk.fields[1] : "model";
    if (!tk.next()) throw std::runtime_error("parse_mps: truncated after NAME");
  }

  // Integer bounds seen before the variable exists cannot happen: COLUMNS
  // precedes BOUNDS in well-formed files and we create variables on first
  // COLUMNS mention.
  auto ensure_var = [&](const std::string& name) {
    int id = model.find_variable(name);
    if (id >= 0) return id;
    return model.add_variable(
        name, in_integer ? VarKind::kInteger : VarKind::kContinuous, 0.0, kInf);
  };

  do {
    if (tk.is_section()) {
      begin_section(tk.fields[0]);
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "OBJSENSE") {
      if (tk.fields[0] == "MAX" || tk.fields[0] == "MAXIMIZE") {
        throw std::runtime_error("parse_mps: maximization not supported");
      }
    } else if (section == "ROWS") {
      if (tk.fields.size() != 2) throw std::runtime_error("parse_mps: bad ROWS line");
      const std::string& kind = tk.fields[0];
      const std::string& label = tk.fields[1];
      if (kind == "N") {
        if (obj_row.empty()) obj_row = label;
        continue;
      }
      Sense sense;
      if (kind == "L") sense = Sense::kLe;
      else if (kind == "G") sense = Sense::kGe;
      else if (kind == "E") sense = Sense::kEq;
      else throw std::runtime_error("parse_mps: unknown row type " + kind);
      row_ids.emplace(label, static_cast<int>(row_sense.size()));
      row_sense.push_back(sense);
      row_terms.emplace_back();
      row_rhs.push_back(0.0);
      row_labels.push_back(label);
    } else if (section == "COLUMNS") {
      have_columns = true;
      bool marker_line = false;
      for (const std::string& f : tk.fields) {
        if (f == "'MARKER'") marker_line = true;
        if (f == "'INTORG'") in_integer = true;
        if (f == "'INTEND'") in_integer = false;
      }
      if (marker_line) continue;
      if (tk.fields.size() < 3 || tk.fields.size() % 2 == 0) {
        throw std::runtime_error("parse_mps: bad COLUMNS line: " + tk.line);
      }
      int var = ensure_var(tk.fields[0]);
      for (std::size_t k = 1; k + 1 < tk.fields.size(); k += 2) {
        const std::string& label = tk.fields[k];
        double coef = parse_num(tk.fields[k + 1]);
        if (label == obj_row) {
          model.add_objective(var, coef);
        } else {
          auto it = row_ids.find(label);
          if (it == row_ids.end()) {
            throw std::runtime_error("parse_mps: unknown row " + label);
          }
          if (coef != 0.0) row_terms[it->second].push_back({var, coef});
        }
      }
    } else if (section == "RHS") {
      std::size_t start = tk.fields.size() % 2 == 1 ? 1 : 0;
      // Field layout is <set-name> (<row> <value>)+; the set name is
      // optional in free format.
      if (start == 0 && row_ids.count(tk.fields[0]) == 0 && tk.fields[0] != obj_row) {
        throw std::runtime_error("parse_mps: bad RHS line: " + tk.line);
      }
      for (std::size_t k = start; k + 1 < tk.fields.size(); k += 2) {
        const std::string& label = tk.fields[k];
        double value = parse_num(tk.fields[k + 1]);
        if (label == obj_row) {
          model.add_objective_constant(-value);
        } else {
          auto it = row_ids.find(label);
          if (it == row_ids.end()) {
            throw std::runtime_error("parse_mps: RHS for unknown row " + label);
          }
          row_rhs[it->second] = value;
        }
      }
    } else if (section == "RANGES") {
      throw std::runtime_error("parse_mps: RANGES not supported");
    } else if (section == "BOUNDS") {
      if (tk.fields.size() < 3) throw std::runtime_error("parse_mps: bad BOUNDS line");
      const std::string& type = tk.fields[0];
      const std::string& name = tk.fields[2];
      int var = model.find_variable(name);
      if (var < 0) throw std::runtime_error("parse_mps: bound on unknown column " + name);
      Variable& v = model.variable(var);
      double value = tk.fields.size() > 3 ? parse_num(tk.fields[3]) : 0.0;
      if (type == "UP") v.upper = value;
      else if (type == "LO") v.lower = value;
      else if (type == "FX") v.lower = v.upper = value;
      else if (type == "FR") { v.lower = -kInf; v.upper = kInf; }
      else if (type == "MI") v.lower = -kInf;
      else if (type == "PL") v.upper = kInf;
      else if (type == "BV") { v.kind = VarKind::kBinary; v.lower = 0.0; v.upper = 1.0; }
      else if (type == "UI") { v.kind = VarKind::kInteger; v.upper = value; }
      else if (type == "LI") { v.kind = VarKind::kInteger; v.lower = value; }
      else throw std::runtime_error("parse_mps: unknown bound type " + type);
    } else if (section.empty()) {
      throw std::runtime_error("parse_mps: data before any section");
    }
  } while (tk.next());

  if (!have_columns) throw std::runtime_error("parse_mps: no COLUMNS section");
  for (std::size_t c = 0; c < row_terms.size(); ++c) {
    model.add_constraint(row_labels[c], std::move(row_terms[c]), row_sense[c],
                         row_rhs[c]);
  }
  model.validate();
  return model;
}

}  // namespace eevc::milp
