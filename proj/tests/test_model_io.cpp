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

#include <doctest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eevc/formulation.hpp"
#include "eevc/mps_io.hpp"
#include "eevc/scenario.hpp"

using namespace eevc;
using milp::Model;
using milp::Sense;
using milp::VarKind;

namespace {

// Test-only grammar check for free MPS: section order, field arity, marker
// pairing, and name resolution. Independent of the writer and of the
// production reader.
void check_mps_grammar(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> sections;
  std::set<std::string> rows{"OBJ"};
  std::set<std::string> columns;
  bool in_marker = false;
  int data_lines = 0;
  std::string section;
  while (std::getline(in, line)) {
    REQUIRE(!line.empty());
    if (line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> f;
    std::string tok;
    while (ls >> tok) f.push_back(tok);
    REQUIRE(!f.empty());
    if (line[0] != ' ') {
      section = f[0];
      sections.push_back(section);
      if (section == "NAME") continue;
      REQUIRE(f.size() == 1);
      continue;
    }
    ++data_lines;
    if (section == "ROWS") {
      REQUIRE(f.size() == 2);
      REQUIRE((f[0] == "N" || f[0] == "L" || f[0] == "G" || f[0] == "E"));
      if (f[0] == "N") {
        REQUIRE(f[1] == "OBJ");
      } else {
        REQUIRE(rows.insert(f[1]).second);  // unique row names
      }
    } else if (section == "COLUMNS") {
      if (f.size() >= 3 && f[2] == "'MARKER'") {
        REQUIRE((f[3] == "'INTORG'" || f[3] == "'INTEND'"));
        REQUIRE(in_marker == (f[3] == "'INTEND'"));
        in_marker = f[3] == "'INTORG'";
        continue;
      }
      REQUIRE(f.size() % 2 == 1);
      REQUIRE(f.size() >= 3);
      columns.insert(f[0]);
      for (std::size_t k = 1; k < f.size(); k += 2) {
        REQUIRE(rows.count(f[k]) == 1);
        std::size_t used = 0;
        (void)std::stod(f[k + 1], &used);
        REQUIRE(used == f[k + 1].size());
      }
    } else if (section == "RHS") {
      REQUIRE(f.size() % 2 == 1);
      for (std::size_t k = 1; k < f.size(); k += 2) {
        REQUIRE(rows.count(f[k]) == 1);
        std::size_t used = 0;
        (void)std::stod(f[k + 1], &used);
        REQUIRE(used == f[k + 1].size());
      }
    } else if (section == "BOUNDS") {
      REQUIRE(f.size() >= 3);
      const std::set<std::string> kinds{"UP", "LO", "FX", "FR", "MI",
                                        "PL", "BV", "UI", "LI"};
      REQUIRE(kinds.count(f[0]) == 1);
      REQUIRE(columns.count(f[2]) == 1);
    } else if (section == "ENDATA") {
      FAIL("data after ENDATA");
    } else {
      FAIL("unknown section ", section);
    }
  }
  REQUIRE(!in_marker);
  // Section order.
  std::vector<std::string> expect{"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS",
                                  "ENDATA"};
  REQUIRE(sections == expect);
  REQUIRE(data_lines > 0);
}

Model tiny_model() {
  Model model;
  model.name = "tiny";
  model.add_variable("x", VarKind::kContinuous, 1.0, milp::kInf);
  model.add_objective(0, 1.0);
  model.add_constraint("C1", {{0, 1.0}}, Sense::kGe, 1.0);
  return model;
}

}  // namespace

TEST_CASE("single-variable model emits the expected sections") {
  Model model = tiny_model();
  const std::string mps = milp::emit_mps(model);
  CHECK(mps.find("ROWS\n N OBJ\n G C1\n") != std::string::npos);
  CHECK(mps.find(" x C1 1\n") != std::string::npos);
  CHECK(mps.find("BOUNDS\n LO BND x 1\n") != std::string::npos);
  CHECK(mps.find("ENDATA") != std::string::npos);

  const std::string lp = milp::emit_lp(model);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Bounds") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
}

TEST_CASE("emit -> parse -> emit is byte identical") {
  Model model;
  model.name = "roundtrip";
  model.add_variable("flow_a", VarKind::kContinuous, 0.0, 12.5);
  model.add_variable("pick_b", VarKind::kBinary, 0.0, 1.0);
  model.add_variable("count_c", VarKind::kInteger, 0.0, 7.0);
  model.add_variable("free_d", VarKind::kContinuous, -milp::kInf, milp::kInf);
  model.add_variable("fixed_e", VarKind::kContinuous, 2.25, 2.25);
  model.add_variable("lonely_f", VarKind::kContinuous, 0.0, milp::kInf);
  model.add_objective(0, 0.1);
  model.add_objective(1, -825.0);
  model.add_objective(2, 1.0 / 3.0);
  model.add_objective_constant(1234.5);
  model.add_constraint("C11[h=0]", {{0, 1.0}, {1, -3.5}}, Sense::kLe, 4.0);
  model.add_constraint("C12[r=1]", {{1, 1.0}, {2, 2.0}, {3, 0.25}}, Sense::kEq, 1.0);
  model.add_constraint("C13[h=0,r=1]", {{0, 1e-9}, {4, 1.0}}, Sense::kGe, -2.0);

  const std::string first = milp::emit_mps(model);
  Model reread = milp::parse_mps(first);
  const std::string second = milp::emit_mps(reread);
  CHECK(first == second);

  // Structural identity, not just textual.
  REQUIRE(reread.num_variables() == model.num_variables());
  REQUIRE(reread.num_constraints() == model.num_constraints());
  CHECK(reread.objective_constant() == model.objective_constant());
  for (int j = 0; j < model.num_variables(); ++j) {
    CHECK(reread.variable(j).name == model.variable(j).name);
    CHECK(reread.variable(j).kind == model.variable(j).kind);
    CHECK(reread.variable(j).lower == model.variable(j).lower);
    CHECK(reread.variable(j).upper == model.variable(j).upper);
    CHECK(reread.objective_coef(j) == model.objective_coef(j));
  }
  for (int c = 0; c < model.num_constraints(); ++c) {
    CHECK(reread.constraints()[c].label == model.constraints()[c].label);
    CHECK(reread.constraints()[c].rhs == model.constraints()[c].rhs);
    REQUIRE(reread.constraints()[c].terms.size() ==
            model.constraints()[c].terms.size());
  }
}

TEST_CASE("emitted formulation passes the MPS grammar oracle") {
  Topology topo = build_reduced_topology();
  Scenario scenario;
  DemandSet demand = uniform_cell_loads(5, topo, scenario.radio);
  CnvmInterTraffic inter = cnvm_inter_traffic(0.1, demand, scenario, topo,
                                              core_hosting_pairs(topo));
  Formulation form =
      build_formulation(scenario, topo, Approach::kIntegrated, demand, inter);
  const std::string mps = milp::emit_mps(form.model);
  check_mps_grammar(mps);

  // Determinism: building the same model twice emits identical bytes.
  Formulation again =
      build_formulation(scenario, topo, Approach::kIntegrated, demand, inter);
  CHECK(milp::emit_mps(again.model) == mps);

  // Round trip through the reader preserves the model.
  Model reread = milp::parse_mps(mps);
  CHECK(milp::emit_mps(reread) == mps);
}

TEST_CASE("labels parse back to their constraint number and indices") {
  auto parsed = milp::parse_label("C38[u=3,r=7]");
  CHECK(parsed.number == 38);
  REQUIRE(parsed.indices.size() == 2);
  CHECK(parsed.indices[0].first == "u");
  CHECK(parsed.indices[0].second == 3);
  CHECK(parsed.indices[1].first == "r");
  CHECK(parsed.indices[1].second == 7);
  CHECK(milp::parse_label("C32").number == 32);
  CHECK(milp::make_label(55, {{"h", 1}, {"r", 2}, {"x", 3}}) == "C55[h=1,r=2,x=3]");
  CHECK_THROWS(milp::parse_label("nope"));
  CHECK_THROWS(milp::parse_label("C38[u3]"));
}

TEST_CASE("model validation rejects malformed input") {
  Model model;
  model.add_variable("x", VarKind::kContinuous, 0.0, 1.0);
  CHECK_THROWS(model.add_variable("x", VarKind::kContinuous, 0.0, 1.0));
  CHECK_THROWS(model.add_variable("bad", VarKind::kBinary, 0.0, 2.0));
  CHECK_THROWS(model.add_variable("crossed", VarKind::kContinuous, 2.0, 1.0));
  CHECK_THROWS(model.add_constraint("dup", {{0, 1.0}, {0, 2.0}}, Sense::kLe, 0.0));
  CHECK_THROWS(model.add_constraint("unknown", {{5, 1.0}}, Sense::kLe, 0.0));
}
