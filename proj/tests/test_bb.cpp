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

#include <cmath>
#include <cstdint>
#include <vector>

#include "eevc/branch_and_bound.hpp"
#include "eevc/formulation.hpp"
#include "eevc/presolve.hpp"
#include "eevc/simplex.hpp"

using namespace eevc;
using milp::Model;
using milp::Sense;
using milp::VarKind;
using solver::MilpStatus;

namespace {

std::uint64_t mix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(std::uint64_t& state, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(mix(state) >> 11) * 0x1.0p-53);
}

// Random mixed model: up to 8 binaries and 6 bounded continuous variables,
// built around an interior point so most instances are feasible.
struct RandomMilp {
  Model model;
  std::vector<int> binaries;
};

RandomMilp random_milp(std::uint64_t seed) {
  std::uint64_t state = seed;
  RandomMilp out;
  const int nb = 1 + static_cast<int>(mix(state) % 8);  // 1..8
  const int nc = 1 + static_cast<int>(mix(state) % 6);  // 1..6
  for (int b = 0; b < nb; ++b) {
    out.binaries.push_back(
        out.model.add_variable("b" + std::to_string(b), VarKind::kBinary, 0, 1));
    out.model.add_objective(out.binaries.back(), uniform(state, -5, 5));
  }
  std::vector<int> cont;
  std::vector<double> x0;
  for (int c = 0; c < nc; ++c) {
    const double lo = uniform(state, -2, 0);
    const double hi = lo + uniform(state, 0.5, 4);
    cont.push_back(out.model.add_variable("x" + std::to_string(c),
                                          VarKind::kContinuous, lo, hi));
    out.model.add_objective(cont.back(), uniform(state, -3, 3));
    x0.push_back(lo + (hi - lo) * uniform(state, 0.3, 0.7));
  }
  const int rows = 2 + static_cast<int>(mix(state) % 4);
  for (int r = 0; r < rows; ++r) {
    std::vector<milp::LinearTerm> terms;
    double act = 0.0;
    for (int b = 0; b < nb; ++b) {
      if (uniform(state, 0, 1) < 0.5) {
        const double coef = uniform(state, -2, 2);
        terms.push_back({out.binaries[b], coef});
        act += coef * 0.5;  // interior point midway
      }
    }
    for (int c = 0; c < nc; ++c) {
      if (uniform(state, 0, 1) < 0.6) {
        const double coef = uniform(state, -2, 2);
        terms.push_back({cont[c], coef});
        act += coef * x0[c];
      }
    }
    if (terms.empty()) continue;
    if (uniform(state, 0, 1) < 0.5) {
      out.model.add_constraint("C" + std::to_string(100 + r), std::move(terms),
                               Sense::kLe, act + uniform(state, 0.2, 1.5));
    } else {
      out.model.add_constraint("C" + std::to_string(100 + r), std::move(terms),
                               Sense::kGe, act - uniform(state, 0.2, 1.5));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("an LP-integral instance finishes at the root") {
  Model model;
  int x = model.add_variable("x", VarKind::kInteger, 0, 10);
  model.add_objective(x, 1.0);
  model.add_constraint("C1", {{x, 1.0}}, Sense::kGe, 3.0);
  auto result = solver::solve_milp(model);
  REQUIRE(result.status == MilpStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(result.nodes_explored <= 1);
}

TEST_CASE("knapsack spot check against brute force") {
  // max 5a + 4b + 3c s.t. 2a + 3b + c <= 4 -> min negated.
  Model model;
  int a = model.add_variable("a", VarKind::kBinary, 0, 1);
  int b = model.add_variable("b", VarKind::kBinary, 0, 1);
  int c = model.add_variable("c", VarKind::kBinary, 0, 1);
  model.add_objective(a, -5.0);
  model.add_objective(b, -4.0);
  model.add_objective(c, -3.0);
  model.add_constraint("C1", {{a, 2.0}, {b, 3.0}, {c, 1.0}}, Sense::kLe, 4.0);
  auto result = solver::solve_milp(model);
  REQUIRE(result.status == MilpStatus::kOptimal);
  CHECK(result.objective == doctest::Approx(-8.0).epsilon(1e-9));  // a + c
  CHECK(result.values[a] == doctest::Approx(1.0));
  CHECK(result.values[c] == doctest::Approx(1.0));
}

TEST_CASE("50 random MILPs agree with the enumeration oracle") {
  int compared = 0;
  long total_nodes = 0;
  for (std::uint64_t seed = 1; compared < 50; ++seed) {
    REQUIRE(seed < 300);
    RandomMilp instance = random_milp(seed);
    auto oracle = solver::enumerate_oracle(instance.model, instance.binaries);
    auto result = solver::solve_milp(instance.model);
    if (!oracle.feasible) {
      CHECK(result.status == MilpStatus::kInfeasible);
      continue;
    }
    REQUIRE(result.status == MilpStatus::kOptimal);
    CHECK(std::fabs(result.objective - oracle.objective) < 1e-6);
    // Returned assignment is feasible for the model.
    CHECK(check_solution(instance.model, result.values, 1e-6).empty());
    total_nodes += result.nodes_explored;
    ++compared;
  }
  CHECK(total_nodes > 0);
}

TEST_CASE("oracle solves at most 2^k completions and rejects big subsets") {
  Model model;
  int b = model.add_variable("b", VarKind::kBinary, 0, 1);
  int x = model.add_variable("x", VarKind::kContinuous, 0, 4);
  model.add_objective(b, 2.0);
  model.add_objective(x, 1.0);
  model.add_constraint("C1", {{b, 1.0}, {x, 1.0}}, Sense::kGe, 1.0);
  auto oracle = solver::enumerate_oracle(model, {b});
  CHECK(oracle.lp_solves <= 2);
  CHECK(oracle.feasible);
  CHECK(oracle.objective == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<int> too_big(26, b);
  CHECK_THROWS(solver::enumerate_oracle(model, too_big));
}

TEST_CASE("infeasible model yields infeasible from both engines") {
  Model model;
  int b = model.add_variable("b", VarKind::kBinary, 0, 1);
  model.add_constraint("C1", {{b, 1.0}}, Sense::kGe, 2.0);
  CHECK(solver::solve_milp(model).status == MilpStatus::kInfeasible);
  CHECK_FALSE(solver::enumerate_oracle(model, {b}).feasible);
}

TEST_CASE("solve_milp is deterministic") {
  RandomMilp instance = random_milp(17);
  auto a = solver::solve_milp(instance.model);
  auto b = solver::solve_milp(instance.model);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes_explored == b.nodes_explored);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    CHECK(a.values[j] == b.values[j]);
  }
}

TEST_CASE("node limit preserves the incumbent and the bound") {
  RandomMilp instance = random_milp(23);
  solver::MilpOptions options;
  options.node_limit = 1;
  auto result = solver::solve_milp(instance.model, options);
  if (result.status == MilpStatus::kNodeLimit && result.has_incumbent) {
    CHECK(result.best_bound <= result.objective + 1e-9);
    CHECK(result.gap >= 0.0);
  }
}

TEST_CASE("warm incumbent prunes but never worsens the answer") {
  RandomMilp instance = random_milp(31);
  auto reference = solver::solve_milp(instance.model);
  REQUIRE(reference.status == MilpStatus::kOptimal);
  solver::MilpOptions options;
  options.initial_incumbent = &reference.values;
  auto warmed = solver::solve_milp(instance.model, options);
  REQUIRE(warmed.status == MilpStatus::kOptimal);
  CHECK(warmed.objective == doctest::Approx(reference.objective).epsilon(1e-9));
}

TEST_CASE("bound tightening presolve preserves optima") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    RandomMilp instance = random_milp(seed);
    solver::MilpOptions with, without;
    with.root_presolve = true;
    without.root_presolve = false;
    auto a = solver::solve_milp(instance.model, with);
    auto b = solver::solve_milp(instance.model, without);
    REQUIRE(a.status == b.status);
    if (a.status == MilpStatus::kOptimal) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-7));
    }
  }
}

TEST_CASE("presolve detects infeasibility and fixes forced variables") {
  Model model;
  int x = model.add_variable("x", VarKind::kContinuous, 0, 10);
  int y = model.add_variable("y", VarKind::kContinuous, 0, 10);
  model.add_constraint("C1", {{x, 1.0}, {y, 1.0}}, Sense::kEq, 0.0);
  auto pre = solver::presolve_bounds(model);
  CHECK_FALSE(pre.infeasible);
  CHECK(pre.upper[x] == 0.0);
  CHECK(pre.upper[y] == 0.0);

  Model bad;
  int z = bad.add_variable("z", VarKind::kContinuous, 0, 1);
  bad.add_constraint("C1", {{z, 1.0}}, Sense::kGe, 5.0);
  CHECK(solver::presolve_bounds(bad).infeasible);
}
