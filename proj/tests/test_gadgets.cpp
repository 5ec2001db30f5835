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
#include <optional>

#include "eevc/branch_and_bound.hpp"
#include "eevc/model.hpp"
#include "eevc/simplex.hpp"

using namespace eevc;
using milp::Model;
using milp::Sense;
using milp::VarKind;

namespace {

// Feasible range of one variable under fixed bounds on the others: solve
// min and max by LP. Returns nothing when infeasible.
std::optional<std::pair<double, double>> feasible_range(Model model, int var) {
  for (int j = 0; j < model.num_variables(); ++j) model.add_objective(j, 0.0);
  Model min_model = model;
  min_model.add_objective(var, 1.0);
  auto lo = solver::solve_lp(min_model);
  if (lo.status == solver::LpStatus::kInfeasible) return std::nullopt;
  REQUIRE(lo.status == solver::LpStatus::kOptimal);
  Model max_model = model;
  max_model.add_objective(var, -1.0);
  auto hi = solver::solve_lp(max_model);
  REQUIRE(hi.status == solver::LpStatus::kOptimal);
  return std::make_pair(lo.objective, -hi.objective);
}

void fix(Model& model, int var, double value) {
  model.variable(var).lower = value;
  model.variable(var).upper = value;
}

}  // namespace

TEST_CASE("AND gadget reproduces the conjunction truth table") {
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      Model model;
      int p = model.add_variable("p", VarKind::kBinary, 0, 1);
      int q = model.add_variable("q", VarKind::kBinary, 0, 1);
      int psi = milp::gadget_and(model, p, q, "psi", "C21", "C22", "C23");
      fix(model, p, a);
      fix(model, q, b);
      // Relax psi to continuous: the three rows alone must pin it.
      model.variable(psi).kind = VarKind::kContinuous;
      auto range = feasible_range(model, psi);
      REQUIRE(range.has_value());
      CHECK(range->first == doctest::Approx(a && b ? 1.0 : 0.0).epsilon(1e-9));
      CHECK(range->second == doctest::Approx(a && b ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("OR gadget reproduces the disjunction truth table") {
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      Model model;
      int p = model.add_variable("b", VarKind::kBinary, 0, 1);
      int q = model.add_variable("e", VarKind::kBinary, 0, 1);
      int x = milp::gadget_or(model, p, q, "x", "C25", "C26", "C27");
      fix(model, p, a);
      fix(model, q, b);
      model.variable(x).kind = VarKind::kContinuous;
      auto range = feasible_range(model, x);
      REQUIRE(range.has_value());
      CHECK(range->first == doctest::Approx(a || b ? 1.0 : 0.0).epsilon(1e-9));
      CHECK(range->second == doctest::Approx(a || b ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("activity link ties the indicator to the traffic") {
  const double big_m = 1e6;
  // x > 0 forces sigma = 1.
  {
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, 0, 100);
    int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
    milp::gadget_activity_link(model, {{x, 1.0}}, sigma, big_m, "C15", "C16");
    fix(model, x, 5.0);
    model.variable(sigma).kind = VarKind::kContinuous;
    auto range = feasible_range(model, sigma);
    REQUIRE(range.has_value());
    // M*x >= sigma allows any sigma up to 1; x <= M*sigma forces it
    // strictly positive, and with integrality only 1 remains.
    CHECK(range->first > 0.0);
    Model integral = model;
    auto milp_range_lo = solver::solve_milp([&] {
      Model m = integral;
      m.add_objective(sigma, 1.0);
      return m;
    }());
    CHECK(milp_range_lo.status == solver::MilpStatus::kOptimal);
    CHECK(milp_range_lo.objective == doctest::Approx(1.0).epsilon(1e-9));
  }
  // x = 0 leaves sigma free; cost pressure drives it to 0.
  {
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, 0, 100);
    int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
    milp::gadget_activity_link(model, {{x, 1.0}}, sigma, big_m, "C15", "C16");
    fix(model, x, 0.0);
    model.add_objective(sigma, 1.0);
    auto result = solver::solve_lp(model);
    REQUIRE(result.status == solver::LpStatus::kOptimal);
    CHECK(result.objective == doctest::Approx(0.0).epsilon(1e-9));
    // And sigma = 0 with x = 0 is feasible outright.
    fix(model, sigma, 0.0);
    CHECK(solver::solve_lp(model).status == solver::LpStatus::kOptimal);
  }
  // Table row: x > 0 with sigma = 0 must be infeasible.
  {
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, 0, 100);
    int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
    milp::gadget_activity_link(model, {{x, 1.0}}, sigma, big_m, "C15", "C16");
    fix(model, x, 5.0);
    fix(model, sigma, 0.0);
    CHECK(solver::solve_lp(model).status == solver::LpStatus::kInfeasible);
  }
  {
    Model model;
    int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
    CHECK_THROWS(milp::gadget_activity_link(model, {}, sigma, -1.0, "a", "b"));
  }
}

TEST_CASE("product gadget equals sigma times delta on a grid") {
  for (int s = 0; s <= 1; ++s) {
    for (int g = 0; g <= 10; ++g) {
      const double delta_value = g / 10.0;
      Model model;
      int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
      int delta = model.add_variable("delta", VarKind::kContinuous, 0, 1);
      int theta =
          milp::gadget_product(model, sigma, delta, "theta", "C33", "C34", "C35", "C36");
      fix(model, sigma, s);
      fix(model, delta, delta_value);
      auto range = feasible_range(model, theta);
      REQUIRE(range.has_value());
      const double expect = s * delta_value;
      CHECK(range->first == doctest::Approx(expect).epsilon(1e-9));
      CHECK(range->second == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  // Unbounded delta is rejected.
  Model model;
  int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
  int delta = model.add_variable("delta", VarKind::kContinuous, 0, 5.0);
  CHECK_THROWS(milp::gadget_product(model, sigma, delta, "theta", "a", "b", "c", "d"));
}

TEST_CASE("gate gadget copies the source when open and zeroes when closed") {
  const double mu = 1e6;
  for (int s = 0; s <= 1; ++s) {
    for (double source_value : {0.0, 0.5, 3.2, 7.75, 9.9}) {
      Model model;
      int source = model.add_variable("source", VarKind::kContinuous, 0, 10);
      int routed = model.add_variable("routed", VarKind::kContinuous, 0, milp::kInf);
      int sigma = model.add_variable("sigma", VarKind::kBinary, 0, 1);
      milp::gadget_gate(model, routed, source, sigma, mu, "C41", "C42", "C43", "C44");
      fix(model, source, source_value);
      fix(model, sigma, s);
      auto range = feasible_range(model, routed);
      REQUIRE(range.has_value());
      const double expect = s ? source_value : 0.0;
      CHECK(range->first == doctest::Approx(expect).epsilon(1e-6));
      CHECK(range->second == doctest::Approx(expect).epsilon(1e-6));
    }
  }
}

TEST_CASE("integer/fractional split floors under objective pressure") {
  CHECK(solver::solve_milp([] {
          Model model;
          int x = model.add_variable("x", VarKind::kContinuous, 2.4, 2.4);
          auto [xi, xf] = milp::gadget_int_frac_split(model, x, "xi", "xf", "C40");
          (void)xf;
          model.add_objective(xi, 1.0);
          return model;
        }())
            .objective == doctest::Approx(2.0).epsilon(1e-9));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // Deterministic pseudo-random values over [0, 10).
    const double value = std::fmod(seed * 2.718281828459045, 1.0) * 10.0;
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, value, value);
    auto [xi, xf] = milp::gadget_int_frac_split(model, x, "xi", "xf", "C40");
    model.add_objective(xi, 1.0);
    auto result = solver::solve_milp(model);
    REQUIRE(result.status == solver::MilpStatus::kOptimal);
    CHECK(result.values[xi] == doctest::Approx(std::floor(value)).epsilon(1e-6));
    CHECK(result.values[xf] ==
          doctest::Approx(value - std::floor(value)).epsilon(1e-6));
    // x = 3.0 exactly splits as (3, 0).
  }
  {
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, 3.0, 3.0);
    auto [xi, xf] = milp::gadget_int_frac_split(model, x, "xi", "xf", "C40");
    (void)xf;
    model.add_objective(xi, 1.0);
    auto result = solver::solve_milp(model);
    CHECK(result.values[xi] == doctest::Approx(3.0).epsilon(1e-6));
  }
  {
    Model model;
    int x = model.add_variable("x", VarKind::kContinuous, 0.0, milp::kInf);
    CHECK_THROWS(milp::gadget_int_frac_split(model, x, "xi", "xf", "C40"));
  }
}
