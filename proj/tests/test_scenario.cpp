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
#include <stdexcept>

#include "eevc/scenario.hpp"
#include "eevc/scenario_file.hpp"

using namespace eevc;

TEST_CASE("full-cell baseband workload is 400 GOPS") {
  RadioParams radio;
  CHECK(radio.bbu_workload_full_gops() == 400.0);  // exact in binary floating point
}

TEST_CASE("cache energy density is exactly 550/14400") {
  PowerParams power;
  CHECK(power.cache_w_per_gb() == 550.0 / 14400.0);
}

TEST_CASE("cell demand follows the resource-block share") {
  RadioParams radio;
  CHECK(rrh_demand(10, radio) == doctest::Approx(9.8304).epsilon(1e-12));
  CHECK(rrh_demand(0, radio) == 0.0);
  CHECK(rrh_demand(5, radio) == doctest::Approx(4.9152).epsilon(1e-12));
  CHECK_THROWS_AS(rrh_demand(11, radio), std::invalid_argument);
  CHECK_THROWS_AS(rrh_demand(-1, radio), std::invalid_argument);
  // Linear in the user count and capped by the CPRI rate.
  for (int users = 0; users <= radio.max_users_per_cell; ++users) {
    CHECK(rrh_demand(users, radio) ==
          doctest::Approx(users * rrh_demand(1, radio)).epsilon(1e-12));
    CHECK(rrh_demand(users, radio) <= radio.cpri_rate_gbps + 1e-12);
  }
}

TEST_CASE("video/regular split is a partition") {
  RadioParams radio;
  auto [video, regular] = split_demand(9.8304, radio);
  CHECK(video == doctest::Approx(7.86432).epsilon(1e-12));
  CHECK(regular == doctest::Approx(1.96608).epsilon(1e-12));
  auto zero = split_demand(0.0, radio);
  CHECK(zero.video_gbps == 0.0);
  CHECK(zero.regular_gbps == 0.0);
  CHECK_THROWS_AS(split_demand(-1.0, radio), std::invalid_argument);
  for (double demand : {0.1, 1.0, 3.7, 9.8304}) {
    auto split = split_demand(demand, radio);
    CHECK(split.video_gbps + split.regular_gbps == doctest::Approx(demand).epsilon(1e-12));
  }
}

TEST_CASE("baseband workload scales linearly with traffic") {
  RadioParams radio;
  CHECK(bbuvm_workload(9.8304, radio) == doctest::Approx(400.0).epsilon(1e-12));
  CHECK(bbuvm_workload(0.0, radio) == 0.0);
  CHECK(bbuvm_workload(4.9152, radio) == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("cell load draws are deterministic, bounded and centered") {
  Topology topo = build_paper_topology();
  RadioParams radio;
  DiurnalProfile profile;

  DemandSet a = draw_cell_loads(profile, 9, 42, topo, radio);
  DemandSet b = draw_cell_loads(profile, 9, 42, topo, radio);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t r = 0; r < a.cells.size(); ++r) {
    CHECK(a.cells[r].users == b.cells[r].users);
    CHECK(a.cells[r].fronthaul_gbps == b.cells[r].fronthaul_gbps);
  }
  DemandSet c = draw_cell_loads(profile, 9, 43, topo, radio);
  bool any_diff = false;
  for (std::size_t r = 0; r < a.cells.size(); ++r) {
    if (a.cells[r].users != c.cells[r].users) any_diff = true;
  }
  CHECK(any_diff);

  for (int hour = 0; hour < 24; ++hour) {
    DemandSet demand = draw_cell_loads(profile, hour, 1, topo, radio);
    for (const CellDemand& cell : demand.cells) {
      CHECK(cell.users >= 1);
      CHECK(cell.users <= radio.max_users_per_cell);
      CHECK(cell.video_gbps + cell.regular_gbps ==
            doctest::Approx(cell.fronthaul_gbps).epsilon(1e-12));
      CHECK(cell.video_gbps == doctest::Approx(0.8 * cell.fronthaul_gbps).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(draw_cell_loads(profile, 24, 1, topo, radio), std::invalid_argument);

  // Empirical mean over many draws approaches the clamped window mean.
  for (int hour : {1, 9, 19}) {
    const int center = static_cast<int>(std::llround(profile.mean_users[hour]));
    double window_mean = 0.0;
    for (int off = -2; off <= 2; ++off) {
      int v = center + off;
      if (v < 1) v = 1;
      if (v > radio.max_users_per_cell) v = radio.max_users_per_cell;
      window_mean += v / 5.0;
    }
    double sum = 0.0;
    long count = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {  // 600*18 > 10^4 draws
      DemandSet demand = draw_cell_loads(profile, hour, seed, topo, radio);
      for (const CellDemand& cell : demand.cells) {
        sum += cell.users;
        ++count;
      }
    }
    CHECK(std::fabs(sum / count - window_mean) <= 0.2);
  }
}

TEST_CASE("inter-VM traffic splits the backhaul share uniformly") {
  Topology topo = build_paper_topology();
  Scenario scenario;
  DemandSet demand = uniform_cell_loads(5, topo, scenario.radio);
  auto pairs = core_hosting_pairs(topo);
  CHECK(pairs.size() == 6);  // 3 cores, ordered pairs

  CnvmInterTraffic zero = cnvm_inter_traffic(0.0, demand, scenario, topo, pairs);
  CHECK(zero.total() == 0.0);

  CnvmInterTraffic ten = cnvm_inter_traffic(0.1, demand, scenario, topo, pairs);
  const double backhaul = scenario.power.backhaul_ratio * demand.total_fronthaul_gbps();
  CHECK(ten.total() == doctest::Approx(0.1 * backhaul).epsilon(1e-12));
  // Uniform across the requested pairs, zero elsewhere.
  for (auto [p, q] : pairs) {
    CHECK(ten.at(p, q) == doctest::Approx(0.1 * backhaul / 6.0).epsilon(1e-12));
  }
  CHECK(ten.at(0, 1) == 0.0);  // ONU pair gets nothing

  CHECK_THROWS_AS(cnvm_inter_traffic(1.5, demand, scenario, topo, pairs),
                  std::invalid_argument);
}

TEST_CASE("arithmetic example from the inter-traffic rule") {
  // fraction 0.1 of alpha * 100 Gbps backhaul = 1.344 Gbps over all pairs.
  Topology topo = build_paper_topology();
  Scenario scenario;
  DemandSet demand = uniform_cell_loads(1, topo, scenario.radio);
  // Scale demand to exactly 100 Gbps total fronthaul.
  const double scale = 100.0 / demand.total_fronthaul_gbps();
  for (CellDemand& cell : demand.cells) {
    cell.fronthaul_gbps *= scale;
    cell.video_gbps *= scale;
    cell.regular_gbps *= scale;
  }
  CnvmInterTraffic it =
      cnvm_inter_traffic(0.1, demand, scenario, topo, core_hosting_pairs(topo));
  CHECK(it.total() == doctest::Approx(1.344).epsilon(1e-9));
}

TEST_CASE("scenario file round trip preserves the defaults") {
  ScenarioFile parsed = parse_scenario_text(default_scenario_text());
  CHECK(parsed.scenario.radio.cpri_rate_gbps == doctest::Approx(9.8304));
  CHECK(parsed.scenario.power.olt_max_w == 1940.0);
  CHECK(parsed.scenario.power.olt_idle_w == 60.0);
  CHECK(parsed.scenario.power.backhaul_ratio == doctest::Approx(0.1344));
  CHECK(parsed.scenario.zipf.exponent == doctest::Approx(0.8));
  CHECK(parsed.topology.cores == 3);
  CHECK(parsed.run.engine == "heuristic");
  CHECK(parsed.scenario.profile.mean_users[19] == 10.0);

  CHECK_THROWS(parse_scenario_text("[power]\nnot_a_key = 1\n"));
  CHECK_THROWS(parse_scenario_text("[nope]\n"));
  CHECK_THROWS(parse_scenario_text("orphan = 1\n"));
}
