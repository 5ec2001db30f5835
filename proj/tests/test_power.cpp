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
#include <stdexcept>

#include "eevc/power.hpp"

using namespace eevc;

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

Solution random_solution(const Topology& topo, std::uint64_t seed) {
  Solution sol(topo);
  std::uint64_t state = seed;
  auto fill = [&](std::vector<double>& v, double lo, double hi) {
    for (double& x : v) x = uniform(state, lo, hi);
  };
  fill(sol.bbuvm_traffic, 0, 5);
  fill(sol.rrh_link_flow, 0, 2);
  fill(sol.pair_link_flow, 0, 2);
  fill(sol.server_routed, 0, 1);
  fill(sol.workload_int, 0, 3);
  fill(sol.workload_frac, 0, 0.99);
  fill(sol.hosts_any_vm, 0, 1);
  fill(sol.cache_size_int, 0, 100);
  fill(sol.wavelengths_physical, 0, 4);
  fill(sol.fibers, 0, 2);
  fill(sol.agg_ports, 0, 3);
  return sol;
}

}  // namespace

TEST_CASE("server power matches the idle/dynamic split") {
  PowerParams pw;
  CHECK(server_power(0, 0.5, 1, pw) == doctest::Approx(238.5).epsilon(1e-12));
  CHECK(server_power(0, 0, 0, pw) == 0.0);
  CHECK(server_power(2, 0, 1, pw) == doctest::Approx(336.0).epsilon(1e-12));
  CHECK_THROWS_AS(server_power(0, 1.0, 1, pw), std::invalid_argument);
  CHECK_THROWS_AS(server_power(0, -0.1, 1, pw), std::invalid_argument);
  CHECK_THROWS_AS(server_power(-1, 0, 1, pw), std::invalid_argument);
}

TEST_CASE("cache power is linear in the integer percent") {
  PowerParams pw;
  CHECK(cache_power(100, pw) == doctest::Approx(550.0).epsilon(1e-12));
  CHECK(cache_power(0, pw) == 0.0);
  CHECK(cache_power(50, pw) == doctest::Approx(275.0).epsilon(1e-12));
  CHECK_THROWS_AS(cache_power(101, pw), std::invalid_argument);
  CHECK_THROWS_AS(cache_power(-1, pw), std::invalid_argument);
}

TEST_CASE("OLT power interpolates between idle and max") {
  PowerParams pw;
  CHECK(olt_power(0, pw) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(olt_power(8600, pw) == doctest::Approx(1940.0).epsilon(1e-12));
  CHECK(olt_power(4300, pw) == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK_THROWS_AS(olt_power(8600.1, pw), std::domain_error);
  CHECK_THROWS_AS(olt_power(-1, pw), std::invalid_argument);
}

TEST_CASE("video server energy applies the backhaul ratio as printed") {
  PowerParams pw;
  CHECK(video_server_power(0, pw) == 0.0);
  CHECK(video_server_power(10, pw) ==
        doctest::Approx(211.1 * 0.1344 * 10.0).epsilon(1e-12));
  CHECK(video_server_power(20, pw) ==
        doctest::Approx(2 * video_server_power(10, pw)).epsilon(1e-12));
}

TEST_CASE("an idle network still burns radio and OLT idle power") {
  Topology topo = build_paper_topology();
  Scenario scenario;
  Solution sol(topo);
  PowerBreakdown pb = eval_total(sol, scenario, topo);
  CHECK(pb.onu_rrh == doctest::Approx(18 * 1140.0).epsilon(1e-12));
  CHECK(pb.olt == doctest::Approx(6 * 60.0).epsilon(1e-12));
  CHECK(pb.router_ports == 0.0);
  CHECK(pb.transponders == 0.0);
  CHECK(pb.edfas == 0.0);
  CHECK(pb.regenerators == 0.0);
  CHECK(pb.vm_servers == 0.0);
  CHECK(pb.video_server == 0.0);
  CHECK(pb.caches == 0.0);
  CHECK(pb.total == pb.category_sum());
}

TEST_CASE("one fully loaded server draws exactly two idle units") {
  Topology topo = build_reduced_topology();
  Scenario scenario;
  Solution sol(topo);
  sol.workload_int[0] = 1.0;
  sol.workload_frac[0] = 0.0;
  sol.hosts_any_vm[0] = 1.0;
  PowerBreakdown pb = eval_total(sol, scenario, topo);
  CHECK(pb.vm_servers == doctest::Approx(224.0).epsilon(1e-12));
}

TEST_CASE("breakdown sum invariant holds for random solutions") {
  Topology topo = build_reduced_topology();
  Scenario scenario;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Solution sol = random_solution(topo, seed);
    PowerBreakdown pb = eval_total(sol, scenario, topo);
    CHECK(pb.total == pb.category_sum());
    CHECK(std::isfinite(pb.total));
  }
}

TEST_CASE("eval_total is monotone in traffic and resource counts") {
  Topology topo = build_reduced_topology();
  Scenario scenario;
  Solution base = random_solution(topo, 7);
  const double before = eval_total(base, scenario, topo).total;

  Solution more = base;
  for (double& f : more.rrh_link_flow) f += 0.5;
  CHECK(eval_total(more, scenario, topo).total >= before);

  Solution ports = base;
  for (double& p : ports.agg_ports) p += 1.0;
  CHECK(eval_total(ports, scenario, topo).total >= before + 825.0);

  Solution fibers = base;
  for (double& f : fibers.fibers) f += 1.0;
  CHECK(eval_total(fibers, scenario, topo).total > before);
}

TEST_CASE("eval_total rejects mismatched dimensions") {
  Topology big = build_paper_topology();
  Topology small = build_reduced_topology();
  Scenario scenario;
  Solution sol(small);
  CHECK_THROWS_AS(eval_total(sol, scenario, big), std::invalid_argument);
}

TEST_CASE("only traffic on outgoing arcs of a node counts towards its load") {
  Topology topo = build_reduced_topology();
  Scenario scenario;
  Solution sol(topo);
  // Traffic on the OLT0 -> ONU0 arc loads the OLT, not the ONU.
  const int arc = topo.arc_index({NodeKind::kOlt, 0}, {NodeKind::kOnu, 0});
  REQUIRE(arc >= 0);
  sol.rrh_link_flow[sol.hra(0, 0, arc)] = 10.0;
  PowerBreakdown pb = eval_total(sol, scenario, topo);
  const double olt_extra = (1940.0 - 60.0) / 8600.0 * 10.0;
  CHECK(pb.olt == doctest::Approx(2 * 60.0 + olt_extra).epsilon(1e-9));
  CHECK(pb.onu_rrh == doctest::Approx(4 * 1140.0).epsilon(1e-9));
}
