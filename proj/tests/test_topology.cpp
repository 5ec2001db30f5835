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

#include <deque>
#include <stdexcept>

#include "eevc/topology.hpp"

using namespace eevc;

namespace {

// Independent breadth-first search over the adjacency lists; used as the
// oracle for shortest_path lengths.
int bfs_hops(const Topology& topo, NodeRef a, NodeRef b) {
  std::vector<int> dist(topo.num_nodes(), -1);
  std::deque<NodeRef> queue{a};
  dist[topo.uid(a)] = 0;
  while (!queue.empty()) {
    NodeRef cur = queue.front();
    queue.pop_front();
    for (NodeRef next : topo.neighbors(cur)) {
      if (dist[topo.uid(next)] < 0) {
        dist[topo.uid(next)] = dist[topo.uid(cur)] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist[topo.uid(b)];
}

}  // namespace

TEST_CASE("paper topology has the documented shape") {
  Topology topo = build_paper_topology();
  CHECK(topo.num_core() == 3);
  CHECK(topo.num_olt() == 6);
  CHECK(topo.num_onu() == 18);
  CHECK(topo.num_rrh() == 18);
  CHECK(topo.num_hosting() == 27);
  CHECK(topo.validate().empty());

  // Every RRH is a leaf on its ONU.
  for (int r = 0; r < topo.num_rrh(); ++r) {
    const auto& nb = topo.neighbors({NodeKind::kRrh, r});
    REQUIRE(nb.size() == 1);
    CHECK(nb[0].kind == NodeKind::kOnu);
    CHECK(nb[0].index == topo.onu_of_rrh(r));
  }
}

TEST_CASE("shortest_path lengths match the BFS oracle") {
  Topology topo = build_paper_topology();
  // RRH to its own OLT: RRH-ONU-OLT.
  NodeRef rrh0{NodeKind::kRrh, 0};
  NodeRef olt0{NodeKind::kOlt, 0};
  CHECK(topo.shortest_path(rrh0, olt0).size() == 3);
  // OLT to its core node: one hop.
  CHECK(topo.shortest_path(olt0, {NodeKind::kCore, 0}).size() == 2);
  // RRH under core 0 to an OLT under core 1: RRH-ONU-OLT-core0-core1-OLT.
  NodeRef far_olt{NodeKind::kOlt, 2};
  CHECK(topo.shortest_path(rrh0, far_olt).size() == 6);
  CHECK(bfs_hops(topo, rrh0, far_olt) == 5);

  for (int a = 0; a < topo.num_nodes(); ++a) {
    for (int b = 0; b < topo.num_nodes(); ++b) {
      NodeRef na = topo.node_of_uid(a), nb = topo.node_of_uid(b);
      const int oracle = bfs_hops(topo, na, nb);
      const auto path = topo.shortest_path(na, nb);
      CHECK(static_cast<int>(path.size()) - 1 == oracle);
      // Same length in both directions.
      CHECK(topo.shortest_path(nb, na).size() == path.size());
      // Consecutive path nodes are adjacent.
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        CHECK(topo.arc_index(path[k], path[k + 1]) >= 0);
      }
    }
  }
}

TEST_CASE("shortest_path tie-break is lexicographic") {
  Topology topo = build_paper_topology();
  // core2 -> core0 and core2 -> core1 are both single hops; a path from
  // OLT4 (under core2) towards core0 must go straight to core0.
  auto path = topo.shortest_path({NodeKind::kOlt, 4}, {NodeKind::kCore, 0});
  REQUIRE(path.size() == 3);
  CHECK(path[1] == NodeRef{NodeKind::kCore, 2});
}

TEST_CASE("edfa_count follows the span formula") {
  CHECK(edfa_count(80, 80) == 2);
  CHECK(edfa_count(160, 80) == 3);
  CHECK(edfa_count(40, 80) == 2);  // partial span still amplified
  CHECK(edfa_count(400, 80) == 6);
  CHECK_THROWS_AS(edfa_count(0, 80), std::invalid_argument);
  CHECK_THROWS_AS(edfa_count(100, -1), std::invalid_argument);

  // Non-decreasing in distance and never below 2.
  int prev = 0;
  for (int d = 1; d <= 1000; d += 7) {
    const int count = edfa_count(d, 80);
    CHECK(count >= 2);
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("validate flags structural damage") {
  // RRH 0 wired to two ONUs.
  {
    std::vector<AccessEdge> rrh_onu{{0, 0}, {0, 1}, {1, 1}};
    std::vector<AccessEdge> onu_olt{{0, 0}, {1, 0}};
    std::vector<AccessEdge> olt_core{{0, 0}};
    Topology topo(1, 1, 2, 2, rrh_onu, onu_olt, olt_core, {});
    auto violations = topo.validate();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].what.find("RRH0") != std::string::npos);
  }
  // Two core nodes with no link between them.
  {
    std::vector<AccessEdge> rrh_onu{{0, 0}, {1, 1}};
    std::vector<AccessEdge> onu_olt{{0, 0}, {1, 1}};
    std::vector<AccessEdge> olt_core{{0, 0}, {1, 1}};
    Topology topo(2, 2, 2, 2, rrh_onu, onu_olt, olt_core, {});
    auto violations = topo.validate();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].what.find("connected") != std::string::npos);
    CHECK_THROWS_AS(
        topo.shortest_path({NodeKind::kCore, 0}, {NodeKind::kCore, 1}),
        std::runtime_error);
  }
  // Bad distance.
  {
    Topology topo(2, 1, 1, 1, {{0, 0}}, {{0, 0}}, {{0, 0}},
                  {{0, 1, -5.0, 80.0, 0}});
    auto violations = topo.validate();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].what.find("distance") != std::string::npos);
  }
}

TEST_CASE("downstream paths never climb the access tree") {
  Topology topo = build_paper_topology();
  // Core to any RRH works.
  CHECK(topo.downstream_path({NodeKind::kCore, 2}, {NodeKind::kRrh, 0}).has_value());
  // An OLT cannot reach an RRH outside its subtree.
  CHECK_FALSE(
      topo.downstream_path({NodeKind::kOlt, 0}, {NodeKind::kRrh, 17}).has_value());
  // An ONU reaches only its own RRH.
  CHECK(topo.downstream_path({NodeKind::kOnu, 3}, {NodeKind::kRrh, 3}).has_value());
  CHECK_FALSE(
      topo.downstream_path({NodeKind::kOnu, 3}, {NodeKind::kRrh, 4}).has_value());
}

TEST_CASE("hosting enumeration is deterministic and complete") {
  Topology topo = build_reduced_topology();
  CHECK(topo.num_hosting() == 8);
  for (int h = 0; h < topo.num_hosting(); ++h) {
    CHECK(topo.hosting_index(topo.hosting_node(h)) == h);
  }
  CHECK(topo.hosting_node(0).kind == NodeKind::kOnu);
  CHECK(topo.hosting_node(7).kind == NodeKind::kCore);
}
