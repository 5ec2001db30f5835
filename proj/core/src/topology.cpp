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

#include "eevc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace eevc {

const char* to_cstring(NodeKind kind) {
  switch (kind) {
    case NodeKind::kRrh: return "RRH";
    case NodeKind::kOnu: return "ONU";
    case NodeKind::kOlt: return "OLT";
    case NodeKind::kCore: return "CORE";
  }
  return "?";
}

std::string to_string(NodeRef node) {
  return std::string(to_cstring(node.kind)) + std::to_string(node.index);
}

int edfa_count(double distance_km, double span_km) {
  if (!(distance_km > 0.0) || !(span_km > 0.0)) {
    throw std::invalid_argument("edfa_count: distance and span must be positive");
  }
  // Ceiling division; a partial span still needs its amplifier.
  int spans = static_cast<int>(std::ceil(distance_km / span_km - 1e-9));
  if (spans < 1) spans = 1;
  return spans - 1 + 2;
}

Topology::Topology(int n_core, int n_olt, int n_onu, int n_rrh,
                   std::vector<AccessEdge> rrh_onu, std::vector<AccessEdge> onu_olt,
                   std::vector<AccessEdge> olt_core, std::vector<CoreLink> core_links)
    : n_core_(n_core),
      n_olt_(n_olt),
      n_onu_(n_onu),
      n_rrh_(n_rrh),
      core_links_(std::move(core_links)) {
  if (n_core < 1 || n_olt < 0 || n_onu < 0 || n_rrh < 0) {
    throw std::invalid_argument("Topology: bad node counts");
  }

  onu_of_rrh_.assign(n_rrh_, -1);
  olt_of_onu_.assign(n_onu_, -1);
  core_of_olt_.assign(n_olt_, -1);
  rrh_of_onu_.assign(n_onu_, -1);
  onus_of_olt_.assign(n_olt_, {});
  olts_of_core_.assign(n_core_, {});

  adjacency_.assign(num_nodes(), {});
  auto connect = [this](NodeRef a, NodeRef b) {
    adjacency_[uid(a)].push_back(b);
    adjacency_[uid(b)].push_back(a);
  };
  auto in_range = [](int i, int n) { return i >= 0 && i < n; };

  for (const AccessEdge& e : rrh_onu) {
    if (!in_range(e.child, n_rrh_) || !in_range(e.parent, n_onu_)) {
      throw std::invalid_argument("Topology: RRH-ONU edge out of range");
    }
    connect({NodeKind::kRrh, e.child}, {NodeKind::kOnu, e.parent});
    if (onu_of_rrh_[e.child] < 0) onu_of_rrh_[e.child] = e.parent;
    if (rrh_of_onu_[e.parent] < 0) rrh_of_onu_[e.parent] = e.child;
  }
  for (const AccessEdge& e : onu_olt) {
    if (!in_range(e.child, n_onu_) || !in_range(e.parent, n_olt_)) {
      throw std::invalid_argument("Topology: ONU-OLT edge out of range");
    }
    connect({NodeKind::kOnu, e.child}, {NodeKind::kOlt, e.parent});
    if (olt_of_onu_[e.child] < 0) {
      olt_of_onu_[e.child] = e.parent;
      onus_of_olt_[e.parent].push_back(e.child);
    }
  }
  for (const AccessEdge& e : olt_core) {
    if (!in_range(e.child, n_olt_) || !in_range(e.parent, n_core_)) {
      throw std::invalid_argument("Topology: OLT-core edge out of range");
    }
    connect({NodeKind::kOlt, e.child}, {NodeKind::kCore, e.parent});
    if (core_of_olt_[e.child] < 0) {
      core_of_olt_[e.child] = e.parent;
      olts_of_core_[e.parent].push_back(e.child);
    }
  }

  core_adjacency_.assign(n_core_, {});
  for (const CoreLink& link : core_links_) {
    if (!in_range(link.a, n_core_) || !in_range(link.b, n_core_) || link.a == link.b) {
      throw std::invalid_argument("Topology: bad core link endpoints");
    }
    connect({NodeKind::kCore, link.a}, {NodeKind::kCore, link.b});
    core_adjacency_[link.a].push_back(link.b);
    core_adjacency_[link.b].push_back(link.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  for (auto& adj : core_adjacency_) std::sort(adj.begin(), adj.end());

  for (int u = 0; u < n_onu_; ++u) hosting_.push_back({NodeKind::kOnu, u});
  for (int l = 0; l < n_olt_; ++l) hosting_.push_back({NodeKind::kOlt, l});
  for (int m = 0; m < n_core_; ++m) hosting_.push_back({NodeKind::kCore, m});

  // Directed arc tables: both directions of every adjacency edge, ordered
  // by (from, to).
  arc_lookup_.assign(num_nodes(), std::vector<int>(num_nodes(), -1));
  hosting_arc_lookup_.assign(num_nodes(), std::vector<int>(num_nodes(), -1));
  for (int id = 0; id < num_nodes(); ++id) {
    NodeRef from = node_of_uid(id);
    for (NodeRef to : adjacency_[id]) {
      if (arc_lookup_[id][uid(to)] >= 0) continue;  // parallel edges collapse
      arc_lookup_[id][uid(to)] = static_cast<int>(arcs_all_.size());
      arcs_all_.push_back({from, to});
      if (is_hosting_kind(from.kind) && is_hosting_kind(to.kind)) {
        hosting_arc_lookup_[id][uid(to)] = static_cast<int>(arcs_hosting_.size());
        arcs_hosting_.push_back({from, to});
      }
    }
  }
  for (int m = 0; m < n_core_; ++m) {
    for (int n : core_adjacency_[m]) {
      arcs_core_.push_back({{NodeKind::kCore, m}, {NodeKind::kCore, n}});
      for (std::size_t k = 0; k < core_links_.size(); ++k) {
        const CoreLink& link = core_links_[k];
        if ((link.a == m && link.b == n) || (link.a == n && link.b == m)) {
          core_arc_link_.push_back(static_cast<int>(k));
          break;
        }
      }
    }
  }
}

int Topology::count(NodeKind kind) const {
  switch (kind) {
    case NodeKind::kRrh: return n_rrh_;
    case NodeKind::kOnu: return n_onu_;
    case NodeKind::kOlt: return n_olt_;
    case NodeKind::kCore: return n_core_;
  }
  return 0;
}

std::vector<int> Topology::rrhs_under(NodeRef node) const {
  std::vector<int> out;
  switch (node.kind) {
    case NodeKind::kRrh:
      out.push_back(node.index);
      break;
    case NodeKind::kOnu:
      if (rrh_of_onu_[node.index] >= 0) out.push_back(rrh_of_onu_[node.index]);
      break;
    case NodeKind::kOlt:
      for (int u : onus_of_olt_[node.index])
        if (rrh_of_onu_[u] >= 0) out.push_back(rrh_of_onu_[u]);
      break;
    case NodeKind::kCore:
      for (int l : olts_of_core_[node.index])
        for (int u : onus_of_olt_[l])
          if (rrh_of_onu_[u] >= 0) out.push_back(rrh_of_onu_[u]);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Topology::uid(NodeRef node) const {
  switch (node.kind) {
    case NodeKind::kRrh: return node.index;
    case NodeKind::kOnu: return n_rrh_ + node.index;
    case NodeKind::kOlt: return n_rrh_ + n_onu_ + node.index;
    case NodeKind::kCore: return n_rrh_ + n_onu_ + n_olt_ + node.index;
  }
  return -1;
}

NodeRef Topology::node_of_uid(int uid) const {
  if (uid < n_rrh_) return {NodeKind::kRrh, uid};
  uid -= n_rrh_;
  if (uid < n_onu_) return {NodeKind::kOnu, uid};
  uid -= n_onu_;
  if (uid < n_olt_) return {NodeKind::kOlt, uid};
  return {NodeKind::kCore, uid - n_olt_};
}

const std::vector<NodeRef>& Topology::neighbors(NodeRef node) const {
  return adjacency_[uid(node)];
}

const std::vector<int>& Topology::core_neighbors(int core) const {
  return core_adjacency_[core];
}

int Topology::hosting_index(NodeRef node) const {
  switch (node.kind) {
    case NodeKind::kOnu: return node.index;
    case NodeKind::kOlt: return n_onu_ + node.index;
    case NodeKind::kCore: return n_onu_ + n_olt_ + node.index;
    default: return -1;
  }
}

int Topology::arc_index(NodeRef from, NodeRef to) const {
  return arc_lookup_[uid(from)][uid(to)];
}

int Topology::hosting_arc_index(NodeRef from, NodeRef to) const {
  return hosting_arc_lookup_[uid(from)][uid(to)];
}

int Topology::core_arc_index(int m, int n) const {
  for (std::size_t k = 0; k < arcs_core_.size(); ++k) {
    if (arcs_core_[k].from.index == m && arcs_core_[k].to.index == n)
      return static_cast<int>(k);
  }
  return -1;
}

const CoreLink& Topology::core_arc_link(int core_arc) const {
  return core_links_[core_arc_link_[core_arc]];
}

bool Topology::is_downstream(NodeRef from, NodeRef to) const {
  if (from.kind == NodeKind::kCore) return true;  // core mesh or core->OLT
  if (from.kind == NodeKind::kOlt) return to.kind == NodeKind::kOnu;
  if (from.kind == NodeKind::kOnu) return to.kind == NodeKind::kRrh;
  return false;
}

std::vector<NodeRef> Topology::bfs_path(NodeRef x, NodeRef y,
                                        bool downstream_only) const {
  const int n = num_nodes();
  std::vector<int> dist(n, -1);
  std::deque<int> queue;
  dist[uid(y)] = 0;
  queue.push_back(uid(y));
  // Distances to y over reversed arcs, so the forward walk from x can pick
  // the smallest admissible next hop.
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    NodeRef cur_node = node_of_uid(cur);
    for (NodeRef next : adjacency_[cur]) {
      if (downstream_only && !is_downstream(next, cur_node)) continue;
      int nid = uid(next);
      if (dist[nid] < 0) {
        dist[nid] = dist[cur] + 1;
        queue.push_back(nid);
      }
    }
  }
  if (dist[uid(x)] < 0) return {};
  std::vector<NodeRef> path{x};
  NodeRef cur = x;
  while (cur != y) {
    int d = dist[uid(cur)];
    NodeRef best{};
    bool found = false;
    for (NodeRef next : adjacency_[uid(cur)]) {
      if (downstream_only && !is_downstream(cur, next)) continue;
      if (dist[uid(next)] == d - 1 && (!found || next < best)) {
        best = next;
        found = true;
      }
    }
    cur = best;
    path.push_back(cur);
  }
  return path;
}

std::vector<NodeRef> Topology::shortest_path(NodeRef x, NodeRef y) const {
  std::vector<NodeRef> path = bfs_path(x, y, false);
  if (path.empty()) {
    throw std::runtime_error("shortest_path: no path between " + to_string(x) +
                             " and " + to_string(y));
  }
  return path;
}

std::optional<std::vector<NodeRef>> Topology::downstream_path(NodeRef x,
                                                              NodeRef y) const {
  if (x == y) return std::vector<NodeRef>{x};
  std::vector<NodeRef> path = bfs_path(x, y, true);
  if (path.empty()) return std::nullopt;
  return path;
}

std::vector<TopologyViolation> Topology::validate() const {
  std::vector<TopologyViolation> out;
  for (int r = 0; r < n_rrh_; ++r) {
    const auto& adj = adjacency_[uid({NodeKind::kRrh, r})];
    if (adj.size() != 1 || adj[0].kind != NodeKind::kOnu) {
      out.push_back({"RRH" + std::to_string(r) + " must connect to exactly one ONU"});
    }
  }
  for (int u = 0; u < n_onu_; ++u) {
    int olts = 0;
    for (NodeRef nb : adjacency_[uid({NodeKind::kOnu, u})]) {
      if (nb.kind == NodeKind::kOlt) ++olts;
    }
    if (olts != 1) {
      out.push_back({"ONU" + std::to_string(u) + " must attach to exactly one OLT"});
    }
  }
  for (int l = 0; l < n_olt_; ++l) {
    int cores = 0;
    for (NodeRef nb : adjacency_[uid({NodeKind::kOlt, l})]) {
      if (nb.kind == NodeKind::kCore) ++cores;
    }
    if (cores != 1) {
      out.push_back({"OLT" + std::to_string(l) + " must attach to exactly one core node"});
    }
  }
  for (const CoreLink& link : core_links_) {
    if (!(link.distance_km > 0.0)) {
      out.push_back({"core link (" + std::to_string(link.a) + "," +
                     std::to_string(link.b) + ") must have positive distance"});
    }
    if (!(link.span_km > 0.0)) {
      out.push_back({"core link (" + std::to_string(link.a) + "," +
                     std::to_string(link.b) + ") must have positive span"});
    }
    if (link.regenerators < 0) {
      out.push_back({"core link (" + std::to_string(link.a) + "," +
                     std::to_string(link.b) + ") has negative regenerator count"});
    }
  }
  // Core connectivity by BFS over the core layer.
  if (n_core_ > 1) {
    std::vector<bool> seen(n_core_, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      int m = queue.front();
      queue.pop_front();
      for (int n : core_adjacency_[m]) {
        if (!seen[n]) {
          seen[n] = true;
          queue.push_back(n);
        }
      }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      out.push_back({"core graph is not connected"});
    }
  }
  return out;
}

Topology build_tree_topology(int n_core, int olts_per_core, int onus_per_olt,
                             double core_link_km, double span_km,
                             int regenerators) {
  if (!(core_link_km > 0.0)) {
    throw std::invalid_argument("build_tree_topology: core_link_km must be positive");
  }
  if (n_core < 1 || olts_per_core < 1 || onus_per_olt < 1) {
    throw std::invalid_argument("build_tree_topology: fan-outs must be at least 1");
  }
  const int n_olt = n_core * olts_per_core;
  const int n_onu = n_olt * onus_per_olt;
  std::vector<AccessEdge> rrh_onu, onu_olt, olt_core;
  for (int r = 0; r < n_onu; ++r) rrh_onu.push_back({r, r});
  for (int u = 0; u < n_onu; ++u) onu_olt.push_back({u, u / onus_per_olt});
  for (int l = 0; l < n_olt; ++l) olt_core.push_back({l, l / olts_per_core});
  std::vector<CoreLink> links;
  for (int a = 0; a < n_core; ++a) {
    for (int b = a + 1; b < n_core; ++b) {
      links.push_back({a, b, core_link_km, span_km, regenerators});
    }
  }
  return Topology(n_core, n_olt, n_onu, n_onu, std::move(rrh_onu),
                  std::move(onu_olt), std::move(olt_core), std::move(links));
}

Topology build_paper_topology(double core_link_km) {
  return build_tree_topology(3, 2, 3, core_link_km);
}

Topology build_reduced_topology(double core_link_km) {
  return build_tree_topology(2, 1, 2, core_link_km);
}

}  // namespace eevc
