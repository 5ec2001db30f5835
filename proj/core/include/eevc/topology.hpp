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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eevc {

/// Node layers of the metro network: radio heads at the leaves, a GPON
/// access tree (ONU, OLT) in the middle and a meshed core on top.
enum class NodeKind : std::uint8_t { kRrh = 0, kOnu = 1, kOlt = 2, kCore = 3 };

const char* to_cstring(NodeKind kind);

/// A node is identified by its kind and its index within that kind.
struct NodeRef {
  NodeKind kind = NodeKind::kRrh;
  int index = -1;

  friend bool operator==(const NodeRef& a, const NodeRef& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator!=(const NodeRef& a, const NodeRef& b) { return !(a == b); }
  // Lexicographic (kind, index); used for deterministic tie-breaking.
  friend bool operator<(const NodeRef& a, const NodeRef& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.index < b.index;
  }
};

std::string to_string(NodeRef node);

/// Geometry of one bidirectional core fiber link.
struct CoreLink {
  int a = 0;  // core index, a < b
  int b = 0;
  double distance_km = 0.0;
  double span_km = 80.0;  // max distance between inline amplifiers
  int regenerators = 0;   // regenerators per wavelength channel on this link
};

/// Directed arc between two adjacent nodes.
struct Arc {
  NodeRef from;
  NodeRef to;
};

struct TopologyViolation {
  std::string what;
};

/// Number of inline amplifiers on a link: one per started span minus one,
/// plus the two terminal amplifiers. Throws std::invalid_argument on
/// non-positive input.
int edfa_count(double distance_km, double span_km);

/// Undirected access-layer edge between node indices of two fixed kinds.
struct AccessEdge {
  int child = 0;   // RRH index (RRH-ONU), ONU index (ONU-OLT), OLT index (OLT-core)
  int parent = 0;  // ONU index, OLT index, core index respectively
};

/// Three-layer access/core network. Immutable once built; all queries are
/// const and safe to call concurrently.
class Topology {
 public:
  /// General constructor from explicit edge lists; the result may violate
  /// the structural invariants (see validate()).
  Topology(int n_core, int n_olt, int n_onu, int n_rrh,
           std::vector<AccessEdge> rrh_onu, std::vector<AccessEdge> onu_olt,
           std::vector<AccessEdge> olt_core, std::vector<CoreLink> core_links);

  int num_core() const { return n_core_; }
  int num_olt() const { return n_olt_; }
  int num_onu() const { return n_onu_; }
  int num_rrh() const { return n_rrh_; }
  int num_hosting() const { return n_onu_ + n_olt_ + n_core_; }
  int num_nodes() const { return n_rrh_ + n_onu_ + n_olt_ + n_core_; }

  int count(NodeKind kind) const;

  // Tree structure. Every RRH hangs off one ONU, every ONU off one OLT,
  // every OLT off one core node.
  int onu_of_rrh(int rrh) const { return onu_of_rrh_[rrh]; }
  int olt_of_onu(int onu) const { return olt_of_onu_[onu]; }
  int core_of_olt(int olt) const { return core_of_olt_[olt]; }
  /// RRH attached to an ONU; -1 when the ONU has no RRH.
  int rrh_of_onu(int onu) const { return rrh_of_onu_[onu]; }
  const std::vector<int>& onus_of_olt(int olt) const { return onus_of_olt_[olt]; }
  const std::vector<int>& olts_of_core(int core) const { return olts_of_core_[core]; }
  /// RRH indices in the subtree under a node (the RRH itself for kRrh).
  std::vector<int> rrhs_under(NodeRef node) const;

  const std::vector<CoreLink>& core_links() const { return core_links_; }

  // Dense node ids, grouped by kind in enum order.
  int uid(NodeRef node) const;
  NodeRef node_of_uid(int uid) const;

  /// Neighbors in the full graph, sorted by (kind, index).
  const std::vector<NodeRef>& neighbors(NodeRef node) const;
  /// Core-layer neighbor indices of core node m, sorted.
  const std::vector<int>& core_neighbors(int core) const;

  // Hosting nodes (ONU, OLT, core) in (kind, index) order.
  const std::vector<NodeRef>& hosting_nodes() const { return hosting_; }
  int hosting_index(NodeRef node) const;
  NodeRef hosting_node(int h) const { return hosting_[h]; }
  static bool is_hosting_kind(NodeKind kind) { return kind != NodeKind::kRrh; }

  // Deterministic directed arc tables.
  const std::vector<Arc>& arcs() const { return arcs_all_; }
  /// Arcs with both endpoints in the hosting set.
  const std::vector<Arc>& hosting_arcs() const { return arcs_hosting_; }
  /// Directed core-core arcs (physical WDM links).
  const std::vector<Arc>& core_arcs() const { return arcs_core_; }
  /// Index into arcs() for (from, to); -1 if not adjacent.
  int arc_index(NodeRef from, NodeRef to) const;
  /// Index into hosting_arcs() for (from, to); -1 if absent.
  int hosting_arc_index(NodeRef from, NodeRef to) const;
  /// Index into core_arcs() for core pair (m, n); -1 if not adjacent.
  int core_arc_index(int m, int n) const;
  /// Geometry of the core link under a core arc.
  const CoreLink& core_arc_link(int core_arc) const;

  /// True if the arc may carry download traffic (core mesh or towards the
  /// leaves). Upstream GPON arcs never carry download flows.
  bool is_downstream(NodeRef from, NodeRef to) const;

  /// Minimum-hop path from x to y, inclusive. Ties are broken towards the
  /// smallest (kind, index) next node. Throws std::runtime_error if there
  /// is no path.
  std::vector<NodeRef> shortest_path(NodeRef x, NodeRef y) const;
  /// Same, restricted to downstream arcs; empty optional if unreachable.
  std::optional<std::vector<NodeRef>> downstream_path(NodeRef x, NodeRef y) const;

  /// Structural invariant check; returns one entry per violated invariant.
  std::vector<TopologyViolation> validate() const;

 private:
  std::vector<NodeRef> bfs_path(NodeRef x, NodeRef y, bool downstream_only) const;

  int n_core_, n_olt_, n_onu_, n_rrh_;
  std::vector<int> onu_of_rrh_, olt_of_onu_, core_of_olt_, rrh_of_onu_;
  std::vector<std::vector<int>> onus_of_olt_, olts_of_core_;
  std::vector<CoreLink> core_links_;
  std::vector<std::vector<NodeRef>> adjacency_;       // by uid
  std::vector<std::vector<int>> core_adjacency_;      // by core index
  std::vector<NodeRef> hosting_;
  std::vector<Arc> arcs_all_, arcs_hosting_, arcs_core_;
  std::vector<std::vector<int>> arc_lookup_;          // uid x uid -> arc id
  std::vector<std::vector<int>> hosting_arc_lookup_;  // uid x uid -> hosting arc id
  std::vector<int> core_arc_link_;                    // core arc -> core_links_ row
};

/// Tree topology with a fully meshed core and uniform fan-out, one RRH per
/// ONU. All core links share the same geometry.
Topology build_tree_topology(int n_core, int olts_per_core, int onus_per_olt,
                             double core_link_km, double span_km = 80.0,
                             int regenerators = 0);

/// The evaluation network: 3 meshed core nodes, 2 OLTs each, 3 ONUs per
/// OLT, one RRH per ONU.
Topology build_paper_topology(double core_link_km = 400.0);

/// The small exact-solver instance: 2 core nodes, 1 OLT each, 2 ONUs per
/// OLT, one RRH per ONU.
Topology build_reduced_topology(double core_link_km = 400.0);

}  // namespace eevc
