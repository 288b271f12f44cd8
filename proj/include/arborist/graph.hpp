#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arborist/error.hpp"

namespace arborist {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr NodeId kRoot = 0;
inline constexpr EdgeId kNoEdge = -1;

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Included/excluded original edges plus the root-constraint flag. Subproblems
// of the K-best search are carried around as constraint sets over the base
// graph rather than materialized subgraphs.
struct ConstraintSet {
  std::vector<EdgeId> included;  // sorted, unique
  std::vector<EdgeId> excluded;  // sorted, unique
  bool dep_mode = false;

  ConstraintSet with_included(EdgeId e) const;
  ConstraintSet with_excluded(EdgeId e) const;
  bool disjoint() const;
};

// Rooted dense weighted digraph. Node 0 is always the root. Base graphs use
// node ids 0..node_count-1; contraction introduces fresh mega-node ids above
// that range, so a contracted graph's active node set is a sparse subset of
// 0..max id. Storage is dense per active node: one row of incoming candidates
// per head, each slot carrying the current weight and the id of the base edge
// it descends from. Immutable after construction.
class Graph {
 public:
  // Validates and builds a base graph. Edge ids are 0..edges.size()-1 in
  // input order.
  static Graph build(NodeId node_count, std::span<const Edge> edges);

  NodeId root() const { return kRoot; }
  std::int32_t node_count() const { return static_cast<std::int32_t>(nodes_.size()); }
  std::span<const NodeId> nodes() const { return nodes_; }
  bool has_node(NodeId v) const { return local_of(v) >= 0; }
  NodeId max_node_id() const { return static_cast<NodeId>(local_of_.size()) - 1; }
  // First id never used by any node of this graph; contraction allocates from here.
  NodeId fresh_node_id() const { return next_fresh_; }

  // Original edge table shared by every graph derived from the same base.
  const Edge& base_edge(EdgeId id) const { return (*base_edges_)[static_cast<std::size_t>(id)]; }
  std::int32_t base_edge_count() const { return static_cast<std::int32_t>(base_edges_->size()); }

  // Current (possibly reweighted) edge between two active nodes.
  std::optional<double> weight(NodeId tail, NodeId head) const;
  // Base edge id behind the (tail, head) slot, if present.
  std::optional<EdgeId> edge_id(NodeId tail, NodeId head) const;
  bool has_edge(NodeId tail, NodeId head) const { return edge_id(tail, head).has_value(); }
  std::int32_t edge_count() const;

  // Runner-up parallel candidate of a slot. Contraction funnels several
  // original edges into one (tail, head) pair; the best one represents the
  // slot, but the second stays visible because a second-best tree may swap a
  // slot's best candidate for its runner-up. Only the top two can ever
  // matter, and that property survives further contractions since a
  // contraction shifts all candidates of a slot by the same entry weight.
  std::optional<double> second_weight(NodeId tail, NodeId head) const;
  std::optional<EdgeId> second_edge_id(NodeId tail, NodeId head) const;

  // Copy of this graph with the (tail, head) slot removed. On contracted
  // graphs this removes every parallel original edge with those endpoints,
  // since slots always keep only the best representative.
  Graph without_pair(NodeId tail, NodeId head) const;

  // Local-index view used by the decoders and kernels. Row j lists the
  // incoming candidates of node_at(j) by tail slot.
  std::int32_t local_of(NodeId v) const {
    return v >= 0 && v < static_cast<NodeId>(local_of_.size()) ? local_of_[v] : -1;
  }
  NodeId node_at(std::int32_t local) const { return nodes_[static_cast<std::size_t>(local)]; }
  const double* in_weights_row(std::int32_t local_head) const {
    return in_w_.data() + static_cast<std::size_t>(local_head) * nodes_.size();
  }
  const EdgeId* in_ids_row(std::int32_t local_head) const {
    return in_id_.data() + static_cast<std::size_t>(local_head) * nodes_.size();
  }
  const double* in_weights2_row(std::int32_t local_head) const {
    return in_w2_.data() + static_cast<std::size_t>(local_head) * nodes_.size();
  }
  const EdgeId* in_ids2_row(std::int32_t local_head) const {
    return in_id2_.data() + static_cast<std::size_t>(local_head) * nodes_.size();
  }

  friend Graph apply_constraints(const Graph& g, const ConstraintSet& c);
  friend class GraphSurgeon;

 private:
  Graph() = default;

  void set_slot(std::int32_t local_tail, std::int32_t local_head, double w, EdgeId id);
  void clear_slot(std::int32_t local_tail, std::int32_t local_head);
  void init_dense(std::vector<NodeId> nodes, NodeId next_fresh);

  std::shared_ptr<const std::vector<Edge>> base_edges_;
  std::vector<NodeId> nodes_;        // active ids, ascending; nodes_[0] == root
  std::vector<std::int32_t> local_of_;  // id -> local index, -1 if inactive
  std::vector<double> in_w_;         // [head_local * stride + tail_local], slot best
  std::vector<EdgeId> in_id_;
  std::vector<double> in_w2_;        // slot runner-up (parallel candidate)
  std::vector<EdgeId> in_id2_;
  NodeId next_fresh_ = 0;
};

// Spanning arborescence: one parent per non-root node plus the total weight.
struct Arborescence {
  std::vector<NodeId> nodes;   // non-root node ids, ascending
  std::vector<NodeId> parent;  // parent[k] is the parent of nodes[k]
  double weight = 0.0;

  NodeId parent_of(NodeId v) const;
  bool contains_edge(NodeId tail, NodeId head) const;
  std::int32_t root_child_count() const;
  std::vector<std::pair<NodeId, NodeId>> parent_pairs() const;

  friend bool operator==(const Arborescence& a, const Arborescence& b) {
    return a.nodes == b.nodes && a.parent == b.parent;
  }
};

// build_graph counterpart taking (tail, head, weight) triples.
Graph build_graph(NodeId node_count, std::span<const Edge> edges);

// Applies exclusions, then per included edge removes the competing incoming
// edges (and, in dep_mode, the competing root edges of an included root edge).
// Surviving slots keep their base edge ids. Base graphs only.
Graph apply_constraints(const Graph& g, const ConstraintSet& c);

// Structural validity of a full parent assignment against g: every assigned
// edge exists and no cycles. The dependency variant additionally requires
// exactly one root child.
bool is_valid_tree(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent);
bool is_dependency_tree(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent);
bool is_valid_tree(const Graph& g, const Arborescence& d);
bool is_dependency_tree(const Graph& g, const Arborescence& d);

// Sum of the assigned edges' weights in node order. Throws missing_edge.
double tree_weight(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent);

}  // namespace arborist
