#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arborist/graph.hpp"

namespace arborist {

// One incoming edge chosen per non-root node (max weight, ties by smallest
// base edge id).
struct GreedyChoice {
  NodeId node = -1;
  NodeId parent = -1;
  EdgeId edge = kNoEdge;
  double weight = 0.0;
};

struct GreedyAssignment {
  std::vector<GreedyChoice> choices;  // by node id, ascending
  double total_weight = 0.0;

  // Valid only when the assignment is acyclic.
  Arborescence to_arborescence() const;
  std::optional<GreedyChoice> choice_for(NodeId v) const;
};

// Throws no_incoming_edge naming the first non-root node with an empty row.
GreedyAssignment greedy_graph(const Graph& g);

// Some cycle among the assigned edges, or nullopt. Deterministic: the cycle
// whose smallest member is minimal, listed so that cycle[0] is that member
// and the assigned edges run cycle[t-1] -> cycle[t] (wrapping).
std::optional<std::vector<NodeId>> find_critical_cycle(const GreedyAssignment& a);

// One contraction step: the cycle C, the fresh mega-node, the per-entry cycle
// weights, and the provenance of every contracted edge incident to the
// mega-node (its endpoints one level down).
struct CycleRecord {
  std::vector<NodeId> cycle;
  NodeId mega_node = -1;
  std::vector<double> entry_weight;  // parallel to cycle: cycle weight entering at cycle[t]
  std::vector<std::pair<NodeId, NodeId>> in_prev_head;   // tail i -> j with pi(i->c) = (i, j)
  std::vector<std::pair<NodeId, NodeId>> out_prev_tail;  // head x -> y with pi(c->x) = (y, x)

  double entry_weight_of(NodeId j) const;
  std::optional<NodeId> prev_head_of_in(NodeId tail) const;
  std::optional<NodeId> prev_tail_of_out(NodeId head) const;
};

// Contracts g by the cycle (which must exist edge-wise in g; throws
// not_a_cycle otherwise). Incoming candidates are reweighted by the entry
// weight, parallel candidates into the mega-node keep only the best per tail
// (ties by smallest base edge id), outgoing candidates keep their weight.
std::pair<Graph, CycleRecord> contract(const Graph& g, std::span<const NodeId> cycle);

// Expands the mega-node of rec inside d back into the cycle, broken at the
// entry node. g is the graph contract() was called on. The result's weight is
// recomputed from g's edges; the contraction weighting makes it equal d's.
Arborescence stitch(const Graph& g, const Arborescence& d, const CycleRecord& rec);

// Maximum-weight arborescence of g; with dependency=true, maximum-weight
// dependency tree (exactly one root child). Throws no_tree.
Arborescence best_arborescence(const Graph& g, bool dependency);

// Number of contract() calls since the last reset. The integrated
// second-best decoder is expected to contract exactly as often as the plain
// one-best decoder; tests pin that down.
std::uint64_t contraction_count();
void reset_contraction_count();

}  // namespace arborist
