#pragma once

#include <utility>
#include <vector>

#include "arborist/graph.hpp"

namespace arborist {

// Alternatives that can replace the tree edge (tail -> head) while keeping a
// valid arborescence: same head, weight at most the target's, emanating from
// outside the head's subtree.
struct BlueSet {
  NodeId tail = -1;
  NodeId head = -1;
  EdgeId edge = kNoEdge;
  std::vector<EdgeId> alternatives;  // base edge ids, ascending
};

// Weight of the second-best tree together with the original edge whose
// deletion realizes it. present == false when the graph has a unique tree.
struct SwapCandidate {
  double weight = 0.0;
  EdgeId edge = kNoEdge;
  bool present = false;
};

// All blue alternatives of the tree edge (tail -> head) of d. The edge must
// be in d.
BlueSet blue_edges(const Graph& g, const Arborescence& d, NodeId tail, NodeId head);

// Minimum weight loss for replacing the tree edge by one blue alternative;
// +infinity when no alternative exists.
double swap_cost(const Graph& g, const Arborescence& d, NodeId tail, NodeId head);

// Integrated decoder: the best arborescence of g plus the best edge to delete
// to reach the second-best one, found along the same contraction sequence.
// Throws no_tree.
std::pair<Arborescence, SwapCandidate> next_best(const Graph& g);

}  // namespace arborist
