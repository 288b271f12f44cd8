#pragma once

#include <vector>

#include "arborist/graph.hpp"

namespace arborist {

// Backdoor for the contraction code: builds graphs derived from an existing
// one (shared base edge table, new active node set) slot by slot.
class GraphSurgeon {
 public:
  // Empty dense graph over `nodes` (ascending, nodes[0] == root), sharing
  // src's base edge table. `next_fresh` is the next unused mega-node id.
  static Graph derive(const Graph& src, std::vector<NodeId> nodes, NodeId next_fresh);

  enum class Offer { rejected, runner_up, best };

  // Ranks the candidate into the slot's top two by (weight desc, base id
  // asc). `best` means it displaced (or filled) the slot's representative.
  static Offer offer_slot(Graph& g, std::int32_t local_tail, std::int32_t local_head, double w,
                          EdgeId id);
};

}  // namespace arborist
