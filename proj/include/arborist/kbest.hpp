#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "arborist/graph.hpp"
#include "arborist/second_best.hpp"

namespace arborist {

// Decoder plugged into the enumeration loop. The default is the integrated
// next_best; the benchmark swaps in the naive delete-and-redecode baseline.
using NextFn = std::function<std::pair<Arborescence, SwapCandidate>(const Graph&)>;

// Lazily yields arborescences of a base graph in non-increasing weight order.
// Subproblems live on a priority queue as constraint sets over original
// edges; each pop splits its subspace into the exclusion and inclusion parts.
// With dependency=true only trees with exactly one root child are yielded and
// the root-edge partition of the search space is used.
class KBestStream {
 public:
  KBestStream(Graph base, bool dependency);
  KBestStream(Graph base, bool dependency, NextFn decode);

  // First call decodes the best tree and throws no_tree when none exists;
  // afterwards returns nullopt once the space is exhausted.
  std::optional<Arborescence> next_tree();

  std::int64_t yielded() const { return yielded_; }

 private:
  enum class BranchKind : std::uint8_t { swap_candidate, root_edge_exclusion };

  struct QueueItem {
    double priority = 0.0;  // weight of this subproblem's best unreported tree
    EdgeId edge = kNoEdge;
    ConstraintSet constraints;
    BranchKind kind = BranchKind::swap_candidate;
    std::uint64_t seq = 0;
  };

  struct ItemOrder {
    bool operator()(const QueueItem& a, const QueueItem& b) const {
      if (a.priority != b.priority) return a.priority < b.priority;
      return a.seq > b.seq;  // (priority desc, insertion asc)
    }
  };

  Arborescence start();
  Arborescence pop_swap(const QueueItem& item);
  Arborescence pop_root_exclusion(const QueueItem& item);
  void push_swap(const ConstraintSet& c, const SwapCandidate& cand);
  void push_root_exclusion_of(const ConstraintSet& c, const Arborescence& tree);

  Graph base_;
  bool dep_;
  NextFn decode_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, ItemOrder> queue_;
  std::uint64_t seq_ = 0;
  std::int64_t yielded_ = 0;
  bool started_ = false;
};

// The k highest-weight arborescences (dependency trees) of g, fewer when the
// graph has fewer. k must be >= 1. Throws no_tree when g has none.
std::vector<Arborescence> kbest(const Graph& g, std::int64_t k);
std::vector<Arborescence> kbest_dep(const Graph& g, std::int64_t k);

}  // namespace arborist
