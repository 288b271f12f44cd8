#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arborist/graph.hpp"
#include "arborist/second_best.hpp"

// Brute-force reference implementations. Deliberately naive and kept free of
// the contraction machinery so they can referee it.

namespace arborist::oracle {

struct EnumeratedTree {
  double weight = 0.0;
  // parent[i] is the (global-id) parent of g.nodes()[i + 1]; on base graphs
  // that is simply the parent of node i + 1.
  std::vector<NodeId> parent;

  friend bool operator==(const EnumeratedTree&, const EnumeratedTree&) = default;
};

// Every acyclic full parent assignment of a base graph (dep_mode: with
// exactly one root child), sorted by (weight desc, parent lex asc). Guarded:
// throws too_large beyond 10 non-root nodes or a 1e9 raw assignment space.
std::vector<EnumeratedTree> enumerate_all(const Graph& g, bool dep_mode);

// Theorem-1 baseline: decode the best tree, then re-decode with each of its
// edges deleted and keep the best deletion (ties by smaller edge id).
std::pair<Arborescence, SwapCandidate> naive_next(const Graph& g);

// Nullopt when the decoded enumeration matches the oracle's (weights as a
// sequence, trees as a set); otherwise a message naming the first divergence.
std::optional<std::string> compare_enumerations(const std::vector<Arborescence>& decoded,
                                                const std::vector<EnumeratedTree>& oracle);

}  // namespace arborist::oracle
