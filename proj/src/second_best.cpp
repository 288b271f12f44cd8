#include "arborist/second_best.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "arborist/kernels.hpp"
#include "arborist/mst.hpp"

namespace arborist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-local-index scratch for one (graph, tree) pair.
struct TreeView {
  std::vector<std::int32_t> parent;  // local parent index, -1 for root

  TreeView(const Graph& g, const Arborescence& d) : parent(static_cast<std::size_t>(g.node_count()), -1) {
    for (std::size_t k = 0; k < d.nodes.size(); ++k) {
      const std::int32_t lc = g.local_of(d.nodes[k]);
      const std::int32_t lp = g.local_of(d.parent[k]);
      if (lc < 0 || lp < 0)
        throw_error(Errc::invalid_argument, "arborescence does not match the graph");
      parent[lc] = lp;
    }
  }

  // allow[t] = 1 iff local node t lies outside the subtree rooted at j.
  std::vector<std::uint8_t> outside_subtree(std::int32_t j) const {
    const std::int32_t n = static_cast<std::int32_t>(parent.size());
    std::vector<std::uint8_t> cls(static_cast<std::size_t>(n), 0);  // 0 unknown, 1 inside, 2 outside
    cls[0] = 2;
    cls[j] = 1;
    std::vector<std::int32_t> path;
    for (std::int32_t v = 1; v < n; ++v) {
      if (cls[v] != 0) continue;
      path.clear();
      std::int32_t u = v;
      while (cls[u] == 0) {
        path.push_back(u);
        u = parent[u];
      }
      for (std::int32_t x : path) cls[x] = cls[u];
    }
    std::vector<std::uint8_t> allow(static_cast<std::size_t>(n));
    for (std::int32_t v = 0; v < n; ++v) allow[v] = cls[v] == 2 ? 1 : 0;
    return allow;
  }
};

// Best blue alternative for the tree edge (tail -> head); empty when none.
// Considers every other tail's slot representative plus the tree edge's own
// slot runner-up (a parallel original with the same endpoints swaps in
// without changing the tree shape).
kernels::MaxLoc best_alternative(const Graph& g, const TreeView& view, NodeId tail, NodeId head,
                                 double target_weight) {
  const std::int32_t n = g.node_count();
  const std::int32_t lh = g.local_of(head);
  const std::int32_t lt = g.local_of(tail);
  std::vector<std::uint8_t> allow = view.outside_subtree(lh);
  allow[lt] = 0;
  const double* row_w = g.in_weights_row(lh);
  for (std::int32_t t = 0; t < n; ++t)
    if (allow[t] && row_w[t] > target_weight) allow[t] = 0;
  kernels::MaxLoc best = kernels::row_argmax_masked(row_w, g.in_ids_row(lh), allow.data(), n);

  const double own2_w = g.in_weights2_row(lh)[lt];
  const EdgeId own2_id = g.in_ids2_row(lh)[lt];
  if (own2_id != kernels::kAbsentId && own2_w <= target_weight) {
    const EdgeId best_id = best.empty() ? kernels::kAbsentId : g.in_ids_row(lh)[best.index];
    if (own2_w > best.value || (own2_w == best.value && own2_id < best_id)) {
      best.value = own2_w;
      best.index = lt;
    }
  }
  return best;
}

void require_tree_edge(const Graph& g, const Arborescence& d, NodeId tail, NodeId head) {
  if (!d.contains_edge(tail, head) || !g.has_edge(tail, head))
    throw_error(Errc::invalid_argument, "edge " + std::to_string(tail) + "->" +
                                            std::to_string(head) + " is not a tree edge of d");
}

}  // namespace

BlueSet blue_edges(const Graph& g, const Arborescence& d, NodeId tail, NodeId head) {
  require_tree_edge(g, d, tail, head);
  BlueSet out;
  out.tail = tail;
  out.head = head;
  out.edge = *g.edge_id(tail, head);
  const double target = *g.weight(tail, head);

  TreeView view(g, d);
  const std::int32_t n = g.node_count();
  const std::int32_t lh = g.local_of(head);
  const std::int32_t lt = g.local_of(tail);
  std::vector<std::uint8_t> allow = view.outside_subtree(lh);
  const double* row_w = g.in_weights_row(lh);
  const EdgeId* row_id = g.in_ids_row(lh);
  for (std::int32_t t = 0; t < n; ++t) {
    if (!allow[t] || t == lt) continue;
    if (row_id[t] == kernels::kAbsentId || row_w[t] > target) continue;
    out.alternatives.push_back(row_id[t]);
  }
  // parallel runner-up of the tree edge's own slot (contracted graphs only)
  if (g.in_ids2_row(lh)[lt] != kernels::kAbsentId && g.in_weights2_row(lh)[lt] <= target)
    out.alternatives.push_back(g.in_ids2_row(lh)[lt]);
  std::sort(out.alternatives.begin(), out.alternatives.end());
  return out;
}

double swap_cost(const Graph& g, const Arborescence& d, NodeId tail, NodeId head) {
  require_tree_edge(g, d, tail, head);
  TreeView view(g, d);
  const double target = *g.weight(tail, head);
  kernels::MaxLoc alt = best_alternative(g, view, tail, head, target);
  return alt.empty() ? kInf : target - alt.value;
}

namespace {

// (weight desc, edge id asc); an absent candidate loses to any present one.
SwapCandidate better_of(const SwapCandidate& a, const SwapCandidate& b) {
  if (!a.present) return b;
  if (!b.present) return a;
  if (a.weight != b.weight) return a.weight > b.weight ? a : b;
  return a.edge <= b.edge ? a : b;
}

std::pair<Arborescence, SwapCandidate> next_impl(const Graph& g) {
  GreedyAssignment a = greedy_graph(g);

  if (auto cyc = find_critical_cycle(a)) {
    auto [g2, rec] = contract(g, *cyc);
    auto [d2, deeper] = next_impl(g2);
    Arborescence d = stitch(g, d2, rec);
    TreeView view(g, d);

    // Candidate among the cycle edges that survived the stitch: the one with
    // the cheapest blue swap. The entry node's cycle edge was dropped.
    const std::size_t m = rec.cycle.size();
    SwapCandidate local;
    double local_cost = kInf;
    for (std::size_t t = 0; t < m; ++t) {
      const NodeId head = rec.cycle[t];
      const NodeId tail = rec.cycle[(t + m - 1) % m];
      if (!d.contains_edge(tail, head)) continue;
      const double target = *g.weight(tail, head);
      kernels::MaxLoc alt = best_alternative(g, view, tail, head, target);
      if (alt.empty()) continue;
      const double cost = target - alt.value;
      const EdgeId id = *g.edge_id(tail, head);
      if (!local.present || cost < local_cost || (cost == local_cost && id < local.edge)) {
        local.present = true;
        local.edge = id;
        local_cost = cost;
      }
    }
    if (local.present) local.weight = d.weight - local_cost;
    return {std::move(d), better_of(deeper, local)};
  }

  Arborescence d = a.to_arborescence();
  TreeView view(g, d);
  SwapCandidate cand;
  double best_cost = kInf;
  for (const GreedyChoice& c : a.choices) {
    kernels::MaxLoc alt = best_alternative(g, view, c.parent, c.node, c.weight);
    if (alt.empty()) continue;
    const double cost = c.weight - alt.value;
    if (!cand.present || cost < best_cost || (cost == best_cost && c.edge < cand.edge)) {
      cand.present = true;
      cand.edge = c.edge;
      best_cost = cost;
    }
  }
  if (cand.present) cand.weight = d.weight - best_cost;
  return {std::move(d), cand};
}

}  // namespace

std::pair<Arborescence, SwapCandidate> next_best(const Graph& g) {
  try {
    return next_impl(g);
  } catch (const Error& e) {
    if (e.code() == Errc::no_incoming_edge)
      throw_error(Errc::no_tree, std::string("no spanning arborescence: ") + e.what());
    throw;
  }
}

}  // namespace arborist
