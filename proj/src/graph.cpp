#include "arborist/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arborist/kernels.hpp"
#include "graph_internal.hpp"

namespace arborist {

namespace {

std::vector<EdgeId> insert_sorted(std::vector<EdgeId> v, EdgeId e) {
  auto it = std::lower_bound(v.begin(), v.end(), e);
  if (it == v.end() || *it != e) v.insert(it, e);
  return v;
}

}  // namespace

ConstraintSet ConstraintSet::with_included(EdgeId e) const {
  ConstraintSet out = *this;
  out.included = insert_sorted(std::move(out.included), e);
  return out;
}

ConstraintSet ConstraintSet::with_excluded(EdgeId e) const {
  ConstraintSet out = *this;
  out.excluded = insert_sorted(std::move(out.excluded), e);
  return out;
}

bool ConstraintSet::disjoint() const {
  std::size_t a = 0, b = 0;
  while (a < included.size() && b < excluded.size()) {
    if (included[a] == excluded[b]) return false;
    if (included[a] < excluded[b])
      ++a;
    else
      ++b;
  }
  return true;
}

void Graph::init_dense(std::vector<NodeId> nodes, NodeId next_fresh) {
  nodes_ = std::move(nodes);
  next_fresh_ = next_fresh;
  local_of_.assign(static_cast<std::size_t>(nodes_.back()) + 1, -1);
  for (std::size_t k = 0; k < nodes_.size(); ++k) local_of_[nodes_[k]] = static_cast<std::int32_t>(k);
  const std::size_t stride = nodes_.size();
  in_w_.assign(stride * stride, kernels::kAbsent);
  in_id_.assign(stride * stride, kernels::kAbsentId);
  in_w2_.assign(stride * stride, kernels::kAbsent);
  in_id2_.assign(stride * stride, kernels::kAbsentId);
}

void Graph::set_slot(std::int32_t local_tail, std::int32_t local_head, double w, EdgeId id) {
  const std::size_t at = static_cast<std::size_t>(local_head) * nodes_.size() + local_tail;
  in_w_[at] = w;
  in_id_[at] = id;
}

void Graph::clear_slot(std::int32_t local_tail, std::int32_t local_head) {
  const std::size_t at = static_cast<std::size_t>(local_head) * nodes_.size() + local_tail;
  in_w_[at] = kernels::kAbsent;
  in_id_[at] = kernels::kAbsentId;
  in_w2_[at] = kernels::kAbsent;
  in_id2_[at] = kernels::kAbsentId;
}

Graph Graph::build(NodeId node_count, std::span<const Edge> edges) {
  if (node_count < 1) throw_error(Errc::invalid_argument, "node_count must be >= 1");
  Graph g;
  std::vector<NodeId> nodes(static_cast<std::size_t>(node_count));
  for (NodeId v = 0; v < node_count; ++v) nodes[v] = v;
  g.init_dense(std::move(nodes), node_count);

  auto table = std::make_shared<std::vector<Edge>>(edges.begin(), edges.end());
  g.base_edges_ = table;
  for (std::size_t id = 0; id < table->size(); ++id) {
    const Edge& e = (*table)[id];
    if (e.tail < 0 || e.tail >= node_count || e.head < 0 || e.head >= node_count)
      throw_error(Errc::invalid_argument, "edge " + std::to_string(id) + " endpoint out of range");
    if (e.tail == e.head)
      throw_error(Errc::self_loop, "self-loop at node " + std::to_string(e.tail));
    if (e.head == kRoot)
      throw_error(Errc::root_incoming, "edge into the root from " + std::to_string(e.tail));
    if (!std::isfinite(e.weight))
      throw_error(Errc::non_finite_weight, "non-finite weight on edge " + std::to_string(id));
    if (g.has_edge(e.tail, e.head))
      throw_error(Errc::duplicate_edge, "duplicate edge " + std::to_string(e.tail) + "->" +
                                            std::to_string(e.head));
    g.set_slot(e.tail, e.head, e.weight, static_cast<EdgeId>(id));
  }
  return g;
}

Graph build_graph(NodeId node_count, std::span<const Edge> edges) {
  return Graph::build(node_count, edges);
}

std::optional<double> Graph::weight(NodeId tail, NodeId head) const {
  const std::int32_t lt = local_of(tail), lh = local_of(head);
  if (lt < 0 || lh < 0) return std::nullopt;
  const double w = in_w_[static_cast<std::size_t>(lh) * nodes_.size() + lt];
  if (w == kernels::kAbsent) return std::nullopt;
  return w;
}

std::optional<EdgeId> Graph::edge_id(NodeId tail, NodeId head) const {
  const std::int32_t lt = local_of(tail), lh = local_of(head);
  if (lt < 0 || lh < 0) return std::nullopt;
  const EdgeId id = in_id_[static_cast<std::size_t>(lh) * nodes_.size() + lt];
  if (id == kernels::kAbsentId) return std::nullopt;
  return id;
}

std::optional<double> Graph::second_weight(NodeId tail, NodeId head) const {
  const std::int32_t lt = local_of(tail), lh = local_of(head);
  if (lt < 0 || lh < 0) return std::nullopt;
  const double w = in_w2_[static_cast<std::size_t>(lh) * nodes_.size() + lt];
  if (w == kernels::kAbsent) return std::nullopt;
  return w;
}

std::optional<EdgeId> Graph::second_edge_id(NodeId tail, NodeId head) const {
  const std::int32_t lt = local_of(tail), lh = local_of(head);
  if (lt < 0 || lh < 0) return std::nullopt;
  const EdgeId id = in_id2_[static_cast<std::size_t>(lh) * nodes_.size() + lt];
  if (id == kernels::kAbsentId) return std::nullopt;
  return id;
}

std::int32_t Graph::edge_count() const {
  std::int32_t n = 0;
  for (EdgeId id : in_id_)
    if (id != kernels::kAbsentId) ++n;
  return n;
}

Graph Graph::without_pair(NodeId tail, NodeId head) const {
  Graph g = *this;
  const std::int32_t lt = g.local_of(tail), lh = g.local_of(head);
  if (lt >= 0 && lh >= 0) g.clear_slot(lt, lh);
  return g;
}

Graph apply_constraints(const Graph& g, const ConstraintSet& c) {
  if (g.next_fresh_ != g.node_count())
    throw_error(Errc::invalid_argument, "constraints apply to base graphs only");
  if (!c.disjoint())
    throw_error(Errc::invalid_argument, "constraint set includes and excludes the same edge");
  Graph out = g;
  auto pair_of = [&](EdgeId id) -> std::pair<std::int32_t, std::int32_t> {
    if (id < 0 || id >= g.base_edge_count())
      throw_error(Errc::invalid_argument, "constraint references unknown edge " + std::to_string(id));
    const Edge& e = g.base_edge(id);
    return {g.local_of(e.tail), g.local_of(e.head)};
  };
  for (EdgeId id : c.excluded) {
    auto [lt, lh] = pair_of(id);
    if (lt >= 0 && lh >= 0) out.clear_slot(lt, lh);
  }
  const std::int32_t stride = out.node_count();
  std::vector<std::int8_t> head_included(static_cast<std::size_t>(stride), 0);
  bool root_included = false;
  for (EdgeId id : c.included) {
    auto [lt, lh] = pair_of(id);
    if (lt < 0 || lh < 0) continue;
    if (head_included[lh]++ != 0)
      throw_error(Errc::invalid_argument,
                  "two included edges share head " + std::to_string(g.base_edge(id).head));
    if (c.dep_mode && g.base_edge(id).tail == kRoot) {
      if (root_included)
        throw_error(Errc::invalid_argument, "two included root edges under the root constraint");
      root_included = true;
    }
    for (std::int32_t t = 0; t < stride; ++t)
      if (t != lt) out.clear_slot(t, lh);
    if (c.dep_mode && g.base_edge(id).tail == kRoot) {
      // The included root edge is the only one allowed to leave the root.
      for (std::int32_t h = 1; h < stride; ++h)
        if (h != lh) out.clear_slot(/*local root*/ 0, h);
    }
  }
  return out;
}

Graph GraphSurgeon::derive(const Graph& src, std::vector<NodeId> nodes, NodeId next_fresh) {
  Graph g;
  g.base_edges_ = src.base_edges_;
  g.init_dense(std::move(nodes), next_fresh);
  return g;
}

GraphSurgeon::Offer GraphSurgeon::offer_slot(Graph& g, std::int32_t local_tail,
                                             std::int32_t local_head, double w, EdgeId id) {
  const std::size_t at = static_cast<std::size_t>(local_head) * g.nodes_.size() + local_tail;
  auto beats = [](double wa, EdgeId ia, double wb, EdgeId ib) {
    return wa > wb || (wa == wb && ia < ib);
  };
  if (beats(w, id, g.in_w_[at], g.in_id_[at])) {
    g.in_w2_[at] = g.in_w_[at];
    g.in_id2_[at] = g.in_id_[at];
    g.in_w_[at] = w;
    g.in_id_[at] = id;
    return Offer::best;
  }
  if (beats(w, id, g.in_w2_[at], g.in_id2_[at])) {
    g.in_w2_[at] = w;
    g.in_id2_[at] = id;
    return Offer::runner_up;
  }
  return Offer::rejected;
}

NodeId Arborescence::parent_of(NodeId v) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v)
    throw_error(Errc::invalid_argument, "node " + std::to_string(v) + " not in arborescence");
  return parent[static_cast<std::size_t>(it - nodes.begin())];
}

bool Arborescence::contains_edge(NodeId tail, NodeId head) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), head);
  if (it == nodes.end() || *it != head) return false;
  return parent[static_cast<std::size_t>(it - nodes.begin())] == tail;
}

std::int32_t Arborescence::root_child_count() const {
  return static_cast<std::int32_t>(std::count(parent.begin(), parent.end(), kRoot));
}

std::vector<std::pair<NodeId, NodeId>> Arborescence::parent_pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) out.emplace_back(nodes[k], parent[k]);
  return out;
}

namespace {

// Shared validity walk: assignment must cover each non-root active node
// exactly once with an existing edge, and following parents from every node
// must reach the root (no cycles).
bool check_tree(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent, bool dep) {
  const std::int32_t n = g.node_count();
  if (static_cast<std::int32_t>(parent.size()) != n - 1) return false;
  std::vector<NodeId> par(static_cast<std::size_t>(n), -1);
  for (const auto& [child, p] : parent) {
    const std::int32_t lc = g.local_of(child), lp = g.local_of(p);
    if (lc <= 0 || lp < 0) return false;  // unknown child, or root as child
    if (par[lc] != -1) return false;      // duplicate assignment
    if (!g.has_edge(p, child)) return false;
    par[lc] = lp;
  }
  std::vector<std::int8_t> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on path, 2 done
  state[0] = 2;
  for (std::int32_t v = 1; v < n; ++v) {
    if (par[v] == -1) return false;
    std::int32_t u = v;
    while (state[u] == 0) {
      state[u] = 1;
      u = par[u];
    }
    if (state[u] == 1) return false;  // walked into the current path: cycle
    u = v;
    while (state[u] == 1) {
      state[u] = 2;
      u = par[u];
    }
  }
  if (dep) {
    std::int32_t root_children = 0;
    for (std::int32_t v = 1; v < n; ++v)
      if (par[v] == 0) ++root_children;
    if (root_children != 1) return false;
  }
  return true;
}

}  // namespace

bool is_valid_tree(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent) {
  return check_tree(g, parent, false);
}

bool is_dependency_tree(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent) {
  return check_tree(g, parent, true);
}

bool is_valid_tree(const Graph& g, const Arborescence& d) {
  return check_tree(g, d.parent_pairs(), false);
}

bool is_dependency_tree(const Graph& g, const Arborescence& d) {
  return check_tree(g, d.parent_pairs(), true);
}

double tree_weight(const Graph& g, std::span<const std::pair<NodeId, NodeId>> parent) {
  double total = 0.0;
  for (const auto& [child, p] : parent) {
    auto w = g.weight(p, child);
    if (!w)
      throw_error(Errc::missing_edge,
                  "edge " + std::to_string(p) + "->" + std::to_string(child) + " not in graph");
    total += *w;
  }
  return total;
}

}  // namespace arborist
