#include "arborist/mst.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "arborist/kernels.hpp"
#include "graph_internal.hpp"

namespace arborist {

namespace {

std::atomic<std::uint64_t> g_contractions{0};

template <typename T>
std::optional<T> lookup(const std::vector<std::pair<NodeId, T>>& v, NodeId key) {
  for (const auto& [k, val] : v)
    if (k == key) return val;
  return std::nullopt;
}

}  // namespace

std::uint64_t contraction_count() { return g_contractions.load(std::memory_order_relaxed); }
void reset_contraction_count() { g_contractions.store(0, std::memory_order_relaxed); }

Arborescence GreedyAssignment::to_arborescence() const {
  Arborescence d;
  d.nodes.reserve(choices.size());
  d.parent.reserve(choices.size());
  for (const GreedyChoice& c : choices) {
    d.nodes.push_back(c.node);
    d.parent.push_back(c.parent);
  }
  d.weight = total_weight;
  return d;
}

std::optional<GreedyChoice> GreedyAssignment::choice_for(NodeId v) const {
  auto it = std::lower_bound(choices.begin(), choices.end(), v,
                             [](const GreedyChoice& c, NodeId x) { return c.node < x; });
  if (it == choices.end() || it->node != v) return std::nullopt;
  return *it;
}

GreedyAssignment greedy_graph(const Graph& g) {
  GreedyAssignment out;
  const std::int32_t n = g.node_count();
  out.choices.reserve(static_cast<std::size_t>(n) - 1);
  for (std::int32_t lh = 1; lh < n; ++lh) {
    kernels::MaxLoc m = kernels::row_argmax(g.in_weights_row(lh), g.in_ids_row(lh), n);
    if (m.empty())
      throw_error(Errc::no_incoming_edge,
                  "node " + std::to_string(g.node_at(lh)) + " has no incoming edge");
    GreedyChoice c;
    c.node = g.node_at(lh);
    c.parent = g.node_at(m.index);
    c.edge = g.in_ids_row(lh)[m.index];
    c.weight = m.value;
    out.choices.push_back(c);
    out.total_weight += m.value;
  }
  return out;
}

namespace {

// Rotate/orient cycle members canonically: start at the smallest id, follow
// the child direction (parent(cycle[t]) == cycle[t-1]).
std::vector<NodeId> normalize_cycle(const std::vector<NodeId>& members,
                                    const std::vector<std::pair<NodeId, NodeId>>& parent_of) {
  std::vector<NodeId> out;
  out.reserve(members.size());
  NodeId start = *std::min_element(members.begin(), members.end());
  // child_of[x] = member whose parent is x
  std::vector<std::pair<NodeId, NodeId>> child_of;
  child_of.reserve(members.size());
  for (NodeId m : members) {
    auto p = lookup(parent_of, m);
    child_of.emplace_back(*p, m);
  }
  NodeId cur = start;
  do {
    out.push_back(cur);
    cur = *lookup(child_of, cur);
  } while (cur != start);
  return out;
}

}  // namespace

std::optional<std::vector<NodeId>> find_critical_cycle(const GreedyAssignment& a) {
  if (a.choices.empty()) return std::nullopt;
  NodeId max_id = 0;
  for (const GreedyChoice& c : a.choices) max_id = std::max({max_id, c.node, c.parent});
  std::vector<NodeId> parent(static_cast<std::size_t>(max_id) + 1, -1);
  for (const GreedyChoice& c : a.choices) parent[c.node] = c.parent;

  // Functional-graph cycle scan with tricolor marking; cycles are disjoint.
  std::vector<std::int8_t> state(static_cast<std::size_t>(max_id) + 1, 0);  // 1 on path, 2 done
  std::optional<std::vector<NodeId>> best;
  std::vector<NodeId> path;
  for (const GreedyChoice& c : a.choices) {
    NodeId u = c.node;
    path.clear();
    while (u != kRoot && parent[u] >= 0 && state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = parent[u];
    }
    if (u != kRoot && parent[u] >= 0 && state[u] == 1) {
      // Closed a loop within the current path; collect members from u onward.
      std::vector<NodeId> members;
      bool in = false;
      for (NodeId v : path) {
        if (v == u) in = true;
        if (in) members.push_back(v);
      }
      std::vector<std::pair<NodeId, NodeId>> parent_of;
      for (NodeId v : members) parent_of.emplace_back(v, parent[v]);
      std::vector<NodeId> cyc = normalize_cycle(members, parent_of);
      if (!best || cyc[0] < (*best)[0]) best = std::move(cyc);
    }
    for (NodeId v : path) state[v] = 2;
  }
  return best;
}

double CycleRecord::entry_weight_of(NodeId j) const {
  for (std::size_t t = 0; t < cycle.size(); ++t)
    if (cycle[t] == j) return entry_weight[t];
  throw_error(Errc::invalid_argument, "node " + std::to_string(j) + " not on the cycle");
}

std::optional<NodeId> CycleRecord::prev_head_of_in(NodeId tail) const {
  return lookup(in_prev_head, tail);
}

std::optional<NodeId> CycleRecord::prev_tail_of_out(NodeId head) const {
  return lookup(out_prev_tail, head);
}

std::pair<Graph, CycleRecord> contract(const Graph& g, std::span<const NodeId> cycle) {
  const std::size_t m = cycle.size();
  if (m < 2) throw_error(Errc::not_a_cycle, "cycle needs at least two nodes");
  for (NodeId v : cycle) {
    if (!g.has_node(v) || v == kRoot)
      throw_error(Errc::not_a_cycle, "node " + std::to_string(v) + " not contractible");
  }

  CycleRecord rec;
  rec.cycle.assign(cycle.begin(), cycle.end());
  rec.mega_node = g.fresh_node_id();
  double cycle_total = 0.0;
  std::vector<double> edge_in(m);  // weight of the cycle edge into cycle[t]
  for (std::size_t t = 0; t < m; ++t) {
    NodeId from = cycle[(t + m - 1) % m];
    NodeId to = cycle[t];
    auto w = g.weight(from, to);
    if (!w)
      throw_error(Errc::not_a_cycle,
                  "missing cycle edge " + std::to_string(from) + "->" + std::to_string(to));
    edge_in[t] = *w;
    cycle_total += *w;
  }
  rec.entry_weight.resize(m);
  for (std::size_t t = 0; t < m; ++t) rec.entry_weight[t] = cycle_total - edge_in[t];

  const std::int32_t n = g.node_count();
  std::vector<std::int8_t> in_cycle(static_cast<std::size_t>(n), 0);
  for (NodeId v : cycle) {
    std::int32_t lv = g.local_of(v);
    if (lv < 0 || in_cycle[lv]) throw_error(Errc::not_a_cycle, "repeated cycle node");
    in_cycle[lv] = 1;
  }

  std::vector<NodeId> new_nodes;
  new_nodes.reserve(static_cast<std::size_t>(n) - m + 1);
  for (NodeId v : g.nodes())
    if (!in_cycle[g.local_of(v)]) new_nodes.push_back(v);
  new_nodes.push_back(rec.mega_node);  // fresh ids sort above every active id

  Graph out = GraphSurgeon::derive(g, std::move(new_nodes), rec.mega_node + 1);
  const std::int32_t mega_local = out.node_count() - 1;

  // per-local-index scratch keeps the slot loop O(1) per candidate
  std::vector<double> entry_w_local(static_cast<std::size_t>(n), 0.0);
  for (std::size_t t = 0; t < m; ++t) entry_w_local[g.local_of(cycle[t])] = rec.entry_weight[t];
  std::vector<NodeId> prev_head_for(static_cast<std::size_t>(n), -1);  // by source tail local
  std::vector<NodeId> prev_tail_for(static_cast<std::size_t>(n), -1);  // by source head local

  for (std::int32_t lh = 1; lh < n; ++lh) {
    const NodeId head = g.node_at(lh);
    const bool head_in = in_cycle[lh] != 0;
    const std::int32_t out_head = head_in ? mega_local : out.local_of(head);
    const double entry_w = head_in ? entry_w_local[lh] : 0.0;
    // both candidates of every source slot carry over (the runner-up of a
    // slot can become a second-best tree's swap target later)
    const double* rows_w[2] = {g.in_weights_row(lh), g.in_weights2_row(lh)};
    const EdgeId* rows_id[2] = {g.in_ids_row(lh), g.in_ids2_row(lh)};
    for (std::int32_t lt = 0; lt < n; ++lt) {
      if (rows_id[0][lt] == kernels::kAbsentId) continue;
      const bool tail_in = in_cycle[lt] != 0;
      if (tail_in && head_in) continue;  // rule 4
      const std::int32_t out_tail = tail_in ? mega_local : out.local_of(g.node_at(lt));
      for (int cand = 0; cand < 2; ++cand) {
        const EdgeId id = rows_id[cand][lt];
        if (id == kernels::kAbsentId) continue;
        const auto got = GraphSurgeon::offer_slot(out, out_tail, out_head,
                                                  rows_w[cand][lt] + entry_w, id);
        if (got == GraphSurgeon::Offer::best && head_in) prev_head_for[lt] = head;  // rule 1
        if (got == GraphSurgeon::Offer::best && tail_in) prev_tail_for[lh] = g.node_at(lt);  // rule 2
      }
    }
  }
  for (std::int32_t lt = 0; lt < n; ++lt)
    if (prev_head_for[lt] >= 0) rec.in_prev_head.emplace_back(g.node_at(lt), prev_head_for[lt]);
  for (std::int32_t lh = 0; lh < n; ++lh)
    if (prev_tail_for[lh] >= 0) rec.out_prev_tail.emplace_back(g.node_at(lh), prev_tail_for[lh]);

  g_contractions.fetch_add(1, std::memory_order_relaxed);
  return {std::move(out), std::move(rec)};
}

Arborescence stitch(const Graph& g, const Arborescence& d, const CycleRecord& rec) {
  const std::size_t m = rec.cycle.size();
  NodeId entry_tail = -1;
  for (std::size_t k = 0; k < d.nodes.size(); ++k)
    if (d.nodes[k] == rec.mega_node) entry_tail = d.parent[k];
  if (entry_tail < 0)
    throw_error(Errc::missing_entry_edge, "arborescence has no edge into the mega-node");
  auto entry = rec.prev_head_of_in(entry_tail);
  if (!entry)
    throw_error(Errc::missing_entry_edge,
                "no provenance for entry tail " + std::to_string(entry_tail));

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(d.nodes.size() + m - 1);
  for (std::size_t k = 0; k < d.nodes.size(); ++k) {
    const NodeId v = d.nodes[k];
    if (v == rec.mega_node) continue;
    NodeId p = d.parent[k];
    if (p == rec.mega_node) p = *rec.prev_tail_of_out(v);
    pairs.emplace_back(v, p);
  }
  for (std::size_t t = 0; t < m; ++t) {
    const NodeId v = rec.cycle[t];
    if (v == *entry)
      pairs.emplace_back(v, entry_tail);
    else
      pairs.emplace_back(v, rec.cycle[(t + m - 1) % m]);
  }
  std::sort(pairs.begin(), pairs.end());

  Arborescence out;
  out.nodes.reserve(pairs.size());
  out.parent.reserve(pairs.size());
  for (const auto& [v, p] : pairs) {
    out.nodes.push_back(v);
    out.parent.push_back(p);
    out.weight += *g.weight(p, v);
  }
  return out;
}

namespace {

Arborescence constrain_root(const Graph& g, const GreedyAssignment& a);

// Dependency-aware decoding entry point: contract critical cycles first, then
// enforce the root constraint on the acyclic core.
Arborescence constrain_entry(const Graph& g) {
  GreedyAssignment a = greedy_graph(g);
  if (auto cyc = find_critical_cycle(a)) {
    auto [g2, rec] = contract(g, *cyc);
    return stitch(g, constrain_entry(g2), rec);
  }
  return constrain_root(g, a);
}

// Precondition: a == greedy(g) and acyclic. Deletes surplus root edges, best
// deletion first; a deletion whose greedy repair closes a cycle triggers a
// contraction of g (not of the deleted graph: the root candidates must stay
// available, reweighted, on the mega-node).
Arborescence constrain_root(const Graph& g, const GreedyAssignment& a) {
  std::vector<const GreedyChoice*> sigma;
  for (const GreedyChoice& c : a.choices)
    if (c.parent == kRoot) sigma.push_back(&c);
  if (sigma.size() == 1) return a.to_arborescence();
  if (sigma.empty()) throw_error(Errc::no_tree, "no dependency tree: graph has no root edge");

  const std::int32_t n = g.node_count();
  std::vector<std::uint8_t> allow(static_cast<std::size_t>(n), 1);
  allow[0] = 0;  // the deletion removes every (root, j) edge

  // Best deletion: argmax over surplus root edges of the repaired greedy
  // weight, i.e. total - w(root->j) + (best non-root incoming of j).
  const GreedyChoice* del = nullptr;
  kernels::MaxLoc del_alt;
  double del_score = 0.0;
  for (const GreedyChoice* c : sigma) {
    const std::int32_t lh = g.local_of(c->node);
    kernels::MaxLoc alt =
        kernels::row_argmax_masked(g.in_weights_row(lh), g.in_ids_row(lh), allow.data(), n);
    if (alt.empty()) continue;  // j would lose its last incoming edge
    const double score = a.total_weight - c->weight + alt.value;
    if (!del || score > del_score || (score == del_score && c->edge < del->edge)) {
      del = c;
      del_alt = alt;
      del_score = score;
    }
  }
  if (!del) throw_error(Errc::no_tree, "no dependency tree: every root edge is mandatory");

  // Repaired assignment: only the deleted edge's head changes parent.
  const NodeId j = del->node;
  const NodeId new_parent = g.node_at(del_alt.index);

  // Any new cycle must pass through j; walk up from the new parent.
  std::vector<NodeId> members;
  NodeId u = new_parent;
  while (u != kRoot && u != j) {
    members.push_back(u);
    u = a.choice_for(u)->parent;
  }
  if (u == j) {
    members.push_back(j);
    std::vector<std::pair<NodeId, NodeId>> parent_of;
    for (NodeId v : members)
      parent_of.emplace_back(v, v == j ? new_parent : a.choice_for(v)->parent);
    std::vector<NodeId> cyc = normalize_cycle(members, parent_of);
    auto [g2, rec] = contract(g, cyc);
    return stitch(g, constrain_entry(g2), rec);
  }

  Graph g2 = g.without_pair(kRoot, j);
  GreedyAssignment a2 = a;
  for (GreedyChoice& c : a2.choices) {
    if (c.node == j) {
      a2.total_weight += del_alt.value - c.weight;
      c.parent = new_parent;
      c.weight = del_alt.value;
      c.edge = g.in_ids_row(g.local_of(j))[del_alt.index];
    }
  }
  return constrain_root(g2, a2);
}

Arborescence best_impl(const Graph& g, bool dependency) {
  if (!dependency) {
    GreedyAssignment a = greedy_graph(g);
    if (auto cyc = find_critical_cycle(a)) {
      auto [g2, rec] = contract(g, *cyc);
      return stitch(g, best_impl(g2, false), rec);
    }
    return a.to_arborescence();
  }
  return constrain_entry(g);
}

}  // namespace

Arborescence best_arborescence(const Graph& g, bool dependency) {
  try {
    return best_impl(g, dependency);
  } catch (const Error& e) {
    if (e.code() == Errc::no_incoming_edge)
      throw_error(Errc::no_tree, std::string("no spanning arborescence: ") + e.what());
    throw;
  }
}

}  // namespace arborist
