#include "arborist/oracle.hpp"

#include <algorithm>
#include <string>

#include "arborist/kernels.hpp"
#include "arborist/mst.hpp"

namespace arborist::oracle {

namespace {

struct Candidate {
  std::int32_t tail;  // local index
  double weight;
};

// Works in local indices so contracted graphs (sparse node ids) enumerate
// correctly too; local 0 is the root.
struct Enumerator {
  const Graph& g;
  bool dep;
  std::int32_t n;                             // non-root node count
  std::vector<std::vector<Candidate>> in;     // per local head 1..n
  std::vector<std::int32_t> parent;           // parent[v-1] = local parent of local node v
  std::vector<EnumeratedTree> out;

  // Walking up from `from` through the assigned prefix; true if v is reached
  // (assigning from as v's parent would close a cycle).
  bool reaches(std::int32_t from, std::int32_t v) const {
    std::int32_t u = from;
    while (u != 0) {
      if (u == v) return true;
      const std::int32_t p = parent[u - 1];
      if (p < 0) return false;  // unassigned yet
      u = p;
    }
    return false;
  }

  void assign(std::int32_t v, double acc, std::int32_t root_children) {
    if (v > n) {
      if (dep && root_children != 1) return;
      EnumeratedTree t;
      t.weight = acc;
      t.parent.reserve(parent.size());
      for (std::int32_t p : parent) t.parent.push_back(g.node_at(p));
      out.push_back(std::move(t));
      return;
    }
    for (const Candidate& c : in[v - 1]) {
      if (reaches(c.tail, v)) continue;
      const std::int32_t rc = root_children + (c.tail == 0 ? 1 : 0);
      if (dep && rc > 1) continue;
      parent[v - 1] = c.tail;
      assign(v + 1, acc + c.weight, rc);
      parent[v - 1] = -1;
    }
  }
};

}  // namespace

std::vector<EnumeratedTree> enumerate_all(const Graph& g, bool dep_mode) {
  const std::int32_t n = g.node_count() - 1;
  if (n > 10)
    throw_error(Errc::too_large, "oracle enumeration limited to 10 non-root nodes, got " +
                                     std::to_string(n));

  Enumerator e{g, dep_mode, n, {}, {}, {}};
  e.in.resize(static_cast<std::size_t>(n));
  double space = 1.0;
  for (std::int32_t v = 1; v <= n; ++v) {
    const double* row_w = g.in_weights_row(v);
    const EdgeId* row_id = g.in_ids_row(v);
    for (std::int32_t t = 0; t < g.node_count(); ++t)
      if (row_id[t] != kernels::kAbsentId) e.in[v - 1].push_back(Candidate{t, row_w[t]});
    space *= std::max<std::size_t>(e.in[v - 1].size(), 1);
  }
  if (space > 1e9)
    throw_error(Errc::too_large, "oracle enumeration space exceeds 1e9 assignments");

  e.parent.assign(static_cast<std::size_t>(n), -1);
  e.assign(1, 0.0, 0);

  std::sort(e.out.begin(), e.out.end(), [](const EnumeratedTree& a, const EnumeratedTree& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.parent < b.parent;
  });
  return e.out;
}

std::optional<std::string> compare_enumerations(const std::vector<Arborescence>& decoded,
                                                const std::vector<EnumeratedTree>& oracle) {
  if (decoded.size() != oracle.size())
    return "decoded " + std::to_string(decoded.size()) + " trees but the oracle finds " +
           std::to_string(oracle.size());
  for (std::size_t k = 0; k < decoded.size(); ++k) {
    if (decoded[k].weight != oracle[k].weight)
      return "divergence at k=" + std::to_string(k + 1) + ": weight " +
             std::to_string(decoded[k].weight) + " vs oracle " + std::to_string(oracle[k].weight);
  }
  std::vector<std::vector<NodeId>> a, b;
  a.reserve(decoded.size());
  b.reserve(oracle.size());
  for (const Arborescence& d : decoded) a.push_back(d.parent);
  for (const EnumeratedTree& t : oracle) b.push_back(t.parent);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return "tree sets differ (first mismatch at sorted position " +
                             std::to_string(k + 1) + ")";
  return std::nullopt;
}

std::pair<Arborescence, SwapCandidate> naive_next(const Graph& g) {
  Arborescence best = best_arborescence(g, false);
  SwapCandidate cand;
  for (std::size_t k = 0; k < best.nodes.size(); ++k) {
    const NodeId head = best.nodes[k];
    const NodeId tail = best.parent[k];
    const EdgeId id = *g.edge_id(tail, head);
    try {
      Arborescence alt = best_arborescence(g.without_pair(tail, head), false);
      if (!cand.present || alt.weight > cand.weight ||
          (alt.weight == cand.weight && id < cand.edge)) {
        cand.present = true;
        cand.weight = alt.weight;
        cand.edge = id;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::no_tree) throw;
    }
  }
  return {std::move(best), cand};
}

}  // namespace arborist::oracle
