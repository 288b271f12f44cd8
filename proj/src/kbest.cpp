#include "arborist/kbest.hpp"

#include <string>

#include "arborist/mst.hpp"

namespace arborist {

namespace {

EdgeId root_edge_of(const Graph& g, const Arborescence& d) {
  for (std::size_t k = 0; k < d.nodes.size(); ++k)
    if (d.parent[k] == kRoot) return *g.edge_id(kRoot, d.nodes[k]);
  throw_error(Errc::no_tree, "dependency tree without a root edge");
}

}  // namespace

KBestStream::KBestStream(Graph base, bool dependency)
    : KBestStream(std::move(base), dependency, [](const Graph& g) { return next_best(g); }) {}

KBestStream::KBestStream(Graph base, bool dependency, NextFn decode)
    : base_(std::move(base)), dep_(dependency), decode_(std::move(decode)) {}

void KBestStream::push_swap(const ConstraintSet& c, const SwapCandidate& cand) {
  if (!cand.present) return;
  queue_.push(QueueItem{cand.weight, cand.edge, c, BranchKind::swap_candidate, seq_++});
}

// Queue the "best dependency tree whose root edge differs from tree's" branch;
// skipped when no such tree exists.
void KBestStream::push_root_exclusion_of(const ConstraintSet& c, const Arborescence& tree) {
  const EdgeId e_root = root_edge_of(base_, tree);
  try {
    Arborescence alt = best_arborescence(apply_constraints(base_, c.with_excluded(e_root)), true);
    queue_.push(QueueItem{alt.weight, e_root, c, BranchKind::root_edge_exclusion, seq_++});
  } catch (const Error& e) {
    if (e.code() != Errc::no_tree) throw;
  }
}

Arborescence KBestStream::start() {
  started_ = true;
  ConstraintSet none;
  none.dep_mode = dep_;
  if (!dep_) {
    auto [best, cand] = decode_(apply_constraints(base_, none));
    push_swap(none, cand);
    return std::move(best);
  }
  Arborescence best = best_arborescence(apply_constraints(base_, none), true);
  const EdgeId e_root = root_edge_of(base_, best);
  ConstraintSet inc = none.with_included(e_root);
  auto [_, cand] = decode_(apply_constraints(base_, inc));
  push_swap(inc, cand);
  push_root_exclusion_of(none, best);
  return best;
}

Arborescence KBestStream::pop_swap(const QueueItem& item) {
  ConstraintSet excl = item.constraints.with_excluded(item.edge);
  auto [tree, cand] = decode_(apply_constraints(base_, excl));
  push_swap(excl, cand);
  ConstraintSet incl = item.constraints.with_included(item.edge);
  auto [_, cand_inc] = decode_(apply_constraints(base_, incl));
  push_swap(incl, cand_inc);
  return std::move(tree);
}

Arborescence KBestStream::pop_root_exclusion(const QueueItem& item) {
  ConstraintSet excl = item.constraints.with_excluded(item.edge);
  Arborescence tree = best_arborescence(apply_constraints(base_, excl), true);
  push_root_exclusion_of(excl, tree);
  const EdgeId e_root = root_edge_of(base_, tree);
  ConstraintSet incl = excl.with_included(e_root);
  auto [_, cand] = decode_(apply_constraints(base_, incl));
  push_swap(incl, cand);
  return tree;
}

std::optional<Arborescence> KBestStream::next_tree() {
  if (!started_) {
    Arborescence out = start();
    ++yielded_;
    return out;
  }
  if (queue_.empty()) return std::nullopt;
  QueueItem item = queue_.top();
  queue_.pop();
  Arborescence out = item.kind == BranchKind::swap_candidate ? pop_swap(item)
                                                             : pop_root_exclusion(item);
  ++yielded_;
  return out;
}

namespace {

std::vector<Arborescence> take(KBestStream stream, std::int64_t k) {
  if (k < 1) throw_error(Errc::invalid_argument, "k must be >= 1, got " + std::to_string(k));
  std::vector<Arborescence> out;
  out.reserve(static_cast<std::size_t>(std::min<std::int64_t>(k, 1024)));
  for (std::int64_t i = 0; i < k; ++i) {
    auto t = stream.next_tree();
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

}  // namespace

std::vector<Arborescence> kbest(const Graph& g, std::int64_t k) {
  return take(KBestStream(g, false), k);
}

std::vector<Arborescence> kbest_dep(const Graph& g, std::int64_t k) {
  return take(KBestStream(g, true), k);
}

}  // namespace arborist
