#include "staq/tree_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace staq {

JumpIndex::JumpIndex(const BinaryTree& tree) : tree_(&tree) {
  for (NodeId n = 0; n < tree.node_count(); n++) {
    by_label_[tree.label(n)].push_back(n);
    if (tree.is_leaf(n)) leaves_.push_back(n);
  }
  for (const auto& [label, ids] : by_label_) {
    if (label != kLeafLabel) alphabet_.push_back(label);
  }
  std::sort(alphabet_.begin(), alphabet_.end());
}

const std::vector<NodeId>* JumpIndex::ids_of(LabelId label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &it->second;
}

std::vector<LabelId> JumpIndex::effective_labels(const LabelSet& ls) const {
  auto out = ls.members_within(alphabet_);
  if (!ls.contains_leaf()) return out;
  // members_within appends '#' when carried; nothing more to do.
  return out;
}

namespace {

// First id in [lo, hi) within a sorted list, or kOmega.
NodeId first_in_range(const std::vector<NodeId>& ids, NodeId lo, NodeId hi) {
  auto it = std::lower_bound(ids.begin(), ids.end(), lo);
  if (it == ids.end() || *it >= hi) return kOmega;
  return *it;
}

} // namespace

NodeId JumpIndex::first_descendant(NodeId n, const LabelSet& ls) const {
  NodeId lo = n + 1;
  NodeId hi = n + tree_->subtree_size(n);
  NodeId best = kOmega;
  for (LabelId label : effective_labels(ls)) {
    const auto* ids = ids_of(label);
    if (!ids) continue;
    NodeId hit = first_in_range(*ids, lo, hi);
    if (hit != kOmega && (best == kOmega || hit < best)) best = hit;
  }
  return best;
}

NodeId JumpIndex::first_following(NodeId n, const LabelSet& ls, NodeId scope) const {
  if (!tree_->in_subtree(n, scope))
    throw std::invalid_argument("first_following: scope is not an ancestor-or-self");
  NodeId lo = n + tree_->subtree_size(n);
  NodeId hi = scope + tree_->subtree_size(scope);
  NodeId best = kOmega;
  for (LabelId label : effective_labels(ls)) {
    const auto* ids = ids_of(label);
    if (!ids) continue;
    NodeId hit = first_in_range(*ids, lo, hi);
    if (hit != kOmega && (best == kOmega || hit < best)) best = hit;
  }
  return best;
}

NodeId JumpIndex::first_on_left_spine(NodeId n, const LabelSet& ls) const {
  for (NodeId cur = tree_->child(n, 1); cur != kNoNode; cur = tree_->child(cur, 1)) {
    if (ls.contains(tree_->label(cur))) return cur;
  }
  return kOmega;
}

NodeId JumpIndex::first_on_right_spine(NodeId n, const LabelSet& ls) const {
  for (NodeId cur = tree_->child(n, 2); cur != kNoNode; cur = tree_->child(cur, 2)) {
    if (ls.contains(tree_->label(cur))) return cur;
  }
  return kOmega;
}

std::vector<NodeId> JumpIndex::topmost_matches(NodeId n, const LabelSet& ls) const {
  std::vector<NodeId> out;
  NodeId cur = first_descendant(n, ls);
  while (cur != kOmega) {
    out.push_back(cur);
    cur = first_following(cur, ls, n);
  }
  return out;
}

std::int64_t JumpIndex::label_count(const LabelSet& ls) const {
  std::int64_t total = 0;
  for (LabelId label : effective_labels(ls)) {
    const auto* ids = ids_of(label);
    if (ids) total += static_cast<std::int64_t>(ids->size());
  }
  return total;
}

} // namespace staq
