#ifndef STAQ_TREE_INDEX_HPP
#define STAQ_TREE_INDEX_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "staq/labels.hpp"
#include "staq/tree.hpp"

namespace staq {

// Absent result of a jump query.
inline constexpr NodeId kOmega = -1;

// Per-document jump structure. All queries are answered against pre-order
// node ids; a co-finite label set is resolved against the document's actual
// alphabet, so its effective size stays bounded by the document.
//
// Immutable after construction; safe to share across threads.
class JumpIndex {
 public:
  explicit JumpIndex(const BinaryTree& tree);

  const BinaryTree& tree() const { return *tree_; }

  // First strict descendant of `n` (in document order) with label in `ls`.
  NodeId first_descendant(NodeId n, const LabelSet& ls) const;

  // First node after `n`'s subtree (document order) with label in `ls` that
  // is still inside the subtree of `scope`; `scope` must be an
  // ancestor-or-self of `n`.
  NodeId first_following(NodeId n, const LabelSet& ls, NodeId scope) const;

  // First node strictly below `n` on the 1*/2* path with label in `ls`.
  NodeId first_on_left_spine(NodeId n, const LabelSet& ls) const;
  NodeId first_on_right_spine(NodeId n, const LabelSet& ls) const;

  // The top-most strict descendants of `n` with labels in `ls`, in document
  // order; no result is an ancestor of another.
  std::vector<NodeId> topmost_matches(NodeId n, const LabelSet& ls) const;

  // Number of nodes whose label lies in `ls` ('#' counted when present).
  std::int64_t label_count(const LabelSet& ls) const;

  // All '#' nodes in document order.
  const std::vector<NodeId>& leaves_in_order() const { return leaves_; }

  // Document alphabet (plain element labels, sorted).
  const std::vector<LabelId>& doc_alphabet() const { return alphabet_; }

  // Labels of `ls` that actually occur in this document ('#' included when
  // the set carries it).
  std::vector<LabelId> effective_labels(const LabelSet& ls) const;

 private:
  const std::vector<NodeId>* ids_of(LabelId label) const;

  const BinaryTree* tree_;
  std::unordered_map<LabelId, std::vector<NodeId>> by_label_; // sorted ids
  std::vector<NodeId> leaves_;
  std::vector<LabelId> alphabet_;
};

} // namespace staq

#endif
