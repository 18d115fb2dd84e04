#ifndef STAQ_TREE_HPP
#define STAQ_TREE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "staq/labels.hpp"

namespace staq {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Address of a node: sequence over {1,2}, empty for the root.
struct NodePath {
  std::vector<std::uint8_t> steps;

  NodePath() = default;
  explicit NodePath(std::vector<std::uint8_t> s) : steps(std::move(s)) {}
  static NodePath root() { return NodePath(); }
  static NodePath of(std::initializer_list<int> s);

  NodePath child(int i) const;
  bool is_root() const { return steps.empty(); }
  bool operator==(const NodePath&) const = default;

  std::string to_string() const;              // "eps" or "1.2.1"
  static NodePath parse(std::string_view s);  // accepts "eps", "", "1.2"
};

enum class Ordering { Lt, Eq, Gt };

// Document order on node paths: lexicographic, prefixes first.
Ordering doc_order_cmp(const NodePath& a, const NodePath& b);

// Immutable binary tree over element labels plus the leaf symbol '#'.
// Nodes are stored in pre-order; the pre-order index is the node id and the
// canonical document-order key. Internal nodes have exactly two children,
// '#' nodes none.
class BinaryTree {
 public:
  struct Node {
    LabelId label;
    NodeId parent;
    NodeId child1;
    NodeId child2;
    std::int32_t size; // subtree size including self
    std::int32_t depth;
  };

  static BinaryTree leaf();
  // Builds from a recursive spec; see TreeSpec below.
  struct Spec;
  static BinaryTree build(const Spec& spec);

  NodeId root() const { return 0; }
  std::int32_t node_count() const { return static_cast<std::int32_t>(nodes_.size()); }
  std::int32_t element_count() const { return element_count_; }

  LabelId label(NodeId n) const { return nodes_[n].label; }
  bool is_leaf(NodeId n) const { return nodes_[n].label == kLeafLabel; }
  NodeId child(NodeId n, int i) const { return i == 1 ? nodes_[n].child1 : nodes_[n].child2; }
  NodeId parent(NodeId n) const { return nodes_[n].parent; }
  std::int32_t subtree_size(NodeId n) const { return nodes_[n].size; }
  std::int32_t depth(NodeId n) const { return nodes_[n].depth; }

  bool in_subtree(NodeId n, NodeId top) const {
    return n >= top && n < top + nodes_[top].size;
  }

  NodePath path_of(NodeId n) const;
  std::optional<NodeId> id_of(const NodePath& path) const;

  // Plain element labels occurring in the tree, sorted.
  std::vector<LabelId> alphabet() const;

  // Functional subtree replacement; `at` must be a valid node id.
  BinaryTree substitute(NodeId at, const BinaryTree& replacement) const;
  BinaryTree subtree(NodeId at) const;

  std::string to_term() const;                    // "a(b(#,#),#)"
  static BinaryTree parse_term(std::string_view); // inverse

  bool operator==(const BinaryTree& other) const;

  const std::vector<Node>& nodes() const { return nodes_; }

  // Assembles a tree from pre-order nodes with parent pointers set; children,
  // sizes and depths are recomputed.
  static BinaryTree from_parts(std::vector<Node> nodes);

 private:
  std::vector<Node> nodes_;
  std::int32_t element_count_ = 0;

  void finalize();
};

// Recursive build helper.
struct BinaryTree::Spec {
  LabelId label = kLeafLabel;
  std::unique_ptr<Spec> left;
  std::unique_ptr<Spec> right;

  static Spec leaf() { return Spec{}; }
  static Spec node(LabelId label, Spec l, Spec r);
};

// Deterministic random binary tree with at most `max_elements` non-leaf
// nodes. Branching is geometric: each candidate node becomes '#' with
// probability `leaf_prob` once created, subject to the element budget.
BinaryTree random_tree(std::uint64_t seed, int max_elements,
                       const std::vector<LabelId>& alphabet, double leaf_prob = 0.3);

// Element-only ordered tree parsed from the XML subset.
class UnrankedDoc {
 public:
  struct Elem {
    LabelId label;
    NodeId parent;
    std::vector<NodeId> children;
  };

  explicit UnrankedDoc(std::vector<Elem> elems) : elems_(std::move(elems)) {}

  NodeId root() const { return 0; }
  std::int32_t size() const { return static_cast<std::int32_t>(elems_.size()); }
  const Elem& elem(NodeId n) const { return elems_[n]; }
  LabelId label(NodeId n) const { return elems_[n].label; }
  const std::vector<Elem>& elems() const { return elems_; }

  std::vector<LabelId> alphabet() const;

 private:
  std::vector<Elem> elems_; // pre-order
};

// First-child / next-sibling encoding of a document, with the element <->
// binary-node correspondence kept on the side.
struct BinaryDoc {
  BinaryTree tree;
  std::vector<NodeId> elem_to_node; // element pre-order id -> binary node id
  std::vector<NodeId> node_to_elem; // binary node id -> element id, -1 for '#'
};

BinaryDoc to_binary(const UnrankedDoc& doc);

// Inverse reading of the encoding; exact round trip for every document.
UnrankedDoc from_binary(const BinaryTree& tree);

} // namespace staq

#endif
