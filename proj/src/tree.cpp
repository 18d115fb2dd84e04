#include "staq/tree.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <stdexcept>

namespace staq {

NodePath NodePath::of(std::initializer_list<int> s) {
  NodePath p;
  for (int i : s) {
    if (i != 1 && i != 2) throw std::invalid_argument("path steps must be 1 or 2");
    p.steps.push_back(static_cast<std::uint8_t>(i));
  }
  return p;
}

NodePath NodePath::child(int i) const {
  NodePath p = *this;
  p.steps.push_back(static_cast<std::uint8_t>(i));
  return p;
}

std::string NodePath::to_string() const {
  if (steps.empty()) return "eps";
  std::string out;
  for (size_t i = 0; i < steps.size(); i++) {
    if (i) out.push_back('.');
    out.push_back(static_cast<char>('0' + steps[i]));
  }
  return out;
}

NodePath NodePath::parse(std::string_view s) {
  if (s.empty() || s == "eps" || s == "e") return NodePath();
  NodePath p;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '1' || c == '2') {
      p.steps.push_back(static_cast<std::uint8_t>(c - '0'));
      i++;
      if (i < s.size()) {
        if (s[i] != '.') throw std::invalid_argument("bad path: " + std::string(s));
        i++;
      }
    } else {
      throw std::invalid_argument("bad path: " + std::string(s));
    }
  }
  return p;
}

Ordering doc_order_cmp(const NodePath& a, const NodePath& b) {
  size_t n = std::min(a.steps.size(), b.steps.size());
  for (size_t i = 0; i < n; i++) {
    if (a.steps[i] < b.steps[i]) return Ordering::Lt;
    if (a.steps[i] > b.steps[i]) return Ordering::Gt;
  }
  if (a.steps.size() < b.steps.size()) return Ordering::Lt;
  if (a.steps.size() > b.steps.size()) return Ordering::Gt;
  return Ordering::Eq;
}

BinaryTree::Spec BinaryTree::Spec::node(LabelId label, Spec l, Spec r) {
  Spec s;
  s.label = label;
  s.left = std::make_unique<Spec>(std::move(l));
  s.right = std::make_unique<Spec>(std::move(r));
  return s;
}

BinaryTree BinaryTree::leaf() {
  BinaryTree t;
  t.nodes_.push_back(Node{kLeafLabel, kNoNode, kNoNode, kNoNode, 1, 0});
  t.element_count_ = 0;
  return t;
}

namespace {

// Iterative pre-order flatten; avoids deep recursion on sibling chains.
void flatten(const BinaryTree::Spec& spec, std::vector<BinaryTree::Node>& out) {
  struct Frame {
    const BinaryTree::Spec* spec;
    NodeId parent;
    std::int32_t depth;
  };
  std::vector<Frame> stack;
  stack.push_back({&spec, kNoNode, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    NodeId id = static_cast<NodeId>(out.size());
    out.push_back({f.spec->label, f.parent, kNoNode, kNoNode, 1, f.depth});
    if (f.spec->label != kLeafLabel) {
      if (!f.spec->left || !f.spec->right)
        throw std::invalid_argument("internal node must have two children");
      // Right pushed first so the left subtree is emitted next (pre-order).
      stack.push_back({f.spec->right.get(), id, f.depth + 1});
      stack.push_back({f.spec->left.get(), id, f.depth + 1});
    } else if (f.spec->left || f.spec->right) {
      throw std::invalid_argument("leaf must not have children");
    }
  }
}

} // namespace

void BinaryTree::finalize() {
  // Children, sizes and element count from parent pointers, in one reverse
  // sweep (children follow parents in pre-order).
  element_count_ = 0;
  for (auto& n : nodes_) {
    n.child1 = kNoNode;
    n.child2 = kNoNode;
    n.size = 1;
  }
  for (NodeId i = node_count() - 1; i >= 0; i--) {
    if (nodes_[i].label != kLeafLabel) element_count_++;
    NodeId p = nodes_[i].parent;
    if (p == kNoNode) continue;
    nodes_[p].size += nodes_[i].size;
    // Pre-order: child1 precedes child2, so the last assignment wins for
    // child1 as we sweep backwards.
    if (nodes_[p].child2 == kNoNode && nodes_[p].child1 != kNoNode) {
      nodes_[p].child2 = nodes_[p].child1;
      nodes_[p].child1 = i;
    } else if (nodes_[p].child1 == kNoNode) {
      nodes_[p].child1 = i;
    } else {
      throw std::logic_error("node with more than two children");
    }
  }
}

BinaryTree BinaryTree::build(const Spec& spec) {
  BinaryTree t;
  flatten(spec, t.nodes_);
  t.finalize();
  return t;
}

BinaryTree BinaryTree::from_parts(std::vector<Node> nodes) {
  BinaryTree t;
  t.nodes_ = std::move(nodes);
  t.finalize();
  // finalize() leaves depths untouched; recompute from parents.
  for (NodeId i = 0; i < t.node_count(); i++) {
    NodeId p = t.nodes_[i].parent;
    t.nodes_[i].depth = p == kNoNode ? 0 : t.nodes_[p].depth + 1;
  }
  return t;
}

NodePath BinaryTree::path_of(NodeId n) const {
  std::vector<std::uint8_t> rev;
  NodeId cur = n;
  while (nodes_[cur].parent != kNoNode) {
    NodeId p = nodes_[cur].parent;
    rev.push_back(nodes_[p].child1 == cur ? 1 : 2);
    cur = p;
  }
  std::reverse(rev.begin(), rev.end());
  return NodePath(std::move(rev));
}

std::optional<NodeId> BinaryTree::id_of(const NodePath& path) const {
  NodeId cur = 0;
  for (std::uint8_t s : path.steps) {
    if (is_leaf(cur)) return std::nullopt;
    cur = s == 1 ? nodes_[cur].child1 : nodes_[cur].child2;
  }
  return cur;
}

std::vector<LabelId> BinaryTree::alphabet() const {
  std::set<LabelId> s;
  for (const auto& n : nodes_) {
    if (n.label != kLeafLabel) s.insert(n.label);
  }
  return std::vector<LabelId>(s.begin(), s.end());
}

BinaryTree BinaryTree::subtree(NodeId at) const {
  BinaryTree t;
  std::int32_t sz = nodes_[at].size;
  t.nodes_.reserve(sz);
  std::int32_t base_depth = nodes_[at].depth;
  for (NodeId i = at; i < at + sz; i++) {
    Node n = nodes_[i];
    n.parent = n.parent == kNoNode || n.parent < at ? kNoNode : n.parent - at;
    n.child1 = n.child1 == kNoNode ? kNoNode : n.child1 - at;
    n.child2 = n.child2 == kNoNode ? kNoNode : n.child2 - at;
    n.depth -= base_depth;
    t.nodes_.push_back(n);
  }
  t.finalize();
  return t;
}

BinaryTree BinaryTree::substitute(NodeId at, const BinaryTree& replacement) const {
  if (at < 0 || at >= node_count()) throw std::out_of_range("substitute: node outside domain");
  BinaryTree t;
  t.nodes_.reserve(node_count() - nodes_[at].size + replacement.node_count());
  for (NodeId i = 0; i < at; i++) t.nodes_.push_back(nodes_[i]);
  std::int32_t base_depth = at == 0 ? 0 : nodes_[at].depth;
  NodeId at_parent = nodes_[at].parent;
  for (NodeId i = 0; i < replacement.node_count(); i++) {
    Node n = replacement.nodes_[i];
    n.parent = n.parent == kNoNode ? at_parent : n.parent + at;
    n.child1 = n.child1 == kNoNode ? kNoNode : n.child1 + at;
    n.child2 = n.child2 == kNoNode ? kNoNode : n.child2 + at;
    n.depth += base_depth;
    t.nodes_.push_back(n);
  }
  std::int32_t shift = replacement.node_count() - nodes_[at].size;
  NodeId old_end = at + nodes_[at].size;
  for (NodeId i = old_end; i < node_count(); i++) {
    Node n = nodes_[i];
    auto fix = [&](NodeId r) {
      if (r == kNoNode) return r;
      return r >= old_end ? r + shift : r; // ids before `at` unchanged
    };
    n.parent = fix(n.parent);
    n.child1 = fix(n.child1);
    n.child2 = fix(n.child2);
    t.nodes_.push_back(n);
  }
  t.finalize();
  return t;
}

bool BinaryTree::operator==(const BinaryTree& other) const {
  if (node_count() != other.node_count()) return false;
  for (NodeId i = 0; i < node_count(); i++) {
    if (nodes_[i].label != other.nodes_[i].label) return false;
  }
  return true;
}

std::string BinaryTree::to_term() const {
  std::string out;
  // Iterative with an explicit todo list of (node, marker) items.
  struct Item {
    NodeId node;
    int phase; // 0 enter, 1 between children, 2 close
  };
  std::vector<Item> stack{{0, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.phase == 1) {
      out.push_back(',');
      continue;
    }
    if (it.phase == 2) {
      out.push_back(')');
      continue;
    }
    const Node& n = nodes_[it.node];
    if (n.label == kLeafLabel) {
      out.push_back('#');
      continue;
    }
    out += label_name(n.label);
    out.push_back('(');
    stack.push_back({it.node, 2});
    stack.push_back({n.child2, 0});
    stack.push_back({it.node, 1});
    stack.push_back({n.child1, 0});
  }
  return out;
}

namespace {

struct TermParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("tree term: " + what + " at offset " + std::to_string(pos));
  }

  BinaryTree::Spec parse_node() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '#') {
      pos++;
      return BinaryTree::Spec::leaf();
    }
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-' || text[pos] == '^'))
      pos++;
    if (pos == start) fail("expected label");
    LabelId label = parse_label(text.substr(start, pos - start));
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    pos++;
    auto l = parse_node();
    skip_ws();
    if (pos >= text.size() || text[pos] != ',') fail("expected ','");
    pos++;
    auto r = parse_node();
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    pos++;
    return BinaryTree::Spec::node(label, std::move(l), std::move(r));
  }
};

} // namespace

BinaryTree BinaryTree::parse_term(std::string_view text) {
  TermParser p{text};
  auto spec = p.parse_node();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return build(spec);
}

BinaryTree random_tree(std::uint64_t seed, int max_elements,
                       const std::vector<LabelId>& alphabet, double leaf_prob) {
  if (alphabet.empty()) throw std::invalid_argument("random_tree: empty alphabet");
  if (max_elements < 1) throw std::invalid_argument("random_tree: max_elements must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);

  int budget = max_elements;
  // Build the spec with an explicit work list, filling children in pre-order
  // so the budget is consumed deterministically in document order.
  auto make = [&](auto&& self, int depth) -> BinaryTree::Spec {
    if (budget <= 0 || coin(rng) < leaf_prob) return BinaryTree::Spec::leaf();
    budget--;
    LabelId label = alphabet[pick(rng)];
    auto l = self(self, depth + 1);
    auto r = self(self, depth + 1);
    return BinaryTree::Spec::node(label, std::move(l), std::move(r));
  };
  return BinaryTree::build(make(make, 0));
}

std::vector<LabelId> UnrankedDoc::alphabet() const {
  std::set<LabelId> s;
  for (const auto& e : elems_) s.insert(e.label);
  return std::vector<LabelId>(s.begin(), s.end());
}

BinaryDoc to_binary(const UnrankedDoc& doc) {
  // node ids assigned in binary pre-order, which coincides with document
  // order on elements; '#' nodes are interleaved.
  std::vector<BinaryTree::Node> nodes;
  std::vector<NodeId> elem_to_node(doc.size(), kNoNode);
  std::vector<NodeId> node_to_elem;

  struct Frame {
    NodeId elem;    // element to encode, or kNoNode for '#'
    NodeId sib_idx; // index within parent's child list
    NodeId parent_bin;
    std::int32_t depth;
  };
  std::vector<Frame> stack;
  stack.push_back({doc.root(), 0, kNoNode, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    NodeId bin = static_cast<NodeId>(nodes.size());
    if (f.elem == kNoNode) {
      nodes.push_back({kLeafLabel, f.parent_bin, kNoNode, kNoNode, 1, f.depth});
      node_to_elem.push_back(kNoNode);
      continue;
    }
    const auto& e = doc.elem(f.elem);
    nodes.push_back({e.label, f.parent_bin, kNoNode, kNoNode, 1, f.depth});
    node_to_elem.push_back(f.elem);
    elem_to_node[f.elem] = bin;

    // Right child: next sibling in the parent's list (the document root has
    // none, so it gets '#').
    NodeId next_sib = kNoNode;
    NodeId parent_elem = e.parent;
    if (parent_elem != kNoNode) {
      const auto& sibs = doc.elem(parent_elem).children;
      if (static_cast<size_t>(f.sib_idx + 1) < sibs.size()) next_sib = sibs[f.sib_idx + 1];
    }
    stack.push_back({next_sib, f.sib_idx + 1, bin, f.depth + 1});
    // Left child: first child.
    NodeId first_child = e.children.empty() ? kNoNode : e.children[0];
    stack.push_back({first_child, 0, bin, f.depth + 1});
  }

  BinaryTree tree = BinaryTree::from_parts(std::move(nodes));
  return BinaryDoc{std::move(tree), std::move(elem_to_node), std::move(node_to_elem)};
}

UnrankedDoc from_binary(const BinaryTree& tree) {
  if (tree.is_leaf(tree.root())) throw std::invalid_argument("no element at binary root");
  std::vector<UnrankedDoc::Elem> elems;
  // Element ids in binary pre-order.
  std::vector<NodeId> node_to_elem(tree.node_count(), kNoNode);
  for (NodeId n = 0; n < tree.node_count(); n++) {
    if (tree.is_leaf(n)) continue;
    NodeId e = static_cast<NodeId>(elems.size());
    node_to_elem[n] = e;
    elems.push_back({tree.label(n), kNoNode, {}});
  }
  for (NodeId n = 0; n < tree.node_count(); n++) {
    if (tree.is_leaf(n)) continue;
    NodeId e = node_to_elem[n];
    // Parent in the unranked tree: nearest ancestor reached through a
    // 1-edge; ancestors reached through 2-edges are siblings.
    NodeId cur = n;
    NodeId p = tree.parent(cur);
    while (p != kNoNode && tree.child(p, 2) == cur) {
      cur = p;
      p = tree.parent(cur);
    }
    if (p != kNoNode) {
      elems[e].parent = node_to_elem[p];
      elems[node_to_elem[p]].children.push_back(e);
    } else if (n != tree.root()) {
      throw std::invalid_argument("binary root has a following sibling");
    }
  }
  return UnrankedDoc(std::move(elems));
}

} // namespace staq
