#include <doctest.h>

#include <random>

#include "staq/tree.hpp"
#include "staq/tree_index.hpp"

using namespace staq;

namespace {

LabelId L(const char* s) { return intern_label(s); }

// Scan oracles implementing the set-theoretic definitions directly.
NodeId scan_first_descendant(const BinaryTree& t, NodeId n, const LabelSet& ls) {
  for (NodeId i = n + 1; i < n + t.subtree_size(n); i++)
    if (ls.contains(t.label(i))) return i;
  return kOmega;
}

NodeId scan_first_following(const BinaryTree& t, NodeId n, const LabelSet& ls, NodeId scope) {
  for (NodeId i = n + t.subtree_size(n); i < scope + t.subtree_size(scope); i++)
    if (ls.contains(t.label(i))) return i;
  return kOmega;
}

NodeId scan_spine(const BinaryTree& t, NodeId n, const LabelSet& ls, int dir) {
  for (NodeId cur = t.child(n, dir); cur != kNoNode; cur = t.child(cur, dir))
    if (ls.contains(t.label(cur))) return cur;
  return kOmega;
}

const char* kT1 = "a(a(b(#,#),#),c(#,b(#,#)))";

} // namespace

TEST_CASE("jump queries on the worked fixture") {
  auto t = BinaryTree::parse_term(kT1);
  JumpIndex idx(t);
  auto id = [&](const char* p) { return *t.id_of(NodePath::parse(p)); };
  auto b = LabelSet::of({L("b")});

  CHECK(idx.first_descendant(0, b) == id("1.1"));
  CHECK(idx.first_descendant(id("1.1"), b) == kOmega);
  CHECK(idx.first_descendant(0, LabelSet::none()) == kOmega);

  CHECK(idx.first_following(id("1.1"), b, 0) == id("2.2"));
  CHECK(idx.first_following(id("2.2"), b, 0) == kOmega);
  CHECK(idx.first_following(id("2.2"), b, id("2.2")) == kOmega);
  CHECK_THROWS(idx.first_following(0, b, id("1")));

  CHECK(idx.first_on_left_spine(0, b) == id("1.1"));
  CHECK(idx.first_on_left_spine(0, LabelSet::of({L("c")})) == kOmega);
  CHECK(idx.first_on_left_spine(id("1.1.1"), b) == kOmega);

  CHECK(idx.first_on_right_spine(0, b) == id("2.2"));
  CHECK(idx.first_on_right_spine(0, LabelSet::of({L("a")})) == kOmega);
  CHECK(idx.first_on_right_spine(id("2.2.2"), b) == kOmega);

  CHECK(idx.topmost_matches(0, b) == std::vector<NodeId>{id("1.1"), id("2.2")});
  CHECK(idx.topmost_matches(0, LabelSet::of({L("a")})) == std::vector<NodeId>{id("1")});
  CHECK(idx.topmost_matches(0, LabelSet::none()).empty());

  CHECK(idx.label_count(b) == 2);
  CHECK(idx.label_count(LabelSet::none().with_leaf()) == 6);
  CHECK(idx.label_count(LabelSet::of({L("zz")})) == 0);

  std::vector<NodeId> leaves{id("1.1.1"), id("1.1.2"), id("1.2"),
                             id("2.1"),   id("2.2.1"), id("2.2.2")};
  CHECK(idx.leaves_in_order() == leaves);
}

TEST_CASE("leaf-only trees") {
  auto t = BinaryTree::leaf();
  JumpIndex idx(t);
  CHECK(idx.doc_alphabet().empty());
  CHECK(idx.leaves_in_order() == std::vector<NodeId>{0});
  CHECK(idx.first_descendant(0, LabelSet::all_plain()) == kOmega);

  auto two = BinaryTree::parse_term("a(b(#,#),#)");
  JumpIndex idx2(two);
  CHECK(idx2.doc_alphabet() == std::vector<LabelId>{L("a"), L("b")});
  CHECK(idx2.leaves_in_order() == std::vector<NodeId>{2, 3, 4});
  // a(#,#) leaves in order
  auto single = BinaryTree::parse_term("a(#,#)");
  JumpIndex idx3(single);
  CHECK(idx3.leaves_in_order() == std::vector<NodeId>{1, 2});
}

TEST_CASE("index agrees with the scan oracle") {
  std::vector<LabelId> alpha{L("a"), L("b"), L("c"), L("d")};
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 25; seed++) {
    auto t = random_tree(seed, 60, alpha, 0.35);
    JumpIndex idx(t);
    std::uniform_int_distribution<NodeId> node(0, t.node_count() - 1);
    std::uniform_int_distribution<int> mask(0, 15);
    for (int q = 0; q < 100; q++) {
      NodeId n = node(rng);
      std::vector<LabelId> pickset;
      int m = mask(rng);
      for (size_t i = 0; i < alpha.size(); i++)
        if (m & (1 << i)) pickset.push_back(alpha[i]);
      LabelSet ls = LabelSet::of(pickset);
      if (mask(rng) == 0) ls = ls.complement_plain(); // exercise co-finite sets

      CHECK(idx.first_descendant(n, ls) == scan_first_descendant(t, n, ls));
      CHECK(idx.first_on_left_spine(n, ls) == scan_spine(t, n, ls, 1));
      CHECK(idx.first_on_right_spine(n, ls) == scan_spine(t, n, ls, 2));

      // A scope ancestor-or-self of n.
      NodeId scope = n;
      while (t.parent(scope) != kNoNode && mask(rng) < 8) scope = t.parent(scope);
      CHECK(idx.first_following(n, ls, scope) == scan_first_following(t, n, ls, scope));

      NodeId d = idx.first_descendant(n, ls);
      if (d != kOmega) CHECK(t.in_subtree(d, n));

      // topmost results form an antichain covering all top-most matches.
      auto tops = idx.topmost_matches(n, ls);
      for (size_t i = 0; i < tops.size(); i++) {
        for (size_t j = i + 1; j < tops.size(); j++) {
          CHECK(!t.in_subtree(tops[j], tops[i]));
        }
      }
      for (NodeId x = n + 1; x < n + t.subtree_size(n); x++) {
        if (!ls.contains(t.label(x))) continue;
        bool covered = false;
        for (NodeId top : tops) {
          if (t.in_subtree(x, top)) covered = true;
        }
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("label set algebra") {
  auto a = L("a");
  auto b = L("b");
  auto ab = LabelSet::of({a, b});
  CHECK(ab.contains(a));
  CHECK(!ab.contains(L("zzz")));
  auto not_ab = ab.complement_plain();
  CHECK(!not_ab.contains(a));
  CHECK(not_ab.contains(L("zzz")));
  CHECK(not_ab.contains_generic_plain());
  CHECK(!not_ab.finite());
  CHECK(ab.intersect(not_ab).empty());
  CHECK(ab.unite(not_ab) == LabelSet::all_plain());

  CHECK(LabelSet::parse("{a,b}") == ab);
  CHECK(LabelSet::parse("~{b}") == LabelSet::of({b}).complement_plain());
  CHECK(LabelSet::parse(ab.to_string()) == ab);
  auto hatted = LabelSet::of({hatted_twin(a)}).unite(LabelSet::of({b}).complement_plain());
  CHECK(LabelSet::parse(hatted.to_string()) == hatted);
  CHECK(LabelSet::parse(LabelSet::all_elements().to_string()) == LabelSet::all_elements());

  // Recognizer-style set: {b^} together with all plain labels but b.
  CHECK(hatted.contains(hatted_twin(a)));
  CHECK(!hatted.contains(hatted_twin(b)));
  CHECK(hatted.contains(a));
  CHECK(!hatted.contains(b));
}
