#include <doctest.h>

#include <random>

#include "staq/tree.hpp"
#include "staq/xml.hpp"

using namespace staq;

namespace {

LabelId L(const char* s) { return intern_label(s); }

// Random element-only document for round-trip checks.
UnrankedDoc random_doc(std::uint64_t seed, int max_elems) {
  std::mt19937_64 rng(seed);
  std::vector<UnrankedDoc::Elem> elems;
  std::vector<LabelId> labels{L("a"), L("b"), L("c"), L("d")};
  std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
  int budget = max_elems - 1;
  elems.push_back({labels[pick(rng)], kNoNode, {}});
  std::vector<NodeId> frontier{0};
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (budget > 0 && !frontier.empty()) {
    std::uniform_int_distribution<size_t> fp(0, frontier.size() - 1);
    NodeId parent = frontier[fp(rng)];
    NodeId id = static_cast<NodeId>(elems.size());
    elems.push_back({labels[pick(rng)], parent, {}});
    elems[parent].children.push_back(id);
    frontier.push_back(id);
    if (coin(rng) < 0.3) frontier.erase(frontier.begin() + static_cast<long>(fp(rng) % frontier.size()));
    budget--;
  }
  // Children lists must be in document order; rebuild pre-order ids.
  // The construction above appends children in creation order, which is not
  // pre-order for ids, so renumber by a DFS.
  std::vector<UnrankedDoc::Elem> out;
  std::vector<NodeId> remap(elems.size(), kNoNode);
  struct Frame { NodeId old_id; NodeId new_parent; };
  std::vector<Frame> stack{{0, kNoNode}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    NodeId nid = static_cast<NodeId>(out.size());
    remap[f.old_id] = nid;
    out.push_back({elems[f.old_id].label, f.new_parent, {}});
    if (f.new_parent != kNoNode) out[f.new_parent].children.push_back(nid);
    const auto& kids = elems[f.old_id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, nid});
  }
  return UnrankedDoc(std::move(out));
}

} // namespace

TEST_CASE("xml parsing happy paths") {
  auto doc = parse_doc("<a><b/><c/></a>");
  REQUIRE(doc.size() == 3);
  CHECK(label_name(doc.label(0)) == "a");
  REQUIRE(doc.elem(0).children.size() == 2);
  CHECK(label_name(doc.label(doc.elem(0).children[0])) == "b");
  CHECK(label_name(doc.label(doc.elem(0).children[1])) == "c");

  auto single = parse_doc("<a/>");
  CHECK(single.size() == 1);
  CHECK(label_name(single.label(0)) == "a");

  auto ws = parse_doc("  <a>\n  <b/>\n</a>\n");
  CHECK(ws.size() == 2);
}

TEST_CASE("xml parse errors") {
  CHECK_THROWS_WITH_AS(parse_doc("<a><b></a></b>"),
                       doctest::Contains("mismatched tag"), XmlParseError);
  CHECK_THROWS_AS(parse_doc("<a>text</a>"), XmlParseError);
  CHECK_THROWS_AS(parse_doc("<a x=\"1\"/>"), XmlParseError);
  CHECK_THROWS_AS(parse_doc("<?xml version=\"1.0\"?><a/>"), XmlParseError);
  CHECK_THROWS_AS(parse_doc("<a>"), XmlParseError);
  CHECK_THROWS_AS(parse_doc(""), XmlParseError);
  CHECK_THROWS_AS(parse_doc("<a/><b/>"), XmlParseError);
  try {
    parse_doc("<a>boom</a>");
    FAIL("expected parse error");
  } catch (const XmlParseError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("first-child/next-sibling encoding") {
  CHECK(to_binary(parse_doc("<a><b/><c/></a>")).tree.to_term() == "a(b(#,c(#,#)),#)");
  CHECK(to_binary(parse_doc("<a/>")).tree.to_term() == "a(#,#)");
  CHECK(to_binary(parse_doc("<a><b><d/></b><c/></a>")).tree.to_term() ==
        "a(b(d(#,#),c(#,#)),#)");
}

TEST_CASE("encoding round trip on random documents") {
  for (std::uint64_t seed = 0; seed < 50; seed++) {
    auto doc = random_doc(seed, 40);
    auto bin = to_binary(doc);
    auto back = from_binary(bin.tree);
    REQUIRE(back.size() == doc.size());
    for (NodeId i = 0; i < doc.size(); i++) {
      CHECK(back.label(i) == doc.label(i));
      CHECK(back.elem(i).parent == doc.elem(i).parent);
      CHECK(back.elem(i).children == doc.elem(i).children);
    }
    // Document order of elements survives the encoding.
    for (NodeId i = 1; i < doc.size(); i++)
      CHECK(bin.elem_to_node[i - 1] < bin.elem_to_node[i]);
  }
}

TEST_CASE("term parser round trip") {
  const char* terms[] = {"#", "a(#,#)", "a(b(#,#),#)", "a(a(b(#,#),#),c(#,b(#,#)))"};
  for (const char* s : terms) {
    CHECK(BinaryTree::parse_term(s).to_term() == s);
  }
  CHECK_THROWS(BinaryTree::parse_term("a(#)"));
  CHECK_THROWS(BinaryTree::parse_term("a(#,#) junk"));
}

TEST_CASE("substitute") {
  auto t = BinaryTree::parse_term("a(b(#,#),#)");
  auto c = BinaryTree::parse_term("c(#,#)");

  CHECK(t.substitute(0, c).to_term() == "c(#,#)");
  auto at1 = t.id_of(NodePath::of({1}));
  REQUIRE(at1.has_value());
  CHECK(t.substitute(*at1, c).to_term() == "a(c(#,#),#)");
  CHECK_THROWS_AS(t.substitute(99, c), std::out_of_range);

  // Identity: replacing a subtree by itself is a no-op.
  auto t2 = BinaryTree::parse_term("a(a(b(#,#),#),c(#,b(#,#)))");
  for (NodeId n = 0; n < t2.node_count(); n++) {
    CHECK(t2.substitute(n, t2.subtree(n)) == t2);
  }

  // Composition: t[pi <- (t|pi)[i <- t']] == t[pi.i <- t'].
  for (NodeId n = 0; n < t2.node_count(); n++) {
    if (t2.is_leaf(n)) continue;
    for (int i : {1, 2}) {
      NodeId child = t2.child(n, i);
      auto inner = t2.subtree(n).substitute(child - n, c);
      CHECK(t2.substitute(n, inner) == t2.substitute(child, c));
    }
  }
}

TEST_CASE("document order on paths") {
  CHECK(doc_order_cmp(NodePath::root(), NodePath::of({1})) == Ordering::Lt);
  CHECK(doc_order_cmp(NodePath::of({1, 2}), NodePath::of({2})) == Ordering::Lt);
  CHECK(doc_order_cmp(NodePath::of({2, 1}), NodePath::of({2, 1})) == Ordering::Eq);

  // Path order coincides with pre-order ids.
  auto t = random_tree(7, 60, {L("a"), L("b"), L("c")});
  for (NodeId x = 0; x < t.node_count(); x++) {
    for (NodeId y = 0; y < t.node_count(); y++) {
      auto expect = x < y ? Ordering::Lt : x > y ? Ordering::Gt : Ordering::Eq;
      CHECK(doc_order_cmp(t.path_of(x), t.path_of(y)) == expect);
    }
  }
}

TEST_CASE("path <-> id round trip") {
  auto t = BinaryTree::parse_term("a(a(b(#,#),#),c(#,b(#,#)))");
  for (NodeId n = 0; n < t.node_count(); n++) {
    auto id = t.id_of(t.path_of(n));
    REQUIRE(id.has_value());
    CHECK(*id == n);
  }
  CHECK(!t.id_of(NodePath::of({1, 1, 1, 1})).has_value());
  CHECK(NodePath::parse("1.2").to_string() == "1.2");
  CHECK(NodePath::parse("eps").is_root());
}

TEST_CASE("random trees are deterministic and bounded") {
  std::vector<LabelId> ab{L("a"), L("b")};
  auto t1 = random_tree(42, 50, ab);
  auto t2 = random_tree(42, 50, ab);
  CHECK(t1 == t2);
  CHECK(t1.element_count() <= 50);

  auto small = random_tree(3, 1, ab);
  CHECK(small.element_count() <= 1);
  CHECK(random_tree(3, 1, ab) == small);

  CHECK_THROWS(random_tree(1, 5, {}));
  CHECK_THROWS(random_tree(1, 0, ab));

  // Every internal node has two children.
  auto t = random_tree(11, 80, ab);
  for (NodeId n = 0; n < t.node_count(); n++) {
    if (t.is_leaf(n)) {
      CHECK(t.child(n, 1) == kNoNode);
      CHECK(t.child(n, 2) == kNoNode);
    } else {
      CHECK(t.child(n, 1) != kNoNode);
      CHECK(t.child(n, 2) != kNoNode);
    }
  }
}
