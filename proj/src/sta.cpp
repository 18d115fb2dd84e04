#include "staq/sta.hpp"

#include <algorithm>
#include <stdexcept>

namespace staq {

StateId Sta::add_state(std::string name) {
  StateId q = static_cast<StateId>(names_.size());
  if (name.empty()) name = "q" + std::to_string(q);
  names_.push_back(std::move(name));
  top_.push_back(false);
  bottom_.push_back(false);
  selecting_.push_back(LabelSet::none());
  return q;
}

void Sta::set_top(StateId q, bool on) { top_[q] = on; }
void Sta::set_bottom(StateId q, bool on) { bottom_[q] = on; }

void Sta::add_selecting(StateId q, const LabelSet& labels) {
  if (labels.contains_leaf()) throw std::invalid_argument("cannot select on '#'");
  selecting_[q] = selecting_[q].unite(labels);
}

void Sta::add_transition(StateId src, const LabelSet& labels, StateId dst1, StateId dst2) {
  if (labels.empty()) throw std::invalid_argument("transition label set must be non-empty");
  if (labels.contains_leaf()) throw std::invalid_argument("transition on '#'");
  transitions_.push_back({src, labels, dst1, dst2});
}

std::vector<StateId> Sta::top_states() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < state_count(); q++)
    if (top_[q]) out.push_back(q);
  return out;
}

std::vector<StateId> Sta::bottom_states() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < state_count(); q++)
    if (bottom_[q]) out.push_back(q);
  return out;
}

std::vector<std::pair<StateId, StateId>> Sta::destinations(StateId q, LabelId l) const {
  std::vector<std::pair<StateId, StateId>> out;
  for (const auto& tr : transitions_) {
    if (tr.src != q || !tr.labels.contains(l)) continue;
    std::pair<StateId, StateId> p{tr.dst1, tr.dst2};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<StateId> Sta::sources(StateId q1, StateId q2, LabelId l) const {
  std::vector<StateId> out;
  for (const auto& tr : transitions_) {
    if (tr.dst1 != q1 || tr.dst2 != q2 || !tr.labels.contains(l)) continue;
    if (std::find(out.begin(), out.end(), tr.src) == out.end()) out.push_back(tr.src);
  }
  return out;
}

bool Sta::uses_hat_plane() const {
  for (const auto& tr : transitions_) {
    if (tr.labels.contains_generic_hat() || !tr.labels.intersect(LabelSet::all_elements().minus(LabelSet::all_plain())).empty())
      return true;
  }
  for (const auto& sel : selecting_) {
    if (sel.contains_generic_hat() ||
        !sel.intersect(LabelSet::all_elements().minus(LabelSet::all_plain())).empty())
      return true;
  }
  return false;
}

std::vector<LabelClass> label_classes(const Sta& sta) {
  std::set<LabelId> mentioned;
  bool plain_open = false, hat_open = false;
  auto absorb = [&](const LabelSet& ls) {
    for (LabelId l : ls.mentioned_labels()) mentioned.insert(l);
    if (ls.contains_generic_plain()) plain_open = true;
    if (ls.contains_generic_hat()) hat_open = true;
  };
  for (const auto& tr : sta.transitions()) absorb(tr.labels);
  for (StateId q = 0; q < sta.state_count(); q++) absorb(sta.selecting(q));

  std::vector<LabelClass> out;
  for (LabelId l : mentioned) out.push_back(LabelClass{l, false, false});
  // The generic remainder matters whenever any set is co-finite on a plane;
  // it also matters for completeness checks, so always include the plain
  // remainder and include the hat remainder when the plane is in use.
  (void)plain_open;
  out.push_back(LabelClass{kLeafLabel, true, false});
  bool uses_hats = hat_open;
  for (LabelId l : mentioned)
    if (is_hatted(l)) uses_hats = true;
  if (uses_hats) out.push_back(LabelClass{kLeafLabel, false, true});
  return out;
}

std::vector<std::pair<StateId, StateId>> destinations_class(const Sta& sta, StateId q,
                                                            const LabelClass& c) {
  std::vector<std::pair<StateId, StateId>> out;
  for (const auto& tr : sta.transitions()) {
    if (tr.src != q || !c.in(tr.labels)) continue;
    std::pair<StateId, StateId> p{tr.dst1, tr.dst2};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<StateId> sources_class(const Sta& sta, StateId q1, StateId q2, const LabelClass& c) {
  std::vector<StateId> out;
  for (const auto& tr : sta.transitions()) {
    if (tr.dst1 != q1 || tr.dst2 != q2 || !c.in(tr.labels)) continue;
    if (std::find(out.begin(), out.end(), tr.src) == out.end()) out.push_back(tr.src);
  }
  return out;
}

bool selects_class(const Sta& sta, StateId q, const LabelClass& c) {
  return c.in(sta.selecting(q));
}

StaKind check_kind(const Sta& sta) {
  StaKind k;
  auto classes = label_classes(sta);
  bool td_unique = true, td_nonempty = true, bu_unique = true, bu_nonempty = true;
  for (StateId q = 0; q < sta.state_count(); q++) {
    for (const auto& c : classes) {
      auto d = destinations_class(sta, q, c);
      if (d.size() != 1) td_unique = d.empty() ? td_unique : false;
      if (d.size() > 1) td_unique = false;
      if (d.empty()) td_nonempty = false;
    }
  }
  for (StateId q1 = 0; q1 < sta.state_count(); q1++) {
    for (StateId q2 = 0; q2 < sta.state_count(); q2++) {
      for (const auto& c : classes) {
        auto s = sources_class(sta, q1, q2, c);
        if (s.size() > 1) bu_unique = false;
        if (s.empty()) bu_nonempty = false;
      }
    }
  }
  k.td_det = td_unique && td_nonempty && sta.top_states().size() == 1;
  k.td_complete = td_nonempty;
  k.bu_det = bu_unique && bu_nonempty && sta.bottom_states().size() == 1;
  k.bu_complete = bu_nonempty;
  return k;
}

Run td_run(const Sta& sta, const BinaryTree& t) {
  auto tops = sta.top_states();
  if (tops.size() != 1) throw std::invalid_argument("td_run needs a unique top state");
  Run run;
  run.states.assign(t.node_count(), -1);
  run.states[0] = tops[0];
  bool ok = true;
  for (NodeId n = 0; n < t.node_count(); n++) {
    StateId q = run.states[n];
    if (t.is_leaf(n)) {
      if (!sta.is_bottom(q)) ok = false;
      continue;
    }
    auto d = sta.destinations(q, t.label(n));
    if (d.size() != 1)
      throw std::invalid_argument("td_run needs a deterministic complete automaton");
    run.states[t.child(n, 1)] = d[0].first;
    run.states[t.child(n, 2)] = d[0].second;
  }
  run.accepting = ok;
  if (ok) {
    for (NodeId n = 0; n < t.node_count(); n++) {
      if (!t.is_leaf(n) && sta.selects(run.states[n], t.label(n))) run.selected.push_back(n);
    }
  }
  return run;
}

Run bu_run(const Sta& sta, const BinaryTree& t) {
  auto bottoms = sta.bottom_states();
  if (bottoms.size() != 1) throw std::invalid_argument("bu_run needs a unique bottom state");
  Run run;
  run.states.assign(t.node_count(), -1);
  for (NodeId n = t.node_count() - 1; n >= 0; n--) {
    if (t.is_leaf(n)) {
      run.states[n] = bottoms[0];
      continue;
    }
    StateId q1 = run.states[t.child(n, 1)];
    StateId q2 = run.states[t.child(n, 2)];
    auto s = sta.sources(q1, q2, t.label(n));
    if (s.size() != 1)
      throw std::invalid_argument("bu_run needs a deterministic complete automaton");
    run.states[n] = s[0];
  }
  run.accepting = sta.is_top(run.states[0]);
  if (run.accepting) {
    for (NodeId n = 0; n < t.node_count(); n++) {
      if (!t.is_leaf(n) && sta.selects(run.states[n], t.label(n))) run.selected.push_back(n);
    }
  }
  return run;
}

namespace {

void check_bounds(const Sta& sta, const BinaryTree& t, const ExhaustiveBounds& bounds) {
  if (t.element_count() > bounds.max_elements)
    throw std::invalid_argument("exhaustive evaluation: tree exceeds bound");
  if (sta.state_count() > bounds.max_states)
    throw std::invalid_argument("exhaustive evaluation: automaton exceeds bound");
}

// below[n][q]: the subtree at n admits a run from q with '#' leaves in B.
std::vector<std::vector<bool>> below_table(const Sta& sta, const BinaryTree& t) {
  std::vector<std::vector<bool>> below(t.node_count(),
                                       std::vector<bool>(sta.state_count(), false));
  for (NodeId n = t.node_count() - 1; n >= 0; n--) {
    for (StateId q = 0; q < sta.state_count(); q++) {
      if (t.is_leaf(n)) {
        below[n][q] = sta.is_bottom(q);
        continue;
      }
      bool ok = false;
      for (auto [d1, d2] : sta.destinations(q, t.label(n))) {
        if (below[t.child(n, 1)][d1] && below[t.child(n, 2)][d2]) {
          ok = true;
          break;
        }
      }
      below[n][q] = ok;
    }
  }
  return below;
}

} // namespace

std::set<NodeId> selected_nodes_exhaustive(const Sta& sta, const BinaryTree& t,
                                           const ExhaustiveBounds& bounds) {
  check_bounds(sta, t, bounds);
  auto below = below_table(sta, t);

  // ctx[n][q]: some accepting run assigns q at n (given the subtree admits
  // it); wave from the root.
  std::vector<std::vector<bool>> ctx(t.node_count(), std::vector<bool>(sta.state_count(), false));
  for (StateId q : sta.top_states()) ctx[0][q] = below[0][q];
  for (NodeId n = 0; n < t.node_count(); n++) {
    if (t.is_leaf(n)) continue;
    NodeId c1 = t.child(n, 1), c2 = t.child(n, 2);
    for (StateId q = 0; q < sta.state_count(); q++) {
      if (!ctx[n][q]) continue;
      for (auto [d1, d2] : sta.destinations(q, t.label(n))) {
        if (below[c1][d1] && below[c2][d2]) {
          ctx[c1][d1] = true;
          ctx[c2][d2] = true;
        }
      }
    }
  }

  std::set<NodeId> out;
  for (NodeId n = 0; n < t.node_count(); n++) {
    if (t.is_leaf(n)) continue;
    for (StateId q = 0; q < sta.state_count(); q++) {
      if (ctx[n][q] && sta.selects(q, t.label(n))) {
        out.insert(n);
        break;
      }
    }
  }
  return out;
}

bool accepts_exhaustive(const Sta& sta, const BinaryTree& t, const ExhaustiveBounds& bounds) {
  check_bounds(sta, t, bounds);
  auto below = below_table(sta, t);
  for (StateId q : sta.top_states())
    if (below[0][q]) return true;
  return false;
}

Sta restrict_to(const Sta& sta, const std::vector<StateId>& qs) {
  std::vector<bool> keep(sta.state_count(), false);
  std::vector<StateId> work = qs;
  for (StateId q : work) keep[q] = true;
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (const auto& tr : sta.transitions()) {
      if (tr.src != q) continue;
      for (StateId d : {tr.dst1, tr.dst2}) {
        if (!keep[d]) {
          keep[d] = true;
          work.push_back(d);
        }
      }
    }
  }
  std::vector<StateId> remap(sta.state_count(), -1);
  Sta out;
  for (StateId q = 0; q < sta.state_count(); q++) {
    if (!keep[q]) continue;
    remap[q] = out.add_state(sta.state_name(q));
    out.set_bottom(remap[q], sta.is_bottom(q));
    if (!sta.selecting(q).empty()) out.add_selecting(remap[q], sta.selecting(q));
  }
  for (StateId q : qs) out.set_top(remap[q], true);
  for (const auto& tr : sta.transitions()) {
    if (keep[tr.src]) out.add_transition(remap[tr.src], tr.labels, remap[tr.dst1], remap[tr.dst2]);
  }
  return out;
}

StateClass classify_state(const Sta& sta, StateId q) {
  StateClass c;
  bool non_changing = true;
  for (const auto& cl : label_classes(sta)) {
    if (cl.generic_hat && !sta.uses_hat_plane()) continue;
    auto d = destinations_class(sta, q, cl);
    if (d.size() != 1 || d[0] != std::pair<StateId, StateId>{q, q}) {
      non_changing = false;
      break;
    }
  }
  c.non_changing = non_changing;
  if (non_changing) {
    c.td_universal = sta.is_bottom(q);
    c.td_sink = !sta.is_bottom(q);
    c.bu_universal = sta.is_top(q);
    c.bu_sink = !sta.is_top(q);
  }
  return c;
}

LabelSet essential_labels(const Sta& sta, StateId q) {
  LabelSet out = sta.selecting(q);
  for (const auto& tr : sta.transitions()) {
    if (tr.src != q) continue;
    if (tr.dst1 == q && tr.dst2 == q) continue;
    out = out.unite(tr.labels);
  }
  return out;
}

Sta completed(const Sta& sta, bool include_hat_plane) {
  LabelSet universe = include_hat_plane ? LabelSet::all_elements() : LabelSet::all_plain();
  // Find the per-state gap first; only add a sink if some gap exists.
  std::vector<LabelSet> gaps(sta.state_count());
  bool any_gap = false;
  for (StateId q = 0; q < sta.state_count(); q++) {
    LabelSet covered = LabelSet::none();
    for (const auto& tr : sta.transitions()) {
      if (tr.src == q) covered = covered.unite(tr.labels);
    }
    gaps[q] = universe.minus(covered);
    if (!gaps[q].empty()) any_gap = true;
  }
  if (!any_gap) return sta;
  Sta out = sta;
  StateId sink = out.add_state("qsink");
  for (StateId q = 0; q < sta.state_count(); q++) {
    if (!gaps[q].empty()) out.add_transition(q, gaps[q], sink, sink);
  }
  out.add_transition(sink, universe, sink, sink);
  return out;
}

std::vector<bool> nonempty_language_states(const Sta& sta) {
  std::vector<bool> ne(sta.state_count(), false);
  for (StateId q = 0; q < sta.state_count(); q++) ne[q] = sta.is_bottom(q);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& tr : sta.transitions()) {
      if (!ne[tr.src] && ne[tr.dst1] && ne[tr.dst2]) {
        ne[tr.src] = true;
        changed = true;
      }
    }
  }
  return ne;
}

std::vector<bool> inhabited_states(const Sta& sta) {
  // Same fixpoint: a state is realized by some subtree iff its language is
  // nonempty when read downward.
  return nonempty_language_states(sta);
}

std::optional<StateId> find_td_universal(const Sta& sta) {
  for (StateId q = 0; q < sta.state_count(); q++) {
    if (classify_state(sta, q).td_universal) return q;
  }
  return std::nullopt;
}

std::optional<StateId> find_td_sink(const Sta& sta) {
  for (StateId q = 0; q < sta.state_count(); q++) {
    if (classify_state(sta, q).td_sink) return q;
  }
  return std::nullopt;
}

} // namespace staq
