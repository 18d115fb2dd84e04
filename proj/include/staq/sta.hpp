#ifndef STAQ_STA_HPP
#define STAQ_STA_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "staq/labels.hpp"
#include "staq/tree.hpp"

namespace staq {

using StateId = std::int32_t;

// One transition q, L -> (dst1, dst2). Selecting status is not stored here;
// it lives in the per-state selecting label sets of the automaton, so a
// transition printed with '=>' is one whose source selects on all of L.
struct StaTransition {
  StateId src;
  LabelSet labels;
  StateId dst1;
  StateId dst2;

  bool operator==(const StaTransition&) const = default;
};

// Selecting tree automaton over binary trees. Top states gate acceptance at
// the root, bottom states at '#' leaves; a node is selected by an accepting
// run when its state selects its label. Values are immutable in practice:
// every operation below returns a fresh automaton.
class Sta {
 public:
  Sta() = default;

  StateId add_state(std::string name = {});
  void set_top(StateId q, bool on = true);
  void set_bottom(StateId q, bool on = true);
  void add_selecting(StateId q, const LabelSet& labels);
  void add_transition(StateId src, const LabelSet& labels, StateId dst1, StateId dst2);

  std::int32_t state_count() const { return static_cast<std::int32_t>(names_.size()); }
  const std::string& state_name(StateId q) const { return names_[q]; }
  bool is_top(StateId q) const { return top_[q]; }
  bool is_bottom(StateId q) const { return bottom_[q]; }
  const LabelSet& selecting(StateId q) const { return selecting_[q]; }
  bool selects(StateId q, LabelId l) const { return selecting_[q].contains(l); }
  bool marks_anywhere(StateId q) const { return !selecting_[q].empty(); }
  const std::vector<StaTransition>& transitions() const { return transitions_; }

  std::vector<StateId> top_states() const;
  std::vector<StateId> bottom_states() const;

  // Destination pairs of (q, l) and source states of (q1, q2, l),
  // deduplicated.
  std::vector<std::pair<StateId, StateId>> destinations(StateId q, LabelId l) const;
  std::vector<StateId> sources(StateId q1, StateId q2, LabelId l) const;

  bool uses_hat_plane() const;

  bool operator==(const Sta&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<bool> top_;
  std::vector<bool> bottom_;
  std::vector<LabelSet> selecting_;
  std::vector<StaTransition> transitions_;
};

// A label class is either one explicit label or the generic remainder of a
// plane; transition behavior is uniform within a class.
struct LabelClass {
  LabelId label = kLeafLabel; // valid when !generic
  bool generic_plain = false;
  bool generic_hat = false;

  bool in(const LabelSet& ls) const {
    if (generic_plain) return ls.contains_generic_plain();
    if (generic_hat) return ls.contains_generic_hat();
    return ls.contains(label);
  }
  std::string to_string() const {
    if (generic_plain) return "<other>";
    if (generic_hat) return "<other^>";
    return label_name(label);
  }
};

// All classes needed to analyze `sta` exactly: every mentioned label plus
// the generic remainder of each plane in use.
std::vector<LabelClass> label_classes(const Sta& sta);

// Like destinations()/sources() but per class.
std::vector<std::pair<StateId, StateId>> destinations_class(const Sta& sta, StateId q,
                                                            const LabelClass& c);
std::vector<StateId> sources_class(const Sta& sta, StateId q1, StateId q2, const LabelClass& c);
bool selects_class(const Sta& sta, StateId q, const LabelClass& c);

struct StaKind {
  bool td_det = false;
  bool bu_det = false;
  bool td_complete = false;
  bool bu_complete = false;
};

StaKind check_kind(const Sta& sta);

// A total run plus its verdict. `states[n]` is the state at node n.
struct Run {
  std::vector<StateId> states;
  bool accepting = false;
  std::vector<NodeId> selected; // document order; empty unless accepting
};

// Unique run of a top-down deterministic, top-down complete automaton.
Run td_run(const Sta& sta, const BinaryTree& t);

// Unique run of a bottom-up deterministic, bottom-up complete automaton.
Run bu_run(const Sta& sta, const BinaryTree& t);

struct ExhaustiveBounds {
  int max_elements = 18;
  int max_states = 8;
};

// Ground truth for arbitrary (nondeterministic) automata: the union over
// all accepting runs of their selected nodes, by dynamic programming over
// realizable (node, state) pairs.
std::set<NodeId> selected_nodes_exhaustive(const Sta& sta, const BinaryTree& t,
                                           const ExhaustiveBounds& bounds = {});

// Whether some accepting run exists, same machinery.
bool accepts_exhaustive(const Sta& sta, const BinaryTree& t, const ExhaustiveBounds& bounds = {});

// Restriction to new top states `qs`: keeps exactly the states reachable
// from `qs` through transitions, renumbering them; bottom/selecting/
// transitions are restricted accordingly.
Sta restrict_to(const Sta& sta, const std::vector<StateId>& qs);

struct StateClass {
  bool non_changing = false;
  bool td_universal = false;
  bool bu_universal = false;
  bool td_sink = false;
  bool bu_sink = false;
};

StateClass classify_state(const Sta& sta, StateId q);

// Labels on which q can leave its (q,q) self-loop, plus the labels it
// selects; a selection is observable even without a state change.
LabelSet essential_labels(const Sta& sta, StateId q);

// Adds a sink state and transitions so that every (state, label) has at
// least one destination pair. `include_hat_plane` widens completion to the
// hatted alphabet. Returns the automaton unchanged if already complete.
Sta completed(const Sta& sta, bool include_hat_plane = false);

// States whose downward language is nonempty / that are realized by at
// least one tree (bottom-up reachable).
std::vector<bool> nonempty_language_states(const Sta& sta);
std::vector<bool> inhabited_states(const Sta& sta);

// The unique top-down universal / sink state of a minimal automaton, if any.
std::optional<StateId> find_td_universal(const Sta& sta);
std::optional<StateId> find_td_sink(const Sta& sta);

} // namespace staq

#endif
