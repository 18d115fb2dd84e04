#ifndef STAQ_LABELS_HPP
#define STAQ_LABELS_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace staq {

// Interned tree labels. Id 0 is reserved for the leaf symbol '#', which is
// never an element name. Every element label has a "hatted" twin living in a
// separate plane; hatted labels only appear in recognizer automata and in
// relabeled fixture trees, never in parsed documents.
using LabelId = std::uint32_t;

inline constexpr LabelId kLeafLabel = 0;

LabelId intern_label(std::string_view name);
LabelId intern_hatted(std::string_view name);

bool is_hatted(LabelId id);
LabelId hatted_twin(LabelId id); // a  -> a^
LabelId plain_twin(LabelId id);  // a^ -> a

// Printable name; hatted labels render as "a^", the leaf as "#".
std::string label_name(LabelId id);

// Accepts "a", "a^" and "#".
LabelId parse_label(std::string_view text);

// A set of labels, closed under complement, union and intersection.
// Each element plane (plain / hatted) is independently either a finite set
// or the complement of one; the alphabet is treated as open-ended, so a
// co-finite plane contains every label not explicitly excluded. The leaf
// symbol '#' is tracked separately and is never included by complementing
// an element plane.
class LabelSet {
 public:
  LabelSet() = default;

  static LabelSet none() { return LabelSet(); }
  static LabelSet of(std::initializer_list<LabelId> ids);
  static LabelSet of(const std::vector<LabelId>& ids);
  // All plain element labels (the whole alphabet).
  static LabelSet all_plain();
  // All plain and hatted element labels.
  static LabelSet all_elements();

  bool contains(LabelId id) const;
  bool contains_generic_plain() const { return plain_cofinite_; }
  bool contains_generic_hat() const { return hat_cofinite_; }
  bool contains_leaf() const { return leaf_; }

  bool empty() const;
  // True when both element planes are finite (leaf flag ignored).
  bool finite() const { return !plain_cofinite_ && !hat_cofinite_; }

  // Complement of both element planes; the leaf flag is left untouched.
  LabelSet complement_elements() const;
  // Complement within the plain plane only (hat plane and leaf preserved).
  LabelSet complement_plain() const;

  LabelSet unite(const LabelSet& other) const;
  LabelSet intersect(const LabelSet& other) const;
  LabelSet minus(const LabelSet& other) const { return intersect(other.complement_all()); }

  LabelSet with_leaf(bool leaf = true) const;

  bool operator==(const LabelSet& other) const = default;

  // Finite members of both planes (valid when finite()).
  std::vector<LabelId> explicit_members() const;
  // Labels mentioned explicitly, whether included (finite plane) or
  // excluded (co-finite plane). Used to build label partitions.
  std::vector<LabelId> mentioned_labels() const;

  // Members restricted to a concrete universe of labels; resolves co-finite
  // planes against it. The universe must not contain '#'.
  std::vector<LabelId> members_within(const std::vector<LabelId>& universe) const;

  std::string to_string() const;
  static LabelSet parse(std::string_view text);

 private:
  LabelSet complement_all() const; // both planes and the leaf flag

  // Sorted, unique.
  std::vector<LabelId> plain_;
  std::vector<LabelId> hat_;
  bool plain_cofinite_ = false;
  bool hat_cofinite_ = false;
  bool leaf_ = false;
};

} // namespace staq

#endif
