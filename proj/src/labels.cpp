#include "staq/labels.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace staq {

namespace {

struct Registry {
  std::mutex mu;
  std::vector<std::string> names;        // index = id
  std::vector<bool> hat;                 // index = id
  std::vector<LabelId> twin;             // plain<->hatted, 0 = none yet
  std::unordered_map<std::string, LabelId> by_key; // key = name + ('^' if hatted)

  Registry() {
    names.push_back("#");
    hat.push_back(false);
    twin.push_back(0);
    by_key.emplace("#", kLeafLabel);
  }

  LabelId intern(std::string_view name, bool hatted) {
    if (name == "#") {
      if (hatted) throw std::invalid_argument("leaf symbol cannot be hatted");
      return kLeafLabel;
    }
    std::string key(name);
    if (hatted) key.push_back('^');
    std::lock_guard<std::mutex> lock(mu);
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    LabelId id = static_cast<LabelId>(names.size());
    names.emplace_back(name);
    hat.push_back(hatted);
    twin.push_back(0);
    by_key.emplace(std::move(key), id);
    return id;
  }
};

Registry& reg() {
  static Registry* r = new Registry();
  return *r;
}

} // namespace

LabelId intern_label(std::string_view name) { return reg().intern(name, false); }
LabelId intern_hatted(std::string_view name) { return reg().intern(name, true); }

bool is_hatted(LabelId id) {
  std::lock_guard<std::mutex> lock(reg().mu);
  return reg().hat.at(id);
}

LabelId hatted_twin(LabelId id) {
  if (id == kLeafLabel) throw std::invalid_argument("leaf symbol cannot be hatted");
  auto& r = reg();
  std::string name;
  {
    std::lock_guard<std::mutex> lock(r.mu);
    if (r.hat.at(id)) return id;
    if (r.twin[id] != 0) return r.twin[id];
    name = r.names[id];
  }
  LabelId h = r.intern(name, true);
  std::lock_guard<std::mutex> lock(r.mu);
  r.twin[id] = h;
  r.twin[h] = id;
  return h;
}

LabelId plain_twin(LabelId id) {
  auto& r = reg();
  std::string name;
  {
    std::lock_guard<std::mutex> lock(r.mu);
    if (!r.hat.at(id)) return id;
    if (r.twin[id] != 0) return r.twin[id];
    name = r.names[id];
  }
  LabelId p = r.intern(name, false);
  std::lock_guard<std::mutex> lock(r.mu);
  r.twin[id] = p;
  r.twin[p] = id;
  return p;
}

std::string label_name(LabelId id) {
  auto& r = reg();
  std::lock_guard<std::mutex> lock(r.mu);
  std::string out = r.names.at(id);
  if (r.hat[id]) out.push_back('^');
  return out;
}

LabelId parse_label(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty label");
  if (text == "#") return kLeafLabel;
  if (text.back() == '^') return intern_hatted(text.substr(0, text.size() - 1));
  return intern_label(text);
}

namespace {

void insert_sorted(std::vector<LabelId>& v, LabelId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

bool sorted_contains(const std::vector<LabelId>& v, LabelId id) {
  return std::binary_search(v.begin(), v.end(), id);
}

std::vector<LabelId> sorted_union(const std::vector<LabelId>& a, const std::vector<LabelId>& b) {
  std::vector<LabelId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<LabelId> sorted_intersection(const std::vector<LabelId>& a,
                                         const std::vector<LabelId>& b) {
  std::vector<LabelId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<LabelId> sorted_difference(const std::vector<LabelId>& a,
                                       const std::vector<LabelId>& b) {
  std::vector<LabelId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Combines one plane of two sets: (finite? members) op (finite? members).
void plane_union(bool ac, const std::vector<LabelId>& a, bool bc, const std::vector<LabelId>& b,
                 bool& oc, std::vector<LabelId>& o) {
  if (!ac && !bc) {
    oc = false;
    o = sorted_union(a, b);
  } else if (ac && bc) {
    oc = true;
    o = sorted_intersection(a, b); // excluded by both
  } else if (ac) {
    oc = true;
    o = sorted_difference(a, b); // excluded by a and not included by b
  } else {
    oc = true;
    o = sorted_difference(b, a);
  }
}

void plane_intersection(bool ac, const std::vector<LabelId>& a, bool bc,
                        const std::vector<LabelId>& b, bool& oc, std::vector<LabelId>& o) {
  if (!ac && !bc) {
    oc = false;
    o = sorted_intersection(a, b);
  } else if (ac && bc) {
    oc = true;
    o = sorted_union(a, b);
  } else if (ac) {
    oc = false;
    o = sorted_difference(b, a); // in b, not excluded by a
  } else {
    oc = false;
    o = sorted_difference(a, b);
  }
}

} // namespace

LabelSet LabelSet::of(std::initializer_list<LabelId> ids) {
  return of(std::vector<LabelId>(ids));
}

LabelSet LabelSet::of(const std::vector<LabelId>& ids) {
  LabelSet s;
  for (LabelId id : ids) {
    if (id == kLeafLabel) {
      s.leaf_ = true;
    } else if (is_hatted(id)) {
      insert_sorted(s.hat_, id);
    } else {
      insert_sorted(s.plain_, id);
    }
  }
  return s;
}

LabelSet LabelSet::all_plain() {
  LabelSet s;
  s.plain_cofinite_ = true;
  return s;
}

LabelSet LabelSet::all_elements() {
  LabelSet s;
  s.plain_cofinite_ = true;
  s.hat_cofinite_ = true;
  return s;
}

bool LabelSet::contains(LabelId id) const {
  if (id == kLeafLabel) return leaf_;
  if (is_hatted(id)) return hat_cofinite_ != sorted_contains(hat_, id);
  return plain_cofinite_ != sorted_contains(plain_, id);
}

bool LabelSet::empty() const {
  return !plain_cofinite_ && !hat_cofinite_ && plain_.empty() && hat_.empty() && !leaf_;
}

LabelSet LabelSet::complement_elements() const {
  LabelSet s = *this;
  s.plain_cofinite_ = !s.plain_cofinite_;
  s.hat_cofinite_ = !s.hat_cofinite_;
  return s;
}

LabelSet LabelSet::complement_plain() const {
  LabelSet s = *this;
  s.plain_cofinite_ = !s.plain_cofinite_;
  return s;
}

LabelSet LabelSet::complement_all() const {
  LabelSet s = complement_elements();
  s.leaf_ = !s.leaf_;
  return s;
}

LabelSet LabelSet::unite(const LabelSet& other) const {
  LabelSet s;
  plane_union(plain_cofinite_, plain_, other.plain_cofinite_, other.plain_, s.plain_cofinite_,
              s.plain_);
  plane_union(hat_cofinite_, hat_, other.hat_cofinite_, other.hat_, s.hat_cofinite_, s.hat_);
  s.leaf_ = leaf_ || other.leaf_;
  return s;
}

LabelSet LabelSet::intersect(const LabelSet& other) const {
  LabelSet s;
  plane_intersection(plain_cofinite_, plain_, other.plain_cofinite_, other.plain_,
                     s.plain_cofinite_, s.plain_);
  plane_intersection(hat_cofinite_, hat_, other.hat_cofinite_, other.hat_, s.hat_cofinite_,
                     s.hat_);
  s.leaf_ = leaf_ && other.leaf_;
  return s;
}

LabelSet LabelSet::with_leaf(bool leaf) const {
  LabelSet s = *this;
  s.leaf_ = leaf;
  return s;
}

std::vector<LabelId> LabelSet::explicit_members() const {
  std::vector<LabelId> out;
  if (!plain_cofinite_) out.insert(out.end(), plain_.begin(), plain_.end());
  if (!hat_cofinite_) out.insert(out.end(), hat_.begin(), hat_.end());
  if (leaf_) out.push_back(kLeafLabel);
  return out;
}

std::vector<LabelId> LabelSet::mentioned_labels() const {
  std::vector<LabelId> out;
  out.insert(out.end(), plain_.begin(), plain_.end());
  out.insert(out.end(), hat_.begin(), hat_.end());
  return out;
}

std::vector<LabelId> LabelSet::members_within(const std::vector<LabelId>& universe) const {
  std::vector<LabelId> out;
  for (LabelId id : universe) {
    if (id != kLeafLabel && contains(id)) out.push_back(id);
  }
  if (leaf_) out.push_back(kLeafLabel);
  return out;
}

std::string LabelSet::to_string() const {
  auto plane = [](bool cof, const std::vector<LabelId>& v) {
    std::string out = cof ? "~{" : "{";
    bool first = true;
    for (LabelId id : v) {
      if (!first) out.push_back(',');
      out += label_name(id);
      first = false;
    }
    out.push_back('}');
    return out;
  };
  // Common cases print as a single brace group.
  if (!hat_cofinite_ && hat_.empty() && !leaf_) return plane(plain_cofinite_, plain_);
  std::string out = plane(plain_cofinite_, plain_);
  if (hat_cofinite_ || !hat_.empty()) {
    out.push_back('+');
    out += plane(hat_cofinite_, hat_);
  }
  if (leaf_) out += "+{#}";
  return out;
}

LabelSet LabelSet::parse(std::string_view text) {
  LabelSet out;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  };
  bool first_group = true;
  int elem_groups_seen = 0; // groups are positional: plain plane, then hat plane
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (!first_group) {
      if (text[pos] != '+') throw std::invalid_argument("bad label set: " + std::string(text));
      pos++;
      skip_ws();
    }
    bool cof = false;
    if (pos < text.size() && text[pos] == '~') {
      cof = true;
      pos++;
    }
    if (pos >= text.size() || text[pos] != '{')
      throw std::invalid_argument("bad label set: " + std::string(text));
    pos++;
    std::vector<LabelId> members;
    skip_ws();
    while (pos < text.size() && text[pos] != '}') {
      size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != '}' &&
             !std::isspace(static_cast<unsigned char>(text[pos])))
        pos++;
      members.push_back(parse_label(text.substr(start, pos - start)));
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        pos++;
        skip_ws();
      }
    }
    if (pos >= text.size()) throw std::invalid_argument("unterminated label set");
    pos++; // '}'
    // Classify the group by its members.
    bool any_hat = false, any_plain = false, any_leaf = false;
    for (LabelId id : members) {
      if (id == kLeafLabel)
        any_leaf = true;
      else if (is_hatted(id))
        any_hat = true;
      else
        any_plain = true;
    }
    if (any_leaf && (cof || any_hat || any_plain))
      throw std::invalid_argument("leaf group must be exactly {#}");
    if (any_hat && any_plain && cof)
      throw std::invalid_argument("co-finite group cannot mix planes");
    if (any_leaf) {
      out.leaf_ = true;
    } else if (cof && (any_hat || (!any_plain && elem_groups_seen == 1))) {
      out.hat_cofinite_ = true;
      out.hat_ = members;
      std::sort(out.hat_.begin(), out.hat_.end());
      elem_groups_seen++;
    } else if (cof) {
      out.plain_cofinite_ = true;
      out.plain_ = members;
      std::sort(out.plain_.begin(), out.plain_.end());
      elem_groups_seen++;
    } else {
      for (LabelId id : members) {
        if (is_hatted(id))
          insert_sorted(out.hat_, id);
        else
          insert_sorted(out.plain_, id);
      }
      elem_groups_seen++;
    }
    first_group = false;
  }
  if (first_group) throw std::invalid_argument("empty label set text");
  return out;
}

} // namespace staq
