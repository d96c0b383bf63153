#pragma once

// Finite posets on index-identified elements, stored as dense bit tables of
// down-sets and up-sets.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "chainmail/config.hpp"
#include "chainmail/element_set.hpp"
#include "chainmail/error.hpp"

namespace chainmail {

enum class RelationMode { full_relation, covers };

using OrderPair = std::pair<Element, Element>;

class Poset {
 public:
  Poset() = default;

  // Builds from a relation the caller already knows to be a partial order.
  template <class Leq>
  static Poset from_order(std::size_t n, Leq&& leq) {
    Poset p(n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (leq(a, b)) {
          bits::set(p.down_mut(b), a);
          bits::set(p.up_mut(a), b);
        }
    p.finish();
    return p;
  }

  static Poset chain(std::size_t n) {
    return from_order(n, [](Element a, Element b) { return a <= b; });
  }
  static Poset antichain(std::size_t n) {
    return from_order(n, [](Element a, Element b) { return a == b; });
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  bool leq(Element a, Element b) const { return bits::test(up_row(a), b); }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  std::span<const Word> down_row(Element a) const { return {down_.data() + a * words_, words_}; }
  std::span<const Word> up_row(Element a) const { return {up_.data() + a * words_, words_}; }
  std::size_t down_count(Element a) const { return down_count_[a]; }
  std::size_t up_count(Element a) const { return up_count_[a]; }

  ElementSet down_set(Element a) const { return ElementSet::from_words(n_, down_row(a)); }
  ElementSet up_set(Element a) const { return ElementSet::from_words(n_, up_row(a)); }
  ElementSet all() const { return ElementSet::full(n_); }
  ElementSet none() const { return ElementSet(n_); }

  ElementSet down_closure(const ElementSet& s) const {
    ElementSet out(n_);
    s.for_each([&](Element e) { out |= down_row(e); });
    return out;
  }

  ElementSet up_closure(const ElementSet& s) const {
    ElementSet out(n_);
    s.for_each([&](Element e) { out |= up_row(e); });
    return out;
  }

  bool is_down_closed(const ElementSet& s) const { return down_closure(s) == s; }

  // Common lower bounds: the intersection of the members' down-sets.
  ElementSet lower_bounds(const ElementSet& s) const {
    check_set(s);
    if (s.empty()) throw Error(ErrorKind::empty_input, "lower_bounds of the empty set");
    ElementSet out = all();
    s.for_each([&](Element e) { out &= down_row(e); });
    return out;
  }

  // Upper bounds of the empty set are all elements.
  ElementSet upper_bounds(const ElementSet& s) const {
    check_set(s);
    ElementSet out = all();
    s.for_each([&](Element e) { out &= up_row(e); });
    return out;
  }

  // Least member of s: the u in s whose up-set covers all of s.
  std::optional<Element> least(const ElementSet& s) const {
    const std::size_t c = s.count();
    std::optional<Element> found;
    s.for_each([&](Element u) {
      if (!found && up_count_[u] >= c && bits::subset(s.words(), up_row(u))) found = u;
    });
    return found;
  }

  std::optional<Element> greatest(const ElementSet& s) const {
    const std::size_t c = s.count();
    std::optional<Element> found;
    s.for_each([&](Element u) {
      if (!found && down_count_[u] >= c && bits::subset(s.words(), down_row(u))) found = u;
    });
    return found;
  }

  std::optional<Element> join_of(const ElementSet& s) const { return least(upper_bounds(s)); }

  std::optional<Element> meet_of(const ElementSet& s) const {
    check_set(s);
    ElementSet lower = all();
    s.for_each([&](Element e) { lower &= down_row(e); });
    return greatest(lower);
  }

  // Pairwise join without materializing sets; the hot path of chainmail checks.
  std::optional<Element> join2(Element a, Element b) const {
    auto ra = up_row(a);
    auto rb = up_row(b);
    std::size_t c = bits::count_and(ra, rb);
    if (c == 0) return std::nullopt;
    for (std::size_t w = 0; w < words_; ++w) {
      Word word = ra[w] & rb[w];
      while (word) {
        Element u = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        if (up_count_[u] == c) return u;
      }
    }
    return std::nullopt;
  }

  std::optional<Element> meet2(Element a, Element b) const {
    auto ra = down_row(a);
    auto rb = down_row(b);
    std::size_t c = bits::count_and(ra, rb);
    if (c == 0) return std::nullopt;
    for (std::size_t w = 0; w < words_; ++w) {
      Word word = ra[w] & rb[w];
      while (word) {
        Element u = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        if (down_count_[u] == c) return u;
      }
    }
    return std::nullopt;
  }

  bool share_lower_bound(Element a, Element b) const {
    return bits::intersects(down_row(a), down_row(b));
  }

  std::optional<Element> bottom() const { return least(all()); }
  std::optional<Element> top() const { return greatest(all()); }

  ElementSet minimal(const ElementSet& s) const {
    ElementSet out(n_);
    s.for_each([&](Element e) {
      if (bits::count_and(down_row(e), s.words()) == 1) out.insert(e);
    });
    return out;
  }

  ElementSet maximal(const ElementSet& s) const {
    ElementSet out(n_);
    s.for_each([&](Element e) {
      if (bits::count_and(up_row(e), s.words()) == 1) out.insert(e);
    });
    return out;
  }

  // Transitive reduction, sorted lexicographically.
  std::vector<OrderPair> covers() const {
    std::vector<OrderPair> out;
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b)
        if (is_cover(a, b)) out.emplace_back(a, b);
    return out;
  }

  bool is_cover(Element a, Element b) const {
    if (!less(a, b)) return false;
    // a < b is a cover iff the only elements in [a, b] are a and b.
    return bits::count_and(up_row(a), down_row(b)) == 2;
  }

  // Elements in a linear extension order (by down-set size, then index).
  std::vector<Element> linear_extension() const {
    std::vector<Element> order(n_);
    std::iota(order.begin(), order.end(), Element{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Element a, Element b) { return down_count_[a] < down_count_[b]; });
    return order;
  }

  // Length of the longest chain ending at each element (minimal elements: 0).
  std::vector<std::size_t> heights() const {
    std::vector<std::size_t> h(n_, 0);
    for (Element v : linear_extension())
      for (Element u = 0; u < n_; ++u)
        if (less(u, v)) h[v] = std::max(h[v], h[u] + 1);
    return h;
  }

  // Subposet on the members of s, in increasing index order.
  Poset induced(const ElementSet& s) const {
    std::vector<Element> keep = s.members();
    Poset out = from_order(keep.size(), [&](Element a, Element b) { return leq(keep[a], keep[b]); });
    if (has_labels()) {
      std::vector<std::string> names;
      for (Element e : keep) names.push_back(labels_[e]);
      out.labels_ = std::move(names);
    }
    return out;
  }

  // new_index[old] = new position.
  Poset relabeled(std::span<const Element> new_index) const {
    std::vector<Element> old_of(n_);
    for (Element v = 0; v < n_; ++v) old_of[new_index[v]] = v;
    Poset out = from_order(n_, [&](Element a, Element b) { return leq(old_of[a], old_of[b]); });
    if (has_labels()) {
      out.labels_.resize(n_);
      for (Element v = 0; v < n_; ++v) out.labels_[new_index[v]] = labels_[v];
    }
    return out;
  }

  // Adds element n() whose strict down-set is `below` (must be down-closed).
  Poset with_maximal(const ElementSet& below) const {
    Poset out(n_ + 1);
    for (Element a = 0; a < n_; ++a)
      for (std::size_t w = 0; w < words_; ++w) {
        out.down_mut(a)[w] = down_[a * words_ + w];
        out.up_mut(a)[w] = up_[a * words_ + w];
      }
    below.for_each([&](Element a) {
      bits::set(out.down_mut(n_), a);
      bits::set(out.up_mut(a), n_);
    });
    bits::set(out.down_mut(n_), n_);
    bits::set(out.up_mut(n_), n_);
    out.finish();
    return out;
  }

  Poset without(Element x) const {
    ElementSet keep = all();
    keep.erase(x);
    return induced(keep);
  }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(Element e) const { return has_labels() ? labels_[e] : std::to_string(e); }

  std::optional<Element> find_label(std::string_view name) const {
    for (Element e = 0; e < n_; ++e)
      if (label(e) == name) return e;
    return std::nullopt;
  }

  Poset with_labels(std::vector<std::string> names) const {
    if (!names.empty() && names.size() != n_)
      throw Error(ErrorKind::axiom_violation, "label count does not match poset size");
    std::unordered_set<std::string> seen;
    for (Element e = 0; e < names.size(); ++e)
      if (!seen.insert(names[e]).second)
        throw Error(ErrorKind::duplicate_label, "label '" + names[e] + "' repeated", {e});
    Poset out = *this;
    out.labels_ = std::move(names);
    return out;
  }

  std::string format_set(const ElementSet& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](Element e) {
      if (!first) out += ",";
      out += label(e);
      first = false;
    });
    return out + "}";
  }

  // Same order relation; labels are presentation only.
  bool operator==(const Poset& o) const { return n_ == o.n_ && down_ == o.down_; }

 private:
  explicit Poset(std::size_t n)
      : n_(n), words_(word_count(n)), down_(n * word_count(n), 0), up_(n * word_count(n), 0) {}

  std::span<Word> down_mut(Element a) { return {down_.data() + a * words_, words_}; }
  std::span<Word> up_mut(Element a) { return {up_.data() + a * words_, words_}; }

  void finish() {
    down_count_.resize(n_);
    up_count_.resize(n_);
    for (Element a = 0; a < n_; ++a) {
      down_count_[a] = bits::count(down_row(a));
      up_count_[a] = bits::count(up_row(a));
    }
  }

  void check_set(const ElementSet& s) const {
    if (s.universe() != n_)
      throw Error(ErrorKind::index_out_of_range, "element set belongs to a different poset");
  }

  friend Poset validate_poset(std::size_t, std::span<const OrderPair>, RelationMode, const Budget&);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> down_;
  std::vector<Word> up_;
  std::vector<std::size_t> down_count_;
  std::vector<std::size_t> up_count_;
  std::vector<std::string> labels_;
};

// In "covers" mode each pair (i, j) asserts i < j and the order is the
// reflexive-transitive closure. In "full-relation" mode the pairs are the
// whole relation and must already satisfy the poset axioms.
inline Poset validate_poset(std::size_t n, std::span<const OrderPair> pairs, RelationMode mode,
                            const Budget& budget = {}) {
  require_within(n, budget.poset_size, "poset");
  for (const auto& [a, b] : pairs)
    if (a >= n || b >= n)
      throw Error(ErrorKind::index_out_of_range,
                  "pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range", {a, b});

  if (mode == RelationMode::full_relation) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : pairs) rel[a][b] = true;
    for (Element a = 0; a < n; ++a)
      if (!rel[a][a])
        throw Error(ErrorKind::axiom_violation, "reflexivity fails at (" + std::to_string(a) + "," +
                                                    std::to_string(a) + ")",
                    {a, a});
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (rel[a][b] && rel[b][a])
          throw Error(ErrorKind::axiom_violation, "antisymmetry fails at (" + std::to_string(a) + "," +
                                                      std::to_string(b) + ")",
                      {a, b});
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (rel[a][b])
          for (Element c = 0; c < n; ++c)
            if (rel[b][c] && !rel[a][c])
              throw Error(ErrorKind::axiom_violation,
                          "transitivity fails: (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                              std::to_string(b) + "," + std::to_string(c) + ") but not (" +
                              std::to_string(a) + "," + std::to_string(c) + ")",
                          {a, b, c});
    return Poset::from_order(n, [&](Element a, Element b) { return static_cast<bool>(rel[a][b]); });
  }

  // Kahn's algorithm; whatever is left unprocessed lies on or above a cycle.
  std::vector<std::vector<Element>> preds(n);
  std::vector<std::vector<Element>> succs(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : pairs) {
    preds[b].push_back(a);
    succs[a].push_back(b);
    ++indegree[b];
  }
  std::vector<Element> order;
  for (Element v = 0; v < n; ++v)
    if (indegree[v] == 0) order.push_back(v);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Element s : succs[order[head]])
      if (--indegree[s] == 0) order.push_back(s);
  if (order.size() != n) {
    std::vector<Element> stuck;
    for (Element v = 0; v < n; ++v)
      if (indegree[v] > 0) stuck.push_back(v);
    throw Error(ErrorKind::cycle_detected, "cover relation has a cycle", stuck);
  }

  Poset p(n);
  for (Element v : order) {
    bits::set(p.down_mut(v), v);
    for (Element u : preds[v])
      for (std::size_t w = 0; w < p.words_; ++w) p.down_mut(v)[w] |= p.down_[u * p.words_ + w];
  }
  for (Element b = 0; b < n; ++b) bits::for_each(p.down_row(b), [&](Element a) { bits::set(p.up_mut(a), b); });
  p.finish();
  return p;
}

inline Poset validate_poset(std::size_t n, std::initializer_list<OrderPair> pairs, RelationMode mode,
                            const Budget& budget = {}) {
  std::vector<OrderPair> v(pairs);
  return validate_poset(n, std::span<const OrderPair>(v), mode, budget);
}

}  // namespace chainmail
