#pragma once

// Complete lattices and connectivity inside them: separated and chained
// sets, the conditions E1-E4, connected elements, x*, local connectivity,
// and the poset S(L) of separated sets of connected elements with its join
// map nu.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chainmail/config.hpp"
#include "chainmail/poset.hpp"

namespace chainmail {

class CompleteLattice;

namespace detail {
CompleteLattice lattice_from_trusted_order(Poset p);
}

class CompleteLattice {
 public:
  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }
  bool leq(Element a, Element b) const { return poset_.leq(a, b); }

  Element join(Element a, Element b) const {
    if (!join_table_.empty()) return join_table_[a * size() + b];
    return *poset_.join2(a, b);
  }

  Element meet(Element a, Element b) const {
    if (!meet_table_.empty()) return meet_table_[a * size() + b];
    return *poset_.meet2(a, b);
  }

  // Empty join is bottom, empty meet is top.
  Element join(const ElementSet& s) const {
    Element acc = bottom_;
    s.for_each([&](Element e) { acc = join(acc, e); });
    return acc;
  }

  Element meet(const ElementSet& s) const {
    Element acc = top_;
    s.for_each([&](Element e) { acc = meet(acc, e); });
    return acc;
  }

  template <class Range>
  Element join_range(const Range& r) const {
    Element acc = bottom_;
    for (auto e : r) acc = join(acc, static_cast<Element>(e));
    return acc;
  }

 private:
  friend CompleteLattice as_complete_lattice(Poset p);
  friend CompleteLattice detail::lattice_from_trusted_order(Poset p);

  static constexpr std::size_t kTableLimit = 512;

  explicit CompleteLattice(Poset p) : poset_(std::move(p)) {
    bottom_ = *poset_.bottom();
    top_ = *poset_.top();
    const std::size_t n = poset_.size();
    if (n <= kTableLimit) {
      join_table_.resize(n * n);
      meet_table_.resize(n * n);
      for (Element a = 0; a < n; ++a)
        for (Element b = a; b < n; ++b) {
          auto j = static_cast<std::uint32_t>(*poset_.join2(a, b));
          auto m = static_cast<std::uint32_t>(*poset_.meet2(a, b));
          join_table_[a * n + b] = join_table_[b * n + a] = j;
          meet_table_[a * n + b] = meet_table_[b * n + a] = m;
        }
    }
  }

  Poset poset_;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<std::uint32_t> join_table_;
  std::vector<std::uint32_t> meet_table_;
};

// A finite poset is a complete lattice iff it is nonempty and every pair has
// a join and a meet. Missing joins are reported before missing meets; pairs
// are scanned by larger index first, then nearest smaller index.
inline CompleteLattice as_complete_lattice(Poset p) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::not_a_lattice, "the empty poset has no bottom");
  auto report = [&](Element a, Element b, const char* what) {
    throw Error(ErrorKind::not_a_lattice,
                "{" + p.label(a) + "," + p.label(b) + "} has no " + what, {a, b});
  };
  for (Element b = 1; b < n; ++b)
    for (Element a = b; a-- > 0;)
      if (!p.join2(a, b)) report(a, b, "join");
  for (Element b = 1; b < n; ++b)
    for (Element a = b; a-- > 0;)
      if (!p.meet2(a, b)) report(a, b, "meet");
  return CompleteLattice(std::move(p));
}

namespace detail {
inline CompleteLattice lattice_from_trusted_order(Poset p) { return CompleteLattice(std::move(p)); }
}  // namespace detail

enum class Condition { E1, E2, E3, E4 };

inline bool is_separated(const CompleteLattice& l, const ElementSet& s) {
  if (s.contains(l.bottom())) return false;
  auto m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (l.meet(m[i], m[j]) != l.bottom()) return false;
  return true;
}

// Depth-first walk over the separated subsets of `candidates` (bottom is
// skipped). visit(members, join) returns false to stop the walk; the return
// value reports whether the walk ran to completion.
template <class Visit>
bool for_each_separated_set(const CompleteLattice& l, const ElementSet& candidates, Visit&& visit) {
  std::vector<Element> pool;
  candidates.for_each([&](Element e) {
    if (e != l.bottom()) pool.push_back(e);
  });
  std::vector<Element> chosen;
  std::function<bool(std::size_t, Element)> rec = [&](std::size_t from, Element join) -> bool {
    if (!visit(static_cast<const std::vector<Element>&>(chosen), join)) return false;
    for (std::size_t i = from; i < pool.size(); ++i) {
      Element e = pool[i];
      bool disjoint = std::all_of(chosen.begin(), chosen.end(),
                                  [&](Element c) { return l.meet(c, e) == l.bottom(); });
      if (!disjoint) continue;
      chosen.push_back(e);
      bool go_on = rec(i + 1, l.join(join, e));
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(0, l.bottom());
}

inline bool check_condition(const CompleteLattice& l, Element a, Condition which) {
  const std::size_t n = l.size();
  const Element zero = l.bottom();
  switch (which) {
    case Condition::E1:
      if (a == zero) return false;
      for (Element x = 0; x < n; ++x)
        for (Element y = x; y < n; ++y)
          if (l.meet(x, y) == zero && l.leq(a, l.join(x, y)) && !l.leq(a, x) && !l.leq(a, y)) return false;
      return true;
    case Condition::E2:
      if (a == zero) return false;
      for (Element x = 0; x < n; ++x)
        for (Element y = x; y < n; ++y)
          if (l.meet(x, y) == zero && l.join(x, y) == a && x != zero && y != zero) return false;
      return true;
    case Condition::E3: {
      // A counterexample is a separated S with join a and a not in S, so
      // every member lies strictly below a.
      ElementSet below = l.poset().down_set(a);
      below.erase(a);
      return for_each_separated_set(l, below, [&](const std::vector<Element>&, Element j) { return j != a; });
    }
    case Condition::E4: {
      // A counterexample is a separated S with a <= join S and no member above a.
      ElementSet pool(n);
      for (Element s = 0; s < n; ++s)
        if (!l.leq(a, s)) pool.insert(s);
      return for_each_separated_set(l, pool, [&](const std::vector<Element>&, Element j) { return !l.leq(a, j); });
    }
  }
  return false;
}

inline ElementSet connected_elements(const CompleteLattice& l) {
  ElementSet out(l.size());
  for (Element a = 0; a < l.size(); ++a)
    if (check_condition(l, a, Condition::E4)) out.insert(a);
  return out;
}

// Components of `c` under the relation "meet is not bottom".
inline std::vector<ElementSet> chained_components(const CompleteLattice& l, const ElementSet& c) {
  std::vector<Element> m = c.members();
  std::vector<std::size_t> parent(m.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (l.meet(m[i], m[j]) != l.bottom()) parent[find(i)] = find(j);
  std::vector<ElementSet> out;
  std::vector<std::size_t> slot(m.size(), SIZE_MAX);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back(l.size());
    }
    out[slot[r]].insert(m[i]);
  }
  return out;
}

inline bool is_chained(const CompleteLattice& l, const ElementSet& c) {
  return !c.empty() && chained_components(l, c).size() == 1;
}

inline ElementSet connected_below(const CompleteLattice& l, const ElementSet& connected, Element x) {
  return connected & l.poset().down_set(x);
}

inline bool is_locally_connected(const CompleteLattice& l, const ElementSet& connected) {
  for (Element x = 0; x < l.size(); ++x)
    if (l.join(connected_below(l, connected, x)) != x) return false;
  return true;
}

inline bool is_locally_connected(const CompleteLattice& l) {
  return is_locally_connected(l, connected_elements(l));
}

inline bool has_connective_foundation(const CompleteLattice& l, const ElementSet& connected) {
  for (Element x = 0; x < l.size(); ++x)
    if (x != l.bottom() && connected_below(l, connected, x).empty()) return false;
  return true;
}

inline bool has_connective_foundation(const CompleteLattice& l) {
  return has_connective_foundation(l, connected_elements(l));
}

// x*: joins of the maximal chained families of connected elements below x.
// Requires every y <= x to be the join of the connected elements below it.
inline ElementSet star(const CompleteLattice& l, const ElementSet& connected, Element x) {
  bits::for_each(l.poset().down_row(x), [&](Element y) {
    if (l.join(connected_below(l, connected, y)) != y)
      throw Error(ErrorKind::not_locally_connected_below,
                  l.poset().label(y) + " <= " + l.poset().label(x) + " is not a join of connected elements",
                  {x, y});
  });
  ElementSet out(l.size());
  for (const auto& comp : chained_components(l, connected_below(l, connected, x))) out.insert(l.join(comp));
  return out;
}

inline ElementSet star(const CompleteLattice& l, Element x) { return star(l, connected_elements(l), x); }

struct SeparationPoset {
  Poset poset;                   // labels are the member sets
  std::vector<ElementSet> sets;  // sets[i] is element i of the poset
  std::vector<Element> nu;       // nu[i] = join of sets[i]
};

inline SeparationPoset separation_poset(const CompleteLattice& l, const ElementSet& connected,
                                        const Budget& budget = {}) {
  SeparationPoset out;
  for_each_separated_set(l, connected, [&](const std::vector<Element>& members, Element join) {
    out.sets.push_back(ElementSet::from_range(l.size(), members));
    out.nu.push_back(join);
    require_within(out.sets.size(), budget.derived_size, "S(L)");
    return true;
  });
  std::vector<std::size_t> order(out.sets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return member_order(out.sets[a], out.sets[b]); });
  std::vector<ElementSet> sets;
  std::vector<Element> nu;
  for (auto i : order) {
    sets.push_back(out.sets[i]);
    nu.push_back(out.nu[i]);
  }
  std::vector<ElementSet> downs;
  for (const auto& s : sets) downs.push_back(l.poset().down_closure(s));
  out.poset = Poset::from_order(sets.size(), [&](Element a, Element b) { return sets[a].is_subset_of(downs[b]); });
  std::vector<std::string> names;
  for (const auto& s : sets) names.push_back(l.poset().format_set(s));
  out.poset = out.poset.with_labels(std::move(names));
  out.sets = std::move(sets);
  out.nu = std::move(nu);
  return out;
}

inline SeparationPoset separation_poset(const CompleteLattice& l, const Budget& budget = {}) {
  return separation_poset(l, connected_elements(l), budget);
}

enum class NuClass { iso, surjective_not_iso, not_surjective };

constexpr std::string_view to_string(NuClass c) {
  switch (c) {
    case NuClass::iso: return "iso";
    case NuClass::surjective_not_iso: return "surjective-not-iso";
    case NuClass::not_surjective: return "not-surjective";
  }
  return "?";
}

struct NuVerdict {
  NuClass nu_class;
  bool locally_connected;
};

// Classifies nu and checks that iso, surjective and locally connected agree;
// disagreement means a bug somewhere in this library.
inline NuVerdict nu_classification(const CompleteLattice& l, const Budget& budget = {}) {
  ElementSet connected = connected_elements(l);
  SeparationPoset s = separation_poset(l, connected, budget);
  ElementSet hit(l.size());
  for (Element v : s.nu) hit.insert(v);
  NuClass cls = NuClass::not_surjective;
  if (hit.count() == l.size()) {
    bool reflects = true;
    for (Element a = 0; a < s.sets.size() && reflects; ++a)
      for (Element b = 0; b < s.sets.size() && reflects; ++b)
        if (l.leq(s.nu[a], s.nu[b]) != s.poset.leq(a, b)) reflects = false;
    cls = (reflects && s.sets.size() == l.size()) ? NuClass::iso : NuClass::surjective_not_iso;
  }
  bool lc = is_locally_connected(l, connected);
  bool consistent = (cls == NuClass::iso) == lc && (cls != NuClass::not_surjective) == lc;
  if (!consistent)
    throw Error(ErrorKind::theorem_violation, "nu is " + std::string(to_string(cls)) + " but the lattice is " +
                                                  (lc ? "" : "not ") + "locally connected");
  return {cls, lc};
}

}  // namespace chainmail
