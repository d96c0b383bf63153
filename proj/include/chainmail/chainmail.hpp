#pragma once

// Chainmails: posets in which every mail (nonempty set with a common lower
// bound) has a join. Mail components, joins of mail-connected sets, totally
// disconnected sets, subchainmails and the complete lattice D(G).

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainmail/config.hpp"
#include "chainmail/lattice.hpp"
#include "chainmail/poset.hpp"

namespace chainmail {

class Chainmail;
Chainmail as_chainmail(Poset p);

namespace detail {
Chainmail chainmail_from_trusted_order(Poset p);
}

class Chainmail {
 public:
  Chainmail() = default;
  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }

 private:
  friend Chainmail as_chainmail(Poset p);
  friend Chainmail detail::chainmail_from_trusted_order(Poset p);
  explicit Chainmail(Poset p) : poset_(std::move(p)) {}
  Poset poset_;
};

// First incomparable pair sharing a lower bound but lacking a join. In a
// finite poset every mail has a join as soon as every two-element mail does:
// fold the mail pairwise, each partial join still sits above the common
// lower bound.
inline std::optional<OrderPair> find_mail_pair_without_join(const Poset& p) {
  for (Element a = 0; a < p.size(); ++a)
    for (Element b = a + 1; b < p.size(); ++b)
      if (!p.comparable(a, b) && p.share_lower_bound(a, b) && !p.join2(a, b)) return OrderPair{a, b};
  return std::nullopt;
}

inline bool is_chainmail(const Poset& p) { return !find_mail_pair_without_join(p); }

inline Chainmail as_chainmail(Poset p) {
  if (auto w = find_mail_pair_without_join(p))
    throw Error(ErrorKind::not_a_chainmail,
                "mail {" + p.label(w->first) + "," + p.label(w->second) + "} has no join", {w->first, w->second});
  return Chainmail(std::move(p));
}

namespace detail {
inline Chainmail chainmail_from_trusted_order(Poset p) { return Chainmail(std::move(p)); }
}  // namespace detail

inline bool is_mail(const Poset& p, const ElementSet& s) { return !s.empty() && !p.lower_bounds(s).empty(); }
inline bool is_mail(const Chainmail& g, const ElementSet& s) { return is_mail(g.poset(), s); }

// Components of s in the graph whose edges join elements with a common lower
// bound (the bound need not lie in s). Ordered by smallest member.
inline std::vector<ElementSet> mail_components(const Poset& p, const ElementSet& s) {
  std::vector<Element> m = s.members();
  std::vector<std::size_t> parent(m.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (p.share_lower_bound(m[i], m[j])) {
        std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<ElementSet> out;
  std::vector<std::size_t> slot(m.size(), SIZE_MAX);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back(p.size());
    }
    out[slot[r]].insert(m[i]);
  }
  return out;
}

inline std::vector<ElementSet> mail_components(const Chainmail& g, const ElementSet& s) {
  return mail_components(g.poset(), s);
}

inline bool is_mail_connected(const Poset& p, const ElementSet& s) {
  return !s.empty() && mail_components(p, s).size() == 1;
}

inline bool is_totally_disconnected(const Poset& p, const ElementSet& s) {
  auto m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (p.share_lower_bound(m[i], m[j])) return false;
  return true;
}

inline bool is_totally_disconnected(const Chainmail& g, const ElementSet& s) {
  return is_totally_disconnected(g.poset(), s);
}

namespace detail {

inline Element mail_join2(const Poset& p, Element a, Element b) {
  auto j = p.join2(a, b);
  if (!j)
    throw Error(ErrorKind::theorem_violation,
                "mail {" + p.label(a) + "," + p.label(b) + "} has no join inside a chainmail", {a, b});
  return *j;
}

// Joins a path whose consecutive members share lower bounds by repeatedly
// replacing neighbours with their join; each new pair still shares the old
// middle element as a lower bound.
inline Element hierarchical_path_join(const Poset& p, std::vector<Element> level) {
  while (level.size() > 1) {
    std::vector<Element> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) next[i] = mail_join2(p, level[i], level[i + 1]);
    level = std::move(next);
  }
  return level.front();
}

}  // namespace detail

// Least upper bound of a mail-connected set, built from joins of paths out of
// the first member. Cross-checked against the upper-bound scan.
inline Element join_of_mail_connected(const Chainmail& g, const ElementSet& c) {
  const Poset& p = g.poset();
  if (!is_mail_connected(p, c))
    throw Error(ErrorKind::not_mail_connected, p.format_set(c) + " is not mail-connected", c.members());
  std::vector<Element> m = c.members();
  const Element root = m.front();
  std::vector<std::optional<Element>> parent(p.size());
  std::vector<Element> queue{root};
  parent[root] = root;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Element v : m)
      if (!parent[v] && p.share_lower_bound(queue[head], v)) {
        parent[v] = queue[head];
        queue.push_back(v);
      }
  Element acc = root;
  for (Element d : m) {
    std::vector<Element> path{d};
    while (path.back() != root) path.push_back(*parent[path.back()]);
    std::reverse(path.begin(), path.end());
    // Every path join sits above the root, so they form a mail.
    acc = detail::mail_join2(p, acc, detail::hierarchical_path_join(p, std::move(path)));
  }
  auto scanned = p.join_of(c);
  if (!scanned || *scanned != acc)
    throw Error(ErrorKind::theorem_violation, "path-built join of " + p.format_set(c) + " disagrees with the scan",
                c.members());
  return acc;
}

// Joins of the maximal mail-connected subsets of x. Throws when that set is
// not totally disconnected (x is then neither a subchainmail nor totally
// disconnected).
inline ElementSet x_star(const Chainmail& g, const ElementSet& x) {
  ElementSet out(g.size());
  for (const auto& comp : mail_components(g, x)) out.insert(join_of_mail_connected(g, comp));
  if (!is_totally_disconnected(g, out))
    throw Error(ErrorKind::not_totally_disconnected,
                "component joins " + g.poset().format_set(out) + " of " + g.poset().format_set(x) +
                    " are not totally disconnected",
                out.members());
  return out;
}

// Condition (1): x is the down-set of a totally disconnected set. For a
// down-closed x the only candidate is its set of maximal elements.
inline bool is_down_of_totally_disconnected(const Chainmail& g, const ElementSet& x) {
  const Poset& p = g.poset();
  ElementSet top = p.maximal(x);
  return is_totally_disconnected(p, top) && p.down_closure(top) == x;
}

// Condition (2): the join of every mail inside x lies in x. Two-element
// mails suffice by the same pairwise folding as the chainmail check.
inline bool closed_under_mail_joins(const Chainmail& g, const ElementSet& x) {
  const Poset& p = g.poset();
  auto m = x.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (p.share_lower_bound(m[i], m[j]) && !x.contains(detail::mail_join2(p, m[i], m[j]))) return false;
  return true;
}

// Condition (3), evaluated literally over every mail-connected subset of x.
inline bool closed_under_connected_joins(const Chainmail& g, const ElementSet& x) {
  auto m = x.members();
  require_within(m.size(), 20, "literal mail-connected subset scan");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m.size()); ++mask) {
    ElementSet sub(g.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (mask >> i & 1U) sub.insert(m[i]);
    if (is_mail_connected(g.poset(), sub) && !x.contains(join_of_mail_connected(g, sub))) return false;
  }
  return true;
}

inline bool is_subchainmail(const Chainmail& g, const ElementSet& x) {
  return g.poset().is_down_closed(x) && closed_under_mail_joins(g, x);
}

// Least subchainmail containing x: alternate down-closure and adding joins
// of two-element mails until nothing changes.
inline ElementSet subchainmail_generated(const Chainmail& g, const ElementSet& x) {
  const Poset& p = g.poset();
  ElementSet cur = p.down_closure(x);
  while (true) {
    ElementSet next = cur;
    auto m = cur.members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        if (p.share_lower_bound(m[i], m[j])) next.insert(detail::mail_join2(p, m[i], m[j]));
    next = p.down_closure(next);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

// Depth-first walk over totally disconnected sets; visit returns false to stop.
template <class Visit>
void for_each_totally_disconnected_set(const Poset& p, Visit&& visit) {
  std::vector<Element> chosen;
  std::function<bool(Element)> rec = [&](Element from) -> bool {
    if (!visit(static_cast<const std::vector<Element>&>(chosen))) return false;
    for (Element e = from; e < p.size(); ++e) {
      bool ok = std::none_of(chosen.begin(), chosen.end(), [&](Element c) { return p.share_lower_bound(c, e); });
      if (!ok) continue;
      chosen.push_back(e);
      bool go_on = rec(e + 1);
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  rec(0);
}

inline std::size_t count_totally_disconnected_sets(const Poset& p, std::size_t cap = SIZE_MAX) {
  std::size_t count = 0;
  for_each_totally_disconnected_set(p, [&](const std::vector<Element>&) {
    ++count;
    require_within(count, cap, "D(G)");
    return true;
  });
  return count;
}

// The complete lattice of totally disconnected sets, D1 <= D2 when each
// member of D1 lies below some member of D2. sets[i] is lattice element i;
// sets are sorted by member list so element 0 is the empty set (bottom).
struct DLattice {
  CompleteLattice lattice;
  std::vector<ElementSet> sets;
  std::map<ElementSet, Element, ElementSetLess> index;

  Element index_of(const ElementSet& d) const {
    auto it = index.find(d);
    if (it == index.end()) throw Error(ErrorKind::not_totally_disconnected, "set is not an element of D(G)");
    return it->second;
  }
};

inline DLattice d_lattice(const Chainmail& g, const Budget& budget = {}) {
  const Poset& p = g.poset();
  std::vector<ElementSet> sets;
  for_each_totally_disconnected_set(p, [&](const std::vector<Element>& members) {
    sets.push_back(ElementSet::from_range(p.size(), members));
    require_within(sets.size(), budget.derived_size, "D(G)");
    return true;
  });
  std::sort(sets.begin(), sets.end(), [](const ElementSet& a, const ElementSet& b) { return member_order(a, b); });
  std::vector<ElementSet> downs;
  downs.reserve(sets.size());
  for (const auto& s : sets) downs.push_back(p.down_closure(s));
  Poset order = Poset::from_order(sets.size(), [&](Element a, Element b) { return sets[a].is_subset_of(downs[b]); });
  std::vector<std::string> names;
  for (const auto& s : sets) names.push_back(p.format_set(s));
  order = order.with_labels(std::move(names));
  std::map<ElementSet, Element, ElementSetLess> index;
  for (Element i = 0; i < sets.size(); ++i) index.emplace(sets[i], i);
  return DLattice{detail::lattice_from_trusted_order(std::move(order)), std::move(sets), std::move(index)};
}

// Lattice operations of D(G) computed through subchainmails: the join is the
// subchainmail generated by the union, the meet is the intersection.
inline ElementSet d_join_via_subchainmails(const Chainmail& g, const ElementSet& d1, const ElementSet& d2) {
  const Poset& p = g.poset();
  return x_star(g, subchainmail_generated(g, p.down_closure(d1) | p.down_closure(d2)));
}

inline ElementSet d_meet_via_subchainmails(const Chainmail& g, const ElementSet& d1, const ElementSet& d2) {
  const Poset& p = g.poset();
  return x_star(g, p.down_closure(d1) & p.down_closure(d2));
}

}  // namespace chainmail
