#pragma once

// Concrete chainmails and lattices: connected subsets of graphs, hypergraphs,
// finite topologies and connectivity spaces; powerset and down-set lattices;
// the seven-element example and a search for connectivity-space
// representations.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainmail/canonical.hpp"
#include "chainmail/chainmail.hpp"
#include "chainmail/config.hpp"
#include "chainmail/lattice.hpp"
#include "chainmail/poset.hpp"

namespace chainmail {

// Subsets of a small ground set, bit i = point i.
using PointSet = std::uint32_t;

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct Hypergraph {
  std::size_t vertices = 0;
  std::vector<std::vector<std::size_t>> hyperedges;
};

struct FiniteTopology {
  std::size_t points = 0;
  std::vector<std::vector<std::size_t>> opens;
};

struct ConnectivitySpace {
  std::size_t points = 0;
  std::vector<std::vector<std::size_t>> connected;
};

inline std::string format_point_set(PointSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < 32; ++i)
    if (s >> i & 1U) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

inline std::vector<std::size_t> point_members(PointSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i)
    if (s >> i & 1U) out.push_back(i);
  return out;
}

namespace detail {

inline void check_ground(std::size_t points, const Budget& budget) {
  require_within(points, budget.ground_points, "ground set");
  require_within(points, 20, "ground set (hard limit)");
}

inline PointSet to_mask(std::size_t points, const std::vector<std::size_t>& members, const std::string& what) {
  PointSet m = 0;
  for (auto v : members) {
    if (v >= points)
      throw Error(ErrorKind::index_out_of_range, what + " mentions point " + std::to_string(v) + " of " +
                                                     std::to_string(points));
    m |= PointSet{1} << v;
  }
  return m;
}

// Sorted by size, then by member list.
inline void sort_point_sets(std::vector<PointSet>& sets) {
  auto key = [](PointSet s) { return std::make_pair(std::popcount(s), point_members(s)); };
  std::sort(sets.begin(), sets.end(), [&](PointSet a, PointSet b) { return key(a) < key(b); });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

inline Poset inclusion_poset(std::vector<PointSet> sets) {
  sort_point_sets(sets);
  Poset p = Poset::from_order(sets.size(), [&](Element a, Element b) { return (sets[a] & ~sets[b]) == 0; });
  std::vector<std::string> names;
  for (auto s : sets) names.push_back(format_point_set(s));
  return p.with_labels(std::move(names));
}

// The builders' outputs are chainmails by the theory; a failure here is a bug.
inline Chainmail inclusion_chainmail(std::vector<PointSet> sets, const Budget& budget) {
  require_within(sets.size(), budget.poset_size > 31 ? budget.poset_size : 31, "connected-set poset");
  Poset p = inclusion_poset(std::move(sets));
  if (auto w = find_mail_pair_without_join(p))
    throw Error(ErrorKind::theorem_violation,
                "connected sets do not form a chainmail: " + p.label(w->first) + ", " + p.label(w->second),
                {w->first, w->second});
  return chainmail_from_trusted_order(std::move(p));
}

inline std::vector<PointSet> hypergraph_connected_sets(std::size_t points, const std::vector<PointSet>& edges) {
  std::vector<PointSet> out;
  const PointSet full = points == 32 ? ~PointSet{0} : (PointSet{1} << points) - 1;
  for (PointSet c = 1; c <= full && c != 0; ++c) {
    // Points linked through hyperedges contained in c.
    std::vector<std::size_t> parent(points);
    for (std::size_t i = 0; i < points; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    PointSet covered = 0;
    for (auto e : edges) {
      if (e == 0 || (e & ~c) != 0) continue;
      covered |= e;
      std::size_t first = static_cast<std::size_t>(std::countr_zero(e));
      for (auto v : point_members(e)) parent[find(v)] = find(first);
    }
    if (covered != c) continue;
    std::size_t root = find(static_cast<std::size_t>(std::countr_zero(c)));
    bool linked = true;
    for (auto v : point_members(c)) linked = linked && find(v) == root;
    if (linked) out.push_back(c);
  }
  return out;
}

}  // namespace detail

inline Chainmail chainmail_from_hypergraph(const Hypergraph& h, const Budget& budget = {}) {
  detail::check_ground(h.vertices, budget);
  std::vector<PointSet> edges;
  for (const auto& e : h.hyperedges) edges.push_back(detail::to_mask(h.vertices, e, "hyperedge"));
  return detail::inclusion_chainmail(detail::hypergraph_connected_sets(h.vertices, edges), budget);
}

// Singletons plus the two-element edge sets; loops are ignored.
inline Hypergraph graph_hypergraph(const Graph& g) {
  Hypergraph h{g.vertices, {}};
  for (std::size_t v = 0; v < g.vertices; ++v) h.hyperedges.push_back({v});
  for (auto [a, b] : g.edges)
    if (a != b) h.hyperedges.push_back({a, b});
  return h;
}

inline std::vector<PointSet> graph_connected_sets(const Graph& g) {
  std::vector<PointSet> adj(g.vertices, 0);
  for (auto [a, b] : g.edges) {
    if (a >= g.vertices || b >= g.vertices)
      throw Error(ErrorKind::index_out_of_range, "edge {" + std::to_string(a) + "," + std::to_string(b) +
                                                     "} is out of range");
    if (a == b) continue;
    adj[a] |= PointSet{1} << b;
    adj[b] |= PointSet{1} << a;
  }
  std::vector<PointSet> out;
  const PointSet full = (PointSet{1} << g.vertices) - 1;
  for (PointSet c = 1; c <= full && c != 0; ++c) {
    PointSet reach = c & (~c + 1);
    for (PointSet frontier = reach; frontier;) {
      PointSet next = 0;
      for (auto v : point_members(frontier)) next |= adj[v] & c;
      frontier = next & ~reach;
      reach |= next;
    }
    if (reach == c) out.push_back(c);
  }
  return out;
}

inline Chainmail chainmail_from_graph(const Graph& g, const Budget& budget = {}) {
  detail::check_ground(g.vertices, budget);
  return detail::inclusion_chainmail(graph_connected_sets(g), budget);
}

inline void validate_topology(const FiniteTopology& t, std::vector<PointSet>& opens) {
  opens.clear();
  for (const auto& o : t.opens) opens.push_back(detail::to_mask(t.points, o, "open set"));
  const PointSet full = (PointSet{1} << t.points) - 1;
  auto has = [&](PointSet s) { return std::find(opens.begin(), opens.end(), s) != opens.end(); };
  if (!has(0)) throw Error(ErrorKind::axiom_violation, "topology: the empty set is not open");
  if (!has(full)) throw Error(ErrorKind::axiom_violation, "topology: the whole space is not open");
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!has(opens[i] | opens[j]))
        throw Error(ErrorKind::axiom_violation, "topology: union of " + format_point_set(opens[i]) + " and " +
                                                    format_point_set(opens[j]) + " is not open",
                    {i, j});
      if (!has(opens[i] & opens[j]))
        throw Error(ErrorKind::axiom_violation, "topology: intersection of " + format_point_set(opens[i]) +
                                                    " and " + format_point_set(opens[j]) + " is not open",
                    {i, j});
    }
}

// A nonempty subset is connected when no two open sets split it into two
// nonempty relatively open pieces.
inline bool topologically_connected(PointSet s, const std::vector<PointSet>& opens) {
  if (s == 0) return false;
  for (auto u : opens)
    for (auto v : opens) {
      if ((s & u) == 0 || (s & v) == 0) continue;
      if ((s & ~(u | v)) == 0 && (s & u & v) == 0) return false;
    }
  return true;
}

inline Chainmail chainmail_from_topology(const FiniteTopology& t, const Budget& budget = {}) {
  detail::check_ground(t.points, budget);
  std::vector<PointSet> opens;
  validate_topology(t, opens);
  std::vector<PointSet> sets;
  const PointSet full = (PointSet{1} << t.points) - 1;
  for (PointSet s = 1; s <= full && s != 0; ++s)
    if (topologically_connected(s, opens)) sets.push_back(s);
  return detail::inclusion_chainmail(std::move(sets), budget);
}

// (c0) and (c1). Closure under unions of arbitrary overlapping families
// follows from closure under unions of overlapping pairs, by folding the
// family through a common point.
inline std::vector<PointSet> validate_connectivity_space(const ConnectivitySpace& s) {
  std::vector<PointSet> family;
  for (const auto& c : s.connected) family.push_back(detail::to_mask(s.points, c, "connected set"));
  auto has = [&](PointSet x) { return std::find(family.begin(), family.end(), x) != family.end(); };
  if (!has(0)) throw Error(ErrorKind::axiom_violation, "(c0): the empty set is not connected");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if ((family[i] & family[j]) != 0 && !has(family[i] | family[j]))
        throw Error(ErrorKind::axiom_violation,
                    "(c1): Z = {" + format_point_set(family[i]) + "," + format_point_set(family[j]) +
                        "} overlaps but its union " + format_point_set(family[i] | family[j]) +
                        " is not connected",
                    {i, j});
  return family;
}

inline Chainmail chainmail_from_connectivity_space(const ConnectivitySpace& s, const Budget& budget = {}) {
  detail::check_ground(s.points, budget);
  std::vector<PointSet> family = validate_connectivity_space(s);
  std::erase(family, PointSet{0});
  return detail::inclusion_chainmail(std::move(family), budget);
}

// ---------------------------------------------------------------------------
// Lattices.

inline CompleteLattice powerset_lattice(std::size_t n, const Budget& budget = {}) {
  require_within(std::size_t{1} << std::min<std::size_t>(n, 40), budget.derived_size, "powerset lattice");
  std::vector<PointSet> sets;
  for (PointSet s = 0; s < (PointSet{1} << n); ++s) sets.push_back(s);
  return detail::lattice_from_trusted_order(detail::inclusion_poset(std::move(sets)));
}

inline CompleteLattice downset_lattice(const Poset& p, const Budget& budget = {}) {
  std::vector<ElementSet> downs;
  std::vector<Element> order = p.linear_extension();
  ElementSet cur(p.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      downs.push_back(cur);
      require_within(downs.size(), budget.derived_size, "down-set lattice");
      return;
    }
    Element x = order[i];
    rec(i + 1);
    ElementSet below = p.down_set(x);
    below.erase(x);
    if (below.is_subset_of(cur)) {
      cur.insert(x);
      rec(i + 1);
      cur.erase(x);
    }
  };
  rec(0);
  std::sort(downs.begin(), downs.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.count() != b.count() ? a.count() < b.count() : member_order(a, b);
  });
  Poset order_poset =
      Poset::from_order(downs.size(), [&](Element a, Element b) { return downs[a].is_subset_of(downs[b]); });
  std::vector<std::string> names;
  for (const auto& d : downs) names.push_back(p.format_set(d));
  return detail::lattice_from_trusted_order(order_poset.with_labels(std::move(names)));
}

// The seven-element chainmail that is not a lattice and has no
// connectivity-space representation. Element i carries label i+1.
inline Chainmail example_exa_a() {
  static const std::vector<OrderPair> covers = {{0, 1}, {0, 2}, {1, 4}, {2, 4}, {2, 5},
                                                {3, 4}, {3, 5}, {4, 6}, {5, 6}};
  Poset p = validate_poset(7, covers, RelationMode::covers).with_labels({"1", "2", "3", "4", "5", "6", "7"});
  return as_chainmail(std::move(p));
}

// ---------------------------------------------------------------------------
// Representation search.

namespace detail {

class RepresentationSearch {
 public:
  RepresentationSearch(const Chainmail& g, std::size_t max_points)
      : p_(g.poset()), max_points_(max_points), order_(p_.linear_extension()), phi_(p_.size(), 0) {
    for (Element a = 0; a < p_.size(); ++a) joins_.push_back(row_joins(a));
  }

  std::optional<ConnectivitySpace> run() {
    if (p_.size() == 0) return ConnectivitySpace{0, {{}}};
    if (!assign(0, 0)) return std::nullopt;
    ConnectivitySpace s{used_, {{}}};
    std::vector<PointSet> sets(phi_.begin(), phi_.end());
    detail::sort_point_sets(sets);
    for (auto m : sets) s.connected.push_back(point_members(m));
    return s;
  }

 private:
  std::vector<std::optional<Element>> row_joins(Element a) const {
    std::vector<std::optional<Element>> out(p_.size());
    for (Element b = 0; b < p_.size(); ++b) out[b] = p_.join2(a, b);
    return out;
  }

  // Two assigned elements with overlapping sets need a join whose set is
  // their union (checked once the join is assigned); otherwise the sets are
  // disjoint.
  bool consistent(std::size_t i, PointSet s) const {
    Element x = order_[i];
    for (std::size_t k = 0; k < i; ++k) {
      Element y = order_[k];
      PointSet t = phi_[y];
      bool below = p_.less(y, x);
      if (((t & ~s) == 0) != below) return false;
      if ((s & ~t) == 0) return false;
      if ((s & t) != 0 && !joins_[x][y]) return false;
    }
    for (std::size_t k = 0; k < i; ++k)
      for (std::size_t l = k + 1; l < i; ++l) {
        Element y = order_[k], z = order_[l];
        if ((phi_[y] & phi_[z]) != 0 && joins_[y][z] == x && s != (phi_[y] | phi_[z])) return false;
      }
    return true;
  }

  // Unused points are introduced in increasing order, so assignments that
  // differ by a renaming of fresh points are explored once.
  bool assign(std::size_t i, std::size_t used) {
    if (i == order_.size()) {
      used_ = used;
      return closed();
    }
    const PointSet old_mask = used == 0 ? 0 : static_cast<PointSet>((PointSet{1} << used) - 1);
    for (std::size_t fresh = 0; used + fresh <= max_points_; ++fresh) {
      PointSet fresh_mask = static_cast<PointSet>(((PointSet{1} << fresh) - 1) << used);
      // Enumerate subsets of the old points.
      for (PointSet sub = old_mask;; sub = (sub - 1) & old_mask) {
        PointSet s = sub | fresh_mask;
        if (s != 0 && consistent(i, s)) {
          phi_[order_[i]] = s;
          if (assign(i + 1, used + fresh)) return true;
        }
        if (sub == 0) break;
      }
    }
    phi_[order_[i]] = 0;
    return false;
  }

  bool closed() const {
    std::vector<PointSet> fam(phi_.begin(), phi_.end());
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b)
        if ((fam[a] & fam[b]) != 0 && std::find(fam.begin(), fam.end(), fam[a] | fam[b]) == fam.end())
          return false;
    return true;
  }

  const Poset& p_;
  std::size_t max_points_;
  std::vector<Element> order_;
  std::vector<PointSet> phi_;
  std::vector<std::vector<std::optional<Element>>> joins_;
  std::size_t used_ = 0;
};

}  // namespace detail

// A connectivity space on at most max_points points whose poset of nonempty
// connected sets is isomorphic to g, or nullopt if none exists at that size.
inline std::optional<ConnectivitySpace> search_connectivity_representation(const Chainmail& g,
                                                                           std::size_t max_points,
                                                                           const Budget& budget = {}) {
  require_within(max_points, std::max<std::size_t>(budget.ground_points, 8), "representation ground set");
  auto found = detail::RepresentationSearch(g, max_points).run();
  if (found) {
    Budget wide = budget;
    wide.ground_points = max_points;
    if (!is_isomorphic(chainmail_from_connectivity_space(*found, wide).poset(), g.poset()))
      throw Error(ErrorKind::theorem_violation, "representation search returned a non-isomorphic space");
  }
  return found;
}

}  // namespace chainmail
