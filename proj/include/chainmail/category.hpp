#pragma once

// Maps between posets with validated roles, right adjoints, the functors K
// (connected elements) and D (totally disconnected sets) on objects and
// morphisms, the unit eta and counit epsilon, and exhaustive checks of the
// adjunction between chainmails and complete lattices.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainmail/chainmail.hpp"
#include "chainmail/lattice.hpp"
#include "chainmail/poset.hpp"

namespace chainmail {

enum class MapRole { monotone, chainmail_morphism, connectivity_hom, weak_connectivity_hom };

constexpr std::string_view to_string(MapRole r) {
  switch (r) {
    case MapRole::monotone: return "monotone";
    case MapRole::chainmail_morphism: return "chainmail-morphism";
    case MapRole::connectivity_hom: return "connectivity-hom";
    case MapRole::weak_connectivity_hom: return "weak-connectivity-hom";
  }
  return "?";
}

inline std::optional<MapRole> parse_map_role(std::string_view s) {
  for (auto r : {MapRole::monotone, MapRole::chainmail_morphism, MapRole::connectivity_hom,
                 MapRole::weak_connectivity_hom})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

using MapTable = std::vector<Element>;

namespace detail {
// Only the validating factories below construct PosetMaps.
struct MapKey {};
}  // namespace detail

class PosetMap {
 public:
  PosetMap(detail::MapKey, Poset source, Poset target, MapTable table, MapRole role)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)), role_(role) {}

  const Poset& source() const noexcept { return source_; }
  const Poset& target() const noexcept { return target_; }
  const MapTable& table() const noexcept { return table_; }
  MapRole role() const noexcept { return role_; }
  Element operator()(Element x) const { return table_[x]; }

 private:
  Poset source_;
  Poset target_;
  MapTable table_;
  MapRole role_;
};

// ---------------------------------------------------------------------------
// Law checks on raw tables. Each throws with a witness on the first failure.

inline void check_table_shape(const Poset& src, const Poset& dst, const MapTable& t) {
  if (t.size() != src.size())
    throw Error(ErrorKind::index_out_of_range, "table has " + std::to_string(t.size()) + " entries for " +
                                                   std::to_string(src.size()) + " source elements");
  for (Element x = 0; x < t.size(); ++x)
    if (t[x] >= dst.size())
      throw Error(ErrorKind::index_out_of_range, "image of " + src.label(x) + " is out of range", {x});
}

inline void check_monotone(const Poset& src, const Poset& dst, const MapTable& t) {
  for (Element a = 0; a < src.size(); ++a)
    for (Element b = 0; b < src.size(); ++b)
      if (src.less(a, b) && !dst.leq(t[a], t[b]))
        throw Error(ErrorKind::not_monotone,
                    src.label(a) + " <= " + src.label(b) + " but images " + dst.label(t[a]) + ", " +
                        dst.label(t[b]) + " are not ordered",
                    {a, b});
}

// Preservation of joins of two-element mails; longer mails fold pairwise.
inline void check_mail_joins(const Chainmail& g1, const Chainmail& g2, const MapTable& t) {
  const Poset& p = g1.poset();
  const Poset& q = g2.poset();
  for (Element a = 0; a < p.size(); ++a)
    for (Element b = a + 1; b < p.size(); ++b) {
      if (!p.share_lower_bound(a, b)) continue;
      Element j = *p.join2(a, b);
      auto image_join = q.join2(t[a], t[b]);
      if (!image_join || *image_join != t[j])
        throw Error(ErrorKind::mail_join_not_preserved,
                    "join of mail {" + p.label(a) + "," + p.label(b) + "} is not preserved", {a, b});
    }
}

inline void check_join_preserving(const CompleteLattice& l1, const CompleteLattice& l2, const MapTable& t,
                                  ErrorKind kind = ErrorKind::joins_not_preserved) {
  if (t[l1.bottom()] != l2.bottom())
    throw Error(kind, "the empty join (bottom) is not preserved", {l1.bottom()});
  for (Element a = 0; a < l1.size(); ++a)
    for (Element b = a + 1; b < l1.size(); ++b)
      if (t[l1.join(a, b)] != l2.join(t[a], t[b]))
        throw Error(kind, "join of {" + l1.poset().label(a) + "," + l1.poset().label(b) + "} is not preserved",
                    {a, b});
}

// F*(y) = join { x : F(x) <= y }.
inline MapTable right_adjoint_table(const CompleteLattice& l1, const CompleteLattice& l2, const MapTable& f) {
  check_join_preserving(l1, l2, f, ErrorKind::not_join_preserving);
  MapTable adj(l2.size());
  for (Element y = 0; y < l2.size(); ++y) {
    ElementSet pre(l1.size());
    for (Element x = 0; x < l1.size(); ++x)
      if (l2.leq(f[x], y)) pre.insert(x);
    adj[y] = l1.join(pre);
  }
  for (Element x = 0; x < l1.size(); ++x)
    for (Element y = 0; y < l2.size(); ++y)
      if (l2.leq(f[x], y) != l1.leq(x, adj[y]))
        throw Error(ErrorKind::theorem_violation, "Galois law fails at (" + l1.poset().label(x) + ", " +
                                                      l2.poset().label(y) + ")",
                    {x, y});
  return adj;
}

struct SeparatedFamily {
  std::vector<std::vector<Element>> members;
  std::vector<Element> joins;
};

inline SeparatedFamily all_separated_sets(const CompleteLattice& l, const Budget& budget = {}) {
  SeparatedFamily out;
  for_each_separated_set(l, l.poset().all(), [&](const std::vector<Element>& m, Element j) {
    out.members.push_back(m);
    out.joins.push_back(j);
    require_within(out.members.size(), budget.derived_size, "separated-set family");
    return true;
  });
  return out;
}

inline void check_adjoint_separated_joins(const CompleteLattice& l1, const CompleteLattice& l2,
                                          const MapTable& adj, const SeparatedFamily& separated_in_l2) {
  for (std::size_t i = 0; i < separated_in_l2.members.size(); ++i) {
    Element acc = l1.bottom();
    for (Element s : separated_in_l2.members[i]) acc = l1.join(acc, adj[s]);
    if (adj[separated_in_l2.joins[i]] != acc)
      throw Error(ErrorKind::adjoint_fails_separated_joins,
                  "right adjoint does not preserve the join of separated set " +
                      l2.poset().format_set(ElementSet::from_range(l2.size(), separated_in_l2.members[i])),
                  separated_in_l2.members[i]);
  }
}

inline void check_connected_preserved(const CompleteLattice& l1, const ElementSet& connected1,
                                      const ElementSet& connected2, const MapTable& t) {
  connected1.for_each([&](Element c) {
    if (!connected2.contains(t[c]))
      throw Error(ErrorKind::connected_not_preserved,
                  "connected element " + l1.poset().label(c) + " maps to a non-connected element", {c});
  });
}

// ---------------------------------------------------------------------------
// Validating factories.

inline PosetMap validate_monotone_map(const Poset& src, const Poset& dst, MapTable t) {
  check_table_shape(src, dst, t);
  check_monotone(src, dst, t);
  return PosetMap(detail::MapKey{}, src, dst, std::move(t), MapRole::monotone);
}

inline PosetMap validate_chainmail_morphism(const Chainmail& g1, const Chainmail& g2, MapTable t) {
  check_table_shape(g1.poset(), g2.poset(), t);
  check_monotone(g1.poset(), g2.poset(), t);
  check_mail_joins(g1, g2, t);
  return PosetMap(detail::MapKey{}, g1.poset(), g2.poset(), std::move(t), MapRole::chainmail_morphism);
}

inline PosetMap validate_connectivity_hom(const CompleteLattice& l1, const CompleteLattice& l2, MapTable t) {
  check_table_shape(l1.poset(), l2.poset(), t);
  check_monotone(l1.poset(), l2.poset(), t);
  check_join_preserving(l1, l2, t);
  check_adjoint_separated_joins(l1, l2, right_adjoint_table(l1, l2, t), all_separated_sets(l2));
  return PosetMap(detail::MapKey{}, l1.poset(), l2.poset(), std::move(t), MapRole::connectivity_hom);
}

inline PosetMap validate_weak_connectivity_hom(const CompleteLattice& l1, const CompleteLattice& l2, MapTable t) {
  check_table_shape(l1.poset(), l2.poset(), t);
  check_monotone(l1.poset(), l2.poset(), t);
  check_join_preserving(l1, l2, t);
  check_connected_preserved(l1, connected_elements(l1), connected_elements(l2), t);
  return PosetMap(detail::MapKey{}, l1.poset(), l2.poset(), std::move(t), MapRole::weak_connectivity_hom);
}

// Derives the lattice or chainmail structure the role needs from the posets.
inline PosetMap validate_map(const Poset& src, const Poset& dst, MapTable t, MapRole role) {
  switch (role) {
    case MapRole::monotone: return validate_monotone_map(src, dst, std::move(t));
    case MapRole::chainmail_morphism:
      return validate_chainmail_morphism(as_chainmail(src), as_chainmail(dst), std::move(t));
    case MapRole::connectivity_hom:
      return validate_connectivity_hom(as_complete_lattice(src), as_complete_lattice(dst), std::move(t));
    case MapRole::weak_connectivity_hom:
      return validate_weak_connectivity_hom(as_complete_lattice(src), as_complete_lattice(dst), std::move(t));
  }
  throw Error(ErrorKind::parse_error, "unknown map role");
}

inline PosetMap right_adjoint(const PosetMap& f) {
  auto l1 = as_complete_lattice(f.source());
  auto l2 = as_complete_lattice(f.target());
  return PosetMap(detail::MapKey{}, f.target(), f.source(), right_adjoint_table(l1, l2, f.table()),
                  MapRole::monotone);
}

// g after f. The composite is re-validated under the shared role (monotone
// when the roles differ).
inline PosetMap compose(const PosetMap& g, const PosetMap& f) {
  if (!(f.target() == g.source()))
    throw Error(ErrorKind::axiom_violation, "composition: target of f is not the source of g");
  MapTable t(f.table().size());
  for (Element x = 0; x < t.size(); ++x) t[x] = g(f(x));
  MapRole role = f.role() == g.role() ? f.role() : MapRole::monotone;
  return validate_map(f.source(), g.target(), std::move(t), role);
}

inline bool is_order_isomorphism(const Poset& src, const Poset& dst, const MapTable& t) {
  if (src.size() != dst.size() || t.size() != src.size()) return false;
  std::vector<bool> hit(dst.size(), false);
  for (Element v : t) {
    if (v >= dst.size() || hit[v]) return false;
    hit[v] = true;
  }
  for (Element a = 0; a < src.size(); ++a)
    for (Element b = 0; b < src.size(); ++b)
      if (src.leq(a, b) != dst.leq(t[a], t[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// K: the chainmail of connected elements.

struct KChainmail {
  Chainmail chainmail;
  MapTable embedding;                        // K index -> lattice element
  std::vector<std::optional<Element>> index;  // lattice element -> K index
};

inline KChainmail k_chainmail(const CompleteLattice& l, const ElementSet& connected) {
  Poset sub = l.poset().induced(connected);
  if (auto w = find_mail_pair_without_join(sub))
    throw Error(ErrorKind::theorem_violation, "K(L) is not a chainmail: mail {" + sub.label(w->first) + "," +
                                                  sub.label(w->second) + "} has no join");
  KChainmail k{detail::chainmail_from_trusted_order(std::move(sub)), connected.members(),
               std::vector<std::optional<Element>>(l.size())};
  for (Element i = 0; i < k.embedding.size(); ++i) k.index[k.embedding[i]] = i;
  return k;
}

inline KChainmail k_chainmail(const CompleteLattice& l) { return k_chainmail(l, connected_elements(l)); }

inline MapTable k_on_morphism_table(const KChainmail& k1, const KChainmail& k2, const MapTable& f) {
  MapTable out(k1.embedding.size());
  for (Element i = 0; i < out.size(); ++i) {
    auto j = k2.index[f[k1.embedding[i]]];
    if (!j)
      throw Error(ErrorKind::theorem_violation,
                  "connected element " + k1.chainmail.poset().label(i) + " is not sent to a connected element",
                  {k1.embedding[i]});
    out[i] = *j;
  }
  return out;
}

// D(m)(D1) = join in D(G2) of the singletons {m(d)}, d in D1.
inline MapTable d_on_morphism_table(const Chainmail& g1, const DLattice& d1, const Chainmail& g2,
                                    const DLattice& d2, const MapTable& m) {
  (void)g1;
  MapTable out(d1.sets.size());
  for (Element i = 0; i < out.size(); ++i) {
    Element acc = d2.lattice.bottom();
    d1.sets[i].for_each([&](Element d) {
      ElementSet single(g2.size());
      single.insert(m[d]);
      acc = d2.lattice.join(acc, d2.index_of(single));
    });
    out[i] = acc;
  }
  return out;
}

// D(m)*(D2) = (m^-1(down D2))*.
inline MapTable d_adjoint_table(const Chainmail& g1, const DLattice& d1, const Chainmail& g2, const DLattice& d2,
                                const MapTable& m) {
  MapTable out(d2.sets.size());
  for (Element i = 0; i < out.size(); ++i) {
    ElementSet down = g2.poset().down_closure(d2.sets[i]);
    ElementSet pre(g1.size());
    for (Element x = 0; x < g1.size(); ++x)
      if (down.contains(m[x])) pre.insert(x);
    out[i] = d1.index_of(x_star(g1, pre));
  }
  return out;
}

// eta(x) = {x}, as an index into K(D(G)).
inline MapTable unit_table(const Chainmail& g, const DLattice& d, const KChainmail& kd) {
  MapTable out(g.size());
  for (Element x = 0; x < g.size(); ++x) {
    ElementSet single(g.size());
    single.insert(x);
    auto k = kd.index[d.index_of(single)];
    if (!k)
      throw Error(ErrorKind::theorem_violation, "singleton {" + g.poset().label(x) + "} is not connected in D(G)",
                  {x});
    out[x] = *k;
  }
  return out;
}

// epsilon(D) = join D, for D a totally disconnected set of K(L).
inline MapTable epsilon_table(const CompleteLattice& l, const KChainmail& k, const DLattice& dk) {
  MapTable out(dk.sets.size());
  for (Element i = 0; i < out.size(); ++i) {
    Element acc = l.bottom();
    dk.sets[i].for_each([&](Element c) { acc = l.join(acc, k.embedding[c]); });
    out[i] = acc;
  }
  return out;
}

// epsilon*(x) = (connected elements below x)*, computed inside K(L).
inline MapTable epsilon_adjoint_table(const CompleteLattice& l, const KChainmail& k, const DLattice& dk) {
  MapTable out(l.size());
  for (Element x = 0; x < l.size(); ++x) {
    ElementSet below(k.embedding.size());
    for (Element i = 0; i < k.embedding.size(); ++i)
      if (l.leq(k.embedding[i], x)) below.insert(i);
    out[x] = dk.index_of(x_star(k.chainmail, below));
  }
  return out;
}

inline PosetMap k_on_morphism(const PosetMap& f) {
  if (f.role() != MapRole::connectivity_hom && f.role() != MapRole::weak_connectivity_hom)
    throw Error(ErrorKind::axiom_violation, "K acts on connectivity homomorphisms");
  auto l1 = as_complete_lattice(f.source());
  auto l2 = as_complete_lattice(f.target());
  auto k1 = k_chainmail(l1);
  auto k2 = k_chainmail(l2);
  return validate_chainmail_morphism(k1.chainmail, k2.chainmail, k_on_morphism_table(k1, k2, f.table()));
}

inline PosetMap d_on_morphism(const PosetMap& m, const Budget& budget = {}) {
  if (m.role() != MapRole::chainmail_morphism)
    throw Error(ErrorKind::axiom_violation, "D acts on chainmail morphisms");
  auto g1 = as_chainmail(m.source());
  auto g2 = as_chainmail(m.target());
  auto d1 = d_lattice(g1, budget);
  auto d2 = d_lattice(g2, budget);
  return validate_connectivity_hom(d1.lattice, d2.lattice, d_on_morphism_table(g1, d1, g2, d2, m.table()));
}

inline PosetMap d_morphism_adjoint(const PosetMap& m, const Budget& budget = {}) {
  if (m.role() != MapRole::chainmail_morphism)
    throw Error(ErrorKind::axiom_violation, "D acts on chainmail morphisms");
  auto g1 = as_chainmail(m.source());
  auto g2 = as_chainmail(m.target());
  auto d1 = d_lattice(g1, budget);
  auto d2 = d_lattice(g2, budget);
  return validate_monotone_map(d2.lattice.poset(), d1.lattice.poset(), d_adjoint_table(g1, d1, g2, d2, m.table()));
}

struct Unit {
  DLattice d;
  KChainmail kd;
  PosetMap eta;
};

// eta: G -> K(D(G)), checked to be an order isomorphism.
inline Unit unit_eta(const Chainmail& g, const Budget& budget = {}) {
  DLattice d = d_lattice(g, budget);
  KChainmail kd = k_chainmail(d.lattice);
  MapTable t = unit_table(g, d, kd);
  if (!is_order_isomorphism(g.poset(), kd.chainmail.poset(), t))
    throw Error(ErrorKind::theorem_violation, "eta is not an order isomorphism onto K(D(G))");
  PosetMap eta = validate_chainmail_morphism(g, kd.chainmail, std::move(t));
  return Unit{std::move(d), std::move(kd), std::move(eta)};
}

struct Counit {
  ElementSet connected;
  KChainmail k;
  DLattice dk;
  PosetMap epsilon;          // D(K(L)) -> L
  PosetMap epsilon_adjoint;  // L -> D(K(L))
};

// epsilon: D(K(L)) -> L, validated as a connectivity homomorphism whose
// computed right adjoint equals the closed form, and checked injective.
inline Counit counit_epsilon(const CompleteLattice& l, const Budget& budget = {}) {
  ElementSet connected = connected_elements(l);
  KChainmail k = k_chainmail(l, connected);
  DLattice dk = d_lattice(k.chainmail, budget);
  MapTable eps = epsilon_table(l, k, dk);
  MapTable adj = epsilon_adjoint_table(l, k, dk);
  if (right_adjoint_table(dk.lattice, l, eps) != adj)
    throw Error(ErrorKind::theorem_violation, "closed form of the counit adjoint disagrees with the right adjoint");
  std::vector<bool> hit(l.size(), false);
  for (Element i = 0; i < eps.size(); ++i) {
    if (hit[eps[i]])
      throw Error(ErrorKind::theorem_violation, "epsilon is not injective", {i});
    hit[eps[i]] = true;
  }
  PosetMap epsilon = validate_connectivity_hom(dk.lattice, l, std::move(eps));
  PosetMap epsilon_adjoint = validate_monotone_map(l.poset(), dk.lattice.poset(), std::move(adj));
  return Counit{std::move(connected), std::move(k), std::move(dk), std::move(epsilon), std::move(epsilon_adjoint)};
}

inline bool is_epsilon_iso(const CompleteLattice& l, const Budget& budget = {}) {
  ElementSet connected = connected_elements(l);
  KChainmail k = k_chainmail(l, connected);
  DLattice dk = d_lattice(k.chainmail, budget);
  return is_order_isomorphism(dk.lattice.poset(), l.poset(), epsilon_table(l, k, dk));
}

// ---------------------------------------------------------------------------
// Triangle identities and naturality.

struct TriangleReport {
  MapTable k_epsilon_after_eta;  // K(eps_L) . eta_K(L) on K(L)
  MapTable eta_after_k_epsilon;  // eta_K(L) . K(eps_L) on K(D(K(L)))
  MapTable epsilon_after_d_eta;  // eps_D(G) . D(eta_G) on D(G)
  MapTable d_eta_after_epsilon;  // D(eta_G) . eps_D(G) on D(K(D(G)))
};

namespace detail {
inline MapTable after(const MapTable& g, const MapTable& f) {
  MapTable out(f.size());
  for (Element x = 0; x < f.size(); ++x) out[x] = g[f[x]];
  return out;
}

inline void require_identity(const MapTable& t, const std::string& what) {
  for (Element x = 0; x < t.size(); ++x)
    if (t[x] != x) throw Error(ErrorKind::theorem_violation, what + " is not the identity", {x});
}
}  // namespace detail

inline TriangleReport check_triangle_identities(const Chainmail& g, const CompleteLattice& l,
                                                const Budget& budget = {}) {
  TriangleReport r;
  {
    KChainmail k = k_chainmail(l);
    DLattice dk = d_lattice(k.chainmail, budget);
    KChainmail kdk = k_chainmail(dk.lattice);
    MapTable eta = unit_table(k.chainmail, dk, kdk);
    MapTable k_eps = k_on_morphism_table(kdk, k, epsilon_table(l, k, dk));
    r.k_epsilon_after_eta = detail::after(k_eps, eta);
    r.eta_after_k_epsilon = detail::after(eta, k_eps);
    detail::require_identity(r.k_epsilon_after_eta, "K(eps_L) after eta_K(L)");
    detail::require_identity(r.eta_after_k_epsilon, "eta_K(L) after K(eps_L)");
  }
  {
    DLattice d = d_lattice(g, budget);
    KChainmail kd = k_chainmail(d.lattice);
    DLattice dkd = d_lattice(kd.chainmail, budget);
    MapTable eta = unit_table(g, d, kd);
    MapTable d_eta = d_on_morphism_table(g, d, kd.chainmail, dkd, eta);
    MapTable eps = epsilon_table(d.lattice, kd, dkd);
    r.epsilon_after_d_eta = detail::after(eps, d_eta);
    r.d_eta_after_epsilon = detail::after(d_eta, eps);
    detail::require_identity(r.epsilon_after_d_eta, "eps_D(G) after D(eta_G)");
    detail::require_identity(r.d_eta_after_epsilon, "D(eta_G) after eps_D(G)");
  }
  return r;
}

struct NaturalitySquare {
  MapTable left;   // one path around the square
  MapTable right;  // the other path
};

// For a chainmail morphism m: K(D(m)) . eta_G1 = eta_G2 . m.
// For a connectivity homomorphism F: F . eps_L1 = eps_L2 . D(K(F)), and on
// right adjoints eps*_L1 . F* = D(K(F))* . eps*_L2.
inline std::vector<NaturalitySquare> check_naturality(const PosetMap& f, const Budget& budget = {}) {
  std::vector<NaturalitySquare> squares;
  auto require_equal = [&](const MapTable& a, const MapTable& b, const std::string& what) {
    for (Element x = 0; x < a.size(); ++x)
      if (a[x] != b[x]) throw Error(ErrorKind::theorem_violation, what + " does not commute", {x});
    squares.push_back({a, b});
  };
  if (f.role() == MapRole::chainmail_morphism) {
    auto g1 = as_chainmail(f.source());
    auto g2 = as_chainmail(f.target());
    auto d1 = d_lattice(g1, budget);
    auto d2 = d_lattice(g2, budget);
    auto kd1 = k_chainmail(d1.lattice);
    auto kd2 = k_chainmail(d2.lattice);
    MapTable kdm = k_on_morphism_table(kd1, kd2, d_on_morphism_table(g1, d1, g2, d2, f.table()));
    require_equal(detail::after(kdm, unit_table(g1, d1, kd1)), detail::after(unit_table(g2, d2, kd2), f.table()),
                  "unit square");
    return squares;
  }
  if (f.role() != MapRole::connectivity_hom && f.role() != MapRole::weak_connectivity_hom)
    throw Error(ErrorKind::axiom_violation, "naturality needs a chainmail morphism or connectivity homomorphism");
  auto l1 = as_complete_lattice(f.source());
  auto l2 = as_complete_lattice(f.target());
  auto k1 = k_chainmail(l1);
  auto k2 = k_chainmail(l2);
  auto dk1 = d_lattice(k1.chainmail, budget);
  auto dk2 = d_lattice(k2.chainmail, budget);
  MapTable kf = k_on_morphism_table(k1, k2, f.table());
  MapTable dkf = d_on_morphism_table(k1.chainmail, dk1, k2.chainmail, dk2, kf);
  require_equal(detail::after(f.table(), epsilon_table(l1, k1, dk1)),
                detail::after(epsilon_table(l2, k2, dk2), dkf), "counit square");
  MapTable f_adj = right_adjoint_table(l1, l2, f.table());
  MapTable dkf_adj = d_adjoint_table(k1.chainmail, dk1, k2.chainmail, dk2, kf);
  require_equal(detail::after(epsilon_adjoint_table(l1, k1, dk1), f_adj),
                detail::after(dkf_adj, epsilon_adjoint_table(l2, k2, dk2)), "counit adjoint square");
  return squares;
}

// ---------------------------------------------------------------------------
// Hom-set enumeration.

// All monotone tables src -> dst, assigned along a linear extension.
inline std::vector<MapTable> monotone_maps(const Poset& src, const Poset& dst) {
  std::vector<MapTable> out;
  std::vector<Element> order = src.linear_extension();
  MapTable t(src.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(t);
      return;
    }
    Element x = order[i];
    for (Element y = 0; y < dst.size(); ++y) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (src.less(order[j], x) && !dst.leq(t[order[j]], y)) ok = false;
      if (!ok) continue;
      t[x] = y;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline std::vector<MapTable> chainmail_morphisms(const Chainmail& g1, const Chainmail& g2) {
  std::vector<MapTable> out;
  for (auto& t : monotone_maps(g1.poset(), g2.poset())) {
    try {
      check_mail_joins(g1, g2, t);
      out.push_back(std::move(t));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::mail_join_not_preserved) throw;
    }
  }
  return out;
}

// Join-irreducibles: nonzero elements with exactly one lower cover.
inline std::vector<Element> join_irreducibles(const CompleteLattice& l) {
  std::vector<Element> out;
  for (Element x = 0; x < l.size(); ++x) {
    if (x == l.bottom()) continue;
    std::size_t lower_covers = 0;
    for (Element y = 0; y < l.size(); ++y)
      if (l.poset().is_cover(y, x)) ++lower_covers;
    if (lower_covers == 1) out.push_back(x);
  }
  return out;
}

// Every join-preserving map is determined by its monotone restriction to the
// join-irreducibles; candidates are extended by joins and then checked.
inline std::vector<MapTable> join_preserving_maps(const CompleteLattice& l1, const CompleteLattice& l2) {
  std::vector<Element> irr = join_irreducibles(l1);
  std::sort(irr.begin(), irr.end(),
            [&](Element a, Element b) { return l1.poset().down_count(a) < l1.poset().down_count(b); });
  std::vector<MapTable> out;
  MapTable on_irr(l1.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == irr.size()) {
      MapTable t(l1.size());
      for (Element x = 0; x < l1.size(); ++x) {
        Element acc = l2.bottom();
        for (Element j : irr)
          if (l1.leq(j, x)) acc = l2.join(acc, on_irr[j]);
        t[x] = acc;
      }
      try {
        check_join_preserving(l1, l2, t);
        out.push_back(std::move(t));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::joins_not_preserved) throw;
      }
      return;
    }
    Element x = irr[i];
    for (Element y = 0; y < l2.size(); ++y) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (l1.leq(irr[j], x) && !l2.leq(on_irr[irr[j]], y)) ok = false;
      if (!ok) continue;
      on_irr[x] = y;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<MapTable> connectivity_homs(const CompleteLattice& l1, const CompleteLattice& l2) {
  SeparatedFamily separated = all_separated_sets(l2);
  std::vector<MapTable> out;
  for (auto& t : join_preserving_maps(l1, l2)) {
    try {
      check_adjoint_separated_joins(l1, l2, right_adjoint_table(l1, l2, t), separated);
      out.push_back(std::move(t));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::adjoint_fails_separated_joins) throw;
    }
  }
  return out;
}

inline std::vector<MapTable> weak_connectivity_homs(const CompleteLattice& l1, const CompleteLattice& l2) {
  ElementSet c1 = connected_elements(l1);
  ElementSet c2 = connected_elements(l2);
  std::vector<MapTable> out;
  for (auto& t : join_preserving_maps(l1, l2)) {
    bool ok = true;
    c1.for_each([&](Element c) { ok = ok && c2.contains(t[c]); });
    if (ok) out.push_back(std::move(t));
  }
  return out;
}

struct AdjunctionReport {
  std::size_t chainmail_morphisms = 0;
  std::size_t lattice_homs = 0;
};

// Checks that f -> eps_L . D(f) is a bijection from chainmail morphisms
// G -> K(L) onto connectivity homomorphisms D(G) -> L (or the weak variant),
// with inverse G -> K(G) . eta_G. `perturb` may alter the counit table first
// (used to seed faults when testing the checks themselves).
inline AdjunctionReport check_adjunction(const Chainmail& g, const CompleteLattice& l, bool weak,
                                         const Budget& budget = {},
                                         const std::function<void(MapTable&)>& perturb = {}) {
  KChainmail k = k_chainmail(l);
  DLattice dg = d_lattice(g, budget);
  DLattice dk = d_lattice(k.chainmail, budget);
  KChainmail kdg = k_chainmail(dg.lattice);
  MapTable eps = epsilon_table(l, k, dk);
  MapTable eta = unit_table(g, dg, kdg);
  if (perturb) perturb(eps);

  std::vector<MapTable> left = chainmail_morphisms(g, k.chainmail);
  std::vector<MapTable> right = weak ? weak_connectivity_homs(dg.lattice, l) : connectivity_homs(dg.lattice, l);
  std::set<MapTable> right_set(right.begin(), right.end());
  std::set<MapTable> left_set(left.begin(), left.end());

  std::set<MapTable> images;
  for (const auto& f : left) {
    MapTable phi = detail::after(eps, d_on_morphism_table(g, dg, k.chainmail, dk, f));
    if (!right_set.count(phi))
      throw Error(ErrorKind::theorem_violation, "eps_L . D(f) is not a lattice homomorphism of the right kind");
    if (!images.insert(phi).second) throw Error(ErrorKind::theorem_violation, "f -> eps_L . D(f) is not injective");
    MapTable back = detail::after(k_on_morphism_table(kdg, k, phi), eta);
    if (back != f) throw Error(ErrorKind::theorem_violation, "K(eps_L . D(f)) . eta is not f");
  }
  for (const auto& G : right) {
    MapTable psi = detail::after(k_on_morphism_table(kdg, k, G), eta);
    if (!left_set.count(psi))
      throw Error(ErrorKind::theorem_violation, "K(F) . eta is not a chainmail morphism into K(L)");
    MapTable again = detail::after(eps, d_on_morphism_table(g, dg, k.chainmail, dk, psi));
    if (again != G) throw Error(ErrorKind::theorem_violation, "eps_L . D(K(F) . eta) is not F");
  }
  if (images.size() != right.size())
    throw Error(ErrorKind::theorem_violation, "f -> eps_L . D(f) is not surjective");
  return {left.size(), right.size()};
}

}  // namespace chainmail
