#pragma once

// Exhaustive property suites over enumerated populations of small lattices
// and chainmails. Each suite can seed one deliberate fault into its own
// pipeline, so the checks themselves can be shown to bite.

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chainmail/category.hpp"
#include "chainmail/chainmail.hpp"
#include "chainmail/enumeration.hpp"
#include "chainmail/lattice.hpp"

namespace chainmail {

struct SuiteOptions {
  std::size_t max_size = 6;
  bool mutate = false;
  std::size_t keep_violations = 20;
};

struct SuiteReport {
  std::string suite;
  std::size_t structures = 0;
  std::size_t checks = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // the first few, verbatim

  bool passed() const { return violation_count == 0; }
};

namespace detail {

class Recorder {
 public:
  Recorder(std::string suite, const SuiteOptions& opt) : opt_(opt) { report_.suite = std::move(suite); }

  void structure() { ++report_.structures; }

  void check(bool ok, const std::function<std::string()>& what) {
    ++report_.checks;
    if (ok) return;
    fail(what());
  }

  void fail(const std::string& what) {
    ++report_.violation_count;
    if (report_.violations.size() < opt_.keep_violations) report_.violations.push_back(what);
  }

  // Runs body; library errors count as violations.
  void guarded(const std::string& context, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      ++report_.checks;
      fail(context + ": " + e.what());
    }
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteOptions opt_;
  SuiteReport report_;
};

inline std::string describe(const Poset& p) {
  std::string out = "poset n=" + std::to_string(p.size()) + " covers";
  for (auto [a, b] : p.covers()) out += " " + p.label(a) + "<" + p.label(b);
  return out;
}

}  // namespace detail

// Every complete lattice among the posets of size 1..max_size, one per
// isomorphism class.
inline std::vector<CompleteLattice> lattice_population(std::size_t max_size) {
  std::vector<CompleteLattice> out;
  Budget b;
  b.enumeration_n = std::max(b.enumeration_n, max_size);
  for (auto& p : enumerate_up_to(max_size, EnumerationFilter::all_posets, b)) {
    try {
      out.push_back(as_complete_lattice(std::move(p)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_a_lattice) throw;
    }
  }
  return out;
}

// Every chainmail of size 0..max_size, one per isomorphism class.
inline std::vector<Chainmail> chainmail_population(std::size_t max_size) {
  std::vector<Chainmail> out{as_chainmail(Poset::antichain(0))};
  if (max_size == 0) return out;
  Budget b;
  b.enumeration_n = std::max(b.enumeration_n, max_size);
  for (auto& p : enumerate_up_to(max_size, EnumerationFilter::chainmails, b)) out.push_back(as_chainmail(std::move(p)));
  return out;
}

// Literal conditions over every subset of the lattice (small lattices only).
struct ReferenceConditions {
  std::vector<bool> e3, e4;
};

inline ReferenceConditions reference_conditions(const CompleteLattice& l) {
  const std::size_t n = l.size();
  require_within(n, 16, "reference condition check");
  std::vector<std::pair<ElementSet, Element>> separated;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    ElementSet s(n);
    for (Element i = 0; i < n; ++i)
      if (mask >> i & 1U) s.insert(i);
    if (is_separated(l, s)) separated.emplace_back(s, l.join(s));
  }
  ReferenceConditions r{std::vector<bool>(n, true), std::vector<bool>(n, true)};
  for (Element a = 0; a < n; ++a)
    for (const auto& [s, j] : separated) {
      if (j == a && !s.contains(a)) r.e3[a] = false;
      bool above = false;
      s.for_each([&](Element m) { above = above || l.leq(a, m); });
      if (l.leq(a, j) && !above) r.e4[a] = false;
    }
  return r;
}

// Implications among E1-E4, E2 => E4 in locally connected lattices, and E3/E4
// against the literal definitions. Mutation: the top element's E4 verdict is
// flipped before comparison.
inline SuiteReport suite_e_conditions(const SuiteOptions& opt = {}) {
  detail::Recorder rec("e-conditions", opt);
  for (const auto& l : lattice_population(opt.max_size)) {
    rec.structure();
    rec.guarded(detail::describe(l.poset()), [&] {
      const std::size_t n = l.size();
      std::vector<std::array<bool, 4>> v(n);
      for (Element a = 0; a < n; ++a)
        for (int c = 0; c < 4; ++c) v[a][c] = check_condition(l, a, static_cast<Condition>(c));
      if (opt.mutate) v[l.top()][3] = !v[l.top()][3];
      ElementSet connected(n);
      for (Element a = 0; a < n; ++a)
        if (v[a][3]) connected.insert(a);
      bool lc = is_locally_connected(l, connected);
      auto ref = reference_conditions(l);
      for (Element a = 0; a < n; ++a) {
        auto where = [&](const char* what) {
          return std::string(what) + " fails at " + l.poset().label(a) + " in " + detail::describe(l.poset());
        };
        bool e1 = v[a][0], e2 = v[a][1], e3 = v[a][2], e4 = v[a][3];
        rec.check(!e4 || e1, [&] { return where("E4 => E1"); });
        rec.check(!e1 || e2, [&] { return where("E1 => E2"); });
        rec.check(!e3 || e2, [&] { return where("E3 => E2"); });
        rec.check(!e4 || e3, [&] { return where("E4 => E3"); });
        if (lc) rec.check(!e2 || e4, [&] { return where("E2 => E4 (locally connected)"); });
        rec.check(e3 == ref.e3[a], [&] { return where("E3 agrees with the literal definition"); });
        rec.check(e4 == ref.e4[a], [&] { return where("E4 agrees with the literal definition"); });
      }
    });
  }
  return rec.take();
}

// nu iso <=> nu surjective <=> locally connected; epsilon iso <=> locally
// connected; S(L) = D(K(L)) under a connective foundation. Mutation: the
// locally-connected verdict is negated.
inline SuiteReport suite_thm_d(const SuiteOptions& opt = {}) {
  detail::Recorder rec("thmD", opt);
  for (const auto& l : lattice_population(opt.max_size)) {
    rec.structure();
    const std::string where = detail::describe(l.poset());
    rec.guarded(where, [&] {
      ElementSet connected = connected_elements(l);
      bool lc = is_locally_connected(l, connected);
      if (opt.mutate) lc = !lc;
      SeparationPoset s = separation_poset(l, connected);
      ElementSet hit(l.size());
      for (Element v : s.nu) hit.insert(v);
      bool surjective = hit.count() == l.size();
      bool iso = is_order_isomorphism(s.poset, l.poset(), s.nu);
      rec.check(iso == surjective, [&] { return "nu iso != nu surjective in " + where; });
      rec.check(surjective == lc, [&] { return "nu surjective != locally connected in " + where; });
      rec.check(is_epsilon_iso(l) == lc, [&] { return "epsilon iso != locally connected in " + where; });
      if (has_connective_foundation(l, connected)) {
        DLattice dk = d_lattice(k_chainmail(l, connected).chainmail);
        rec.check(is_isomorphic(s.poset, dk.lattice.poset()), [&] { return "S(L) is not D(K(L)) in " + where; });
      }
      // Distinct separated sets of connected elements have distinct joins.
      std::set<Element> joins(s.nu.begin(), s.nu.end());
      rec.check(joins.size() == s.nu.size(), [&] { return "two separated sets share a join in " + where; });
      // Chained sets of connected elements have connected joins.
      std::vector<Element> cm = connected.members();
      for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << cm.size()); ++mask) {
        ElementSet c(l.size());
        for (std::size_t i = 0; i < cm.size(); ++i)
          if (mask >> i & 1U) c.insert(cm[i]);
        if (!is_chained(l, c)) continue;
        rec.check(connected.contains(l.join(c)),
                  [&] { return "join of chained set " + l.poset().format_set(c) + " is not connected in " + where; });
      }
      if (is_locally_connected(l, connected))
        for (Element x = 0; x < l.size(); ++x) {
          ElementSet st = star(l, connected, x);
          rec.check(is_separated(l, st) && l.join(st) == x,
                    [&] { return "x* is not a separated decomposition of " + l.poset().label(x) + " in " + where; });
        }
    });
  }
  return rec.take();
}

namespace detail {

inline std::vector<ElementSet> all_subsets(std::size_t n) {
  std::vector<ElementSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    ElementSet s(n);
    for (Element i = 0; i < n; ++i)
      if (mask >> i & 1U) s.insert(i);
    out.push_back(std::move(s));
  }
  return out;
}

// Literal chainmail definition: every nonempty subset with a common lower
// bound has a least upper bound.
inline bool chainmail_by_all_mails(const Poset& p) {
  for (const auto& s : all_subsets(p.size()))
    if (!s.empty() && !p.lower_bounds(s).empty() && !p.join_of(s)) return false;
  return true;
}

}  // namespace detail

// The pairwise chainmail criterion against the all-mails definition for every
// poset of size 1..max_size.
inline SuiteReport suite_pairwise_criterion(const SuiteOptions& opt = {}) {
  detail::Recorder rec("pairwise-criterion", opt);
  Budget b;
  b.enumeration_n = std::max(b.enumeration_n, opt.max_size);
  for (const auto& p : enumerate_up_to(opt.max_size, EnumerationFilter::all_posets, b)) {
    rec.structure();
    bool fast = is_chainmail(p);
    if (opt.mutate && p.size() == 3 && p.covers().size() == 2 && p.minimal(p.all()).count() == 1) fast = !fast;
    rec.check(fast == detail::chainmail_by_all_mails(p),
              [&] { return "pairwise criterion disagrees on " + detail::describe(p); });
  }
  return rec.take();
}

// Mail-connected joins, the three subchainmail conditions, the td-set /
// subchainmail correspondence, generated subchainmails, and separated sets in
// D(G). Mutation: condition (2) is negated on the empty set.
inline SuiteReport suite_thm_f(const SuiteOptions& opt = {}) {
  detail::Recorder rec("thmF", opt);
  for (const auto& g : chainmail_population(opt.max_size)) {
    rec.structure();
    const Poset& p = g.poset();
    const std::string where = detail::describe(p);
    rec.guarded(where, [&] {
      auto subsets = detail::all_subsets(p.size());
      std::vector<ElementSet> subchainmails;
      for (const auto& x : subsets) {
        if (!x.empty() && is_mail_connected(p, x)) {
          auto scan = p.join_of(x);
          rec.check(scan.has_value() && join_of_mail_connected(g, x) == *scan,
                    [&] { return "mail-connected set " + p.format_set(x) + " join mismatch in " + where; });
        }
        if (!p.is_down_closed(x)) continue;
        bool c1 = is_down_of_totally_disconnected(g, x);
        bool c2 = closed_under_mail_joins(g, x);
        bool c3 = closed_under_connected_joins(g, x);
        if (opt.mutate && x.empty()) c2 = !c2;
        rec.check(c1 == c2 && c2 == c3, [&] {
          return "conditions (1)(2)(3) disagree on " + p.format_set(x) + " in " + where;
        });
        if (c1) subchainmails.push_back(x);
      }
      DLattice d = d_lattice(g);
      // td-set <-> subchainmail.
      std::set<ElementSet, ElementSetLess> downs;
      for (const auto& t : d.sets) {
        ElementSet down = p.down_closure(t);
        downs.insert(down);
        rec.check(x_star(g, down) == t, [&] { return "X* of the down-set of " + p.format_set(t) + " in " + where; });
      }
      rec.check(downs.size() == subchainmails.size() &&
                    std::all_of(subchainmails.begin(), subchainmails.end(),
                                [&](const ElementSet& x) { return downs.count(x) > 0; }),
                [&] { return "td-sets and subchainmails do not correspond in " + where; });
      // Generated subchainmail = intersection of containing subchainmails.
      for (const auto& x : subsets) {
        ElementSet meet = p.all();
        for (const auto& s : subchainmails)
          if (x.is_subset_of(s)) meet &= s;
        rec.check(subchainmail_generated(g, x) == meet,
                  [&] { return "generated subchainmail of " + p.format_set(x) + " in " + where; });
      }
      // Order on D(G) against inclusion of down-sets; joins and meets against
      // the subchainmail lattice.
      for (Element a = 0; a < d.sets.size(); ++a)
        for (Element b = 0; b < d.sets.size(); ++b) {
          ElementSet da = p.down_closure(d.sets[a]), db = p.down_closure(d.sets[b]);
          rec.check(d.lattice.leq(a, b) == da.is_subset_of(db),
                    [&] { return "D(G) order is not inclusion of down-sets in " + where; });
          rec.check(d.sets[d.lattice.join(a, b)] == d_join_via_subchainmails(g, d.sets[a], d.sets[b]),
                    [&] { return "D(G) join mismatch in " + where; });
          rec.check(d.sets[d.lattice.meet(a, b)] == d_meet_via_subchainmails(g, d.sets[a], d.sets[b]),
                    [&] { return "D(G) meet mismatch in " + where; });
        }
      // Separated sets of D(G): nonempty members, pairwise disjoint, union
      // totally disconnected; their join is the union.
      if (p.size() <= 5) {
        std::set<std::vector<Element>> separated, by_union;
        for_each_separated_set(d.lattice, d.lattice.poset().all(), [&](const std::vector<Element>& m, Element j) {
          separated.insert(m);
          ElementSet u(p.size());
          for (Element e : m) u |= d.sets[e];
          rec.check(d.sets[j] == u, [&] { return "join of a separated set in D(G) is not the union in " + where; });
          return true;
        });
        std::vector<Element> chosen;
        std::function<void(Element, ElementSet)> grow = [&](Element from, ElementSet u) {
          by_union.insert(chosen);
          for (Element e = from; e < d.sets.size(); ++e) {
            if (d.sets[e].empty() || d.sets[e].intersects(u)) continue;
            ElementSet next = u | d.sets[e];
            if (!is_totally_disconnected(p, next)) continue;
            chosen.push_back(e);
            grow(e + 1, next);
            chosen.pop_back();
          }
        };
        grow(0, ElementSet(p.size()));
        rec.check(separated == by_union,
                  [&] { return "separated sets of D(G) differ from disjoint td families in " + where; });
      }
    });
  }
  return rec.take();
}

// eta is an isomorphism onto K(D(G)) for every chainmail, epsilon is an
// isomorphism for every locally connected lattice. Mutation: the first two
// entries of eta are swapped.
inline SuiteReport suite_thm_h(const SuiteOptions& opt = {}) {
  detail::Recorder rec("thmH", opt);
  for (const auto& g : chainmail_population(opt.max_size)) {
    rec.structure();
    const std::string where = detail::describe(g.poset());
    rec.guarded(where, [&] {
      DLattice d = d_lattice(g);
      KChainmail kd = k_chainmail(d.lattice);
      MapTable eta = unit_table(g, d, kd);
      if (opt.mutate && eta.size() >= 2) std::swap(eta[0], eta[1]);
      rec.check(is_order_isomorphism(g.poset(), kd.chainmail.poset(), eta),
                [&] { return "eta is not an isomorphism for " + where; });
    });
  }
  for (const auto& l : lattice_population(opt.max_size)) {
    if (!is_locally_connected(l)) continue;
    rec.structure();
    const std::string where = detail::describe(l.poset());
    rec.guarded(where, [&] {
      rec.check(is_epsilon_iso(l), [&] { return "epsilon is not an isomorphism for locally connected " + where; });
      rec.check(is_isomorphic(d_lattice(k_chainmail(l).chainmail).lattice.poset(), l.poset()),
                [&] { return "D(K(L)) is not isomorphic to " + where; });
    });
  }
  return rec.take();
}

// Hom-set bijection (strong and weak), triangle identities, naturality of
// the counit on every connectivity homomorphism, and the Galois law with the
// preservation properties of connectivity homomorphisms. Lattices have size
// <= max_size and chainmails size <= max_size - 1. Mutation: the counit sends
// its largest argument to bottom.
inline SuiteReport suite_adjunction(const SuiteOptions& opt = {}) {
  detail::Recorder rec("adjunction", opt);
  const std::size_t lmax = opt.max_size;
  const std::size_t gmax = lmax > 0 ? lmax - 1 : 0;
  auto lattices = lattice_population(lmax);
  auto chainmails = chainmail_population(gmax);
  std::function<void(MapTable&)> perturb;
  if (opt.mutate)
    perturb = [](MapTable& eps) {
      if (eps.size() > 1) eps.back() = eps.front();
    };
  for (const auto& g : chainmails)
    for (const auto& l : lattices) {
      rec.structure();
      const std::string where = detail::describe(g.poset()) + " with lattice " + detail::describe(l.poset());
      rec.guarded(where, [&] {
        check_adjunction(g, l, false, {}, perturb);
        check_adjunction(g, l, true, {}, perturb);
        check_triangle_identities(g, l);
        rec.check(true, [] { return std::string(); });
      });
    }
  for (const auto& l1 : lattices)
    for (const auto& l2 : lattices) {
      const std::string where = detail::describe(l1.poset()) + " to " + detail::describe(l2.poset());
      rec.guarded(where, [&] {
        ElementSet c1 = connected_elements(l1), c2 = connected_elements(l2);
        for (const auto& t : connectivity_homs(l1, l2)) {
          MapTable adj = right_adjoint_table(l1, l2, t);
          for (Element x = 0; x < l1.size(); ++x)
            for (Element y = 0; y < l2.size(); ++y)
              rec.check(l2.leq(t[x], y) == l1.leq(x, adj[y]), [&] { return "Galois law fails for " + where; });
          rec.check(adj[l2.bottom()] == l1.bottom(), [&] { return "adjoint does not keep bottom for " + where; });
          for_each_separated_set(l2, l2.poset().all(), [&](const std::vector<Element>& m, Element) {
            // Images may be bottom; distinct members must have disjoint images.
            bool ok = true;
            for (std::size_t i = 0; i < m.size(); ++i)
              for (std::size_t j = i + 1; j < m.size(); ++j) ok = ok && l1.meet(adj[m[i]], adj[m[j]]) == l1.bottom();
            rec.check(ok, [&] { return "adjoint does not keep a separated set separated for " + where; });
            return true;
          });
          c1.for_each([&](Element c) {
            rec.check(c2.contains(t[c]), [&] { return "a connected element is not preserved for " + where; });
          });
          PosetMap f = PosetMap(detail::MapKey{}, l1.poset(), l2.poset(), t, MapRole::connectivity_hom);
          check_naturality(f);
        }
      });
    }
  return rec.take();
}

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {"e-conditions", "thmD", "thmF", "thmH", "adjunction",
                                                      "pairwise-criterion"};
  return names;
}

inline SuiteReport run_suite(std::string_view name, const SuiteOptions& opt) {
  if (name == "e-conditions") return suite_e_conditions(opt);
  if (name == "thmD") return suite_thm_d(opt);
  if (name == "thmF") return suite_thm_f(opt);
  if (name == "thmH") return suite_thm_h(opt);
  if (name == "adjunction") return suite_adjunction(opt);
  if (name == "pairwise-criterion") return suite_pairwise_criterion(opt);
  throw Error(ErrorKind::parse_error, "unknown suite \"" + std::string(name) + "\"");
}

}  // namespace chainmail
