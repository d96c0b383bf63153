#include <gtest/gtest.h>

#include "chainmail/category.hpp"
#include "chainmail/enumeration.hpp"
#include "chainmail/sources.hpp"
#include "oracles.hpp"

using namespace chainmail;

namespace {

const Chainmail& exa() {
  static const Chainmail g = example_exa_a();
  return g;
}

CompleteLattice m3() {
  return as_complete_lattice(validate_poset(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, RelationMode::covers));
}

MapTable identity(std::size_t n) {
  MapTable t(n);
  std::iota(t.begin(), t.end(), Element{0});
  return t;
}

Element el(const Poset& p, const char* name) { return *p.find_label(name); }

Chainmail point() { return as_chainmail(Poset::antichain(1).with_labels({"*"})); }
Chainmail chain2() { return as_chainmail(Poset::chain(2).with_labels({"a", "b"})); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::io_error;
}

}  // namespace

TEST(ValidateMap, ChainmailMorphismsOnExaA) {
  const Poset& p = exa().poset();
  EXPECT_NO_THROW(validate_map(p, p, identity(7), MapRole::chainmail_morphism));
  MapTable to_top(7, el(p, "7"));
  EXPECT_NO_THROW(validate_map(p, p, to_top, MapRole::chainmail_morphism));
}

TEST(ValidateMap, ViolationsCarryTheLawAndWitness) {
  Poset c2 = Poset::chain(2);
  CompleteLattice b2 = powerset_lattice(2);
  const Poset& q = b2.poset();
  // Order collapsed: 0 -> {0}, 1 -> {}.
  EXPECT_EQ(kind_of([&] { validate_map(c2, q, {el(q, "{0}"), el(q, "{}")}, MapRole::connectivity_hom); }),
            ErrorKind::not_monotone);
  // Bottom not preserved.
  try {
    validate_map(c2, q, {el(q, "{0}"), el(q, "{0}")}, MapRole::connectivity_hom);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::joins_not_preserved);
    EXPECT_EQ(e.witness(), (std::vector<Element>{0}));
  }
  // Joins preserved, but the adjoint sends top to 1 while both atoms go to 0.
  try {
    validate_map(c2, q, {el(q, "{}"), el(q, "{0,1}")}, MapRole::connectivity_hom);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::adjoint_fails_separated_joins);
    EXPECT_EQ(e.witness(), (std::vector<Element>{el(q, "{0}"), el(q, "{1}")}));
  }
  EXPECT_EQ(kind_of([&] { validate_map(c2, q, {el(q, "{}"), el(q, "{0,1}")}, MapRole::weak_connectivity_hom); }),
            ErrorKind::connected_not_preserved);
  // The three-element V is not a lattice.
  Poset v = validate_poset(3, {{0, 1}, {0, 2}}, RelationMode::covers);
  EXPECT_EQ(kind_of([&] { validate_map(c2, v, {0, 1}, MapRole::connectivity_hom); }), ErrorKind::not_a_lattice);
  // A mail whose join is not preserved: {2,3} -> {3,4} has no join.
  const Poset& p = exa().poset();
  MapTable t = identity(7);
  t[el(p, "2")] = el(p, "4");
  t[el(p, "1")] = el(p, "4");
  EXPECT_EQ(kind_of([&] { validate_map(p, p, t, MapRole::chainmail_morphism); }), ErrorKind::not_monotone);
  MapTable u(7, el(p, "7"));
  u[el(p, "1")] = el(p, "1");
  u[el(p, "2")] = el(p, "2");
  u[el(p, "3")] = el(p, "3");
  EXPECT_EQ(kind_of([&] { validate_map(p, p, u, MapRole::chainmail_morphism); }),
            ErrorKind::mail_join_not_preserved);
}

TEST(RightAdjoint, Examples) {
  CompleteLattice b2 = powerset_lattice(2);
  PosetMap id = validate_map(b2.poset(), b2.poset(), identity(4), MapRole::connectivity_hom);
  EXPECT_EQ(right_adjoint(id).table(), identity(4));

  MapTable to_top(4, b2.top());
  EXPECT_EQ(kind_of([&] { right_adjoint_table(b2, b2, to_top); }), ErrorKind::not_join_preserving);

  CompleteLattice b1 = powerset_lattice(1);
  const Poset& q = b2.poset();
  MapTable incl = {el(q, "{}"), el(q, "{0}")};
  MapTable adj = right_adjoint_table(b1, b2, incl);
  const Poset& s = b1.poset();
  EXPECT_EQ(adj[el(q, "{}")], el(s, "{}"));
  EXPECT_EQ(adj[el(q, "{0}")], el(s, "{0}"));
  EXPECT_EQ(adj[el(q, "{1}")], el(s, "{}"));
  EXPECT_EQ(adj[el(q, "{0,1}")], el(s, "{0}"));
}

TEST(KChainmail, Examples) {
  EXPECT_TRUE(is_isomorphic(k_chainmail(powerset_lattice(3)).chainmail.poset(), Poset::antichain(3)));
  EXPECT_EQ(k_chainmail(m3()).chainmail.size(), 0u);
  EXPECT_TRUE(is_isomorphic(k_chainmail(as_complete_lattice(Poset::chain(3))).chainmail.poset(), Poset::chain(2)));
}

TEST(KOnMorphism, Examples) {
  CompleteLattice b2 = powerset_lattice(2);
  PosetMap id = validate_map(b2.poset(), b2.poset(), identity(4), MapRole::connectivity_hom);
  EXPECT_EQ(k_on_morphism(id).table(), identity(2));

  CompleteLattice b1 = powerset_lattice(1);
  const Poset& q = b2.poset();
  PosetMap incl = validate_map(b1.poset(), q, {el(q, "{}"), el(q, "{0}")}, MapRole::connectivity_hom);
  PosetMap k = k_on_morphism(incl);
  ASSERT_EQ(k.table().size(), 1u);
  EXPECT_EQ(k.target().label(k(0)), "{0}");

  CompleteLattice l = m3();
  MapTable bottom_map(l.size(), l.bottom());
  PosetMap f = validate_map(l.poset(), l.poset(), bottom_map, MapRole::weak_connectivity_hom);
  EXPECT_TRUE(k_on_morphism(f).table().empty());
}

TEST(DOnMorphism, PointIntoTwoChain) {
  PosetMap m = validate_chainmail_morphism(point(), chain2(), {0});
  PosetMap d = d_on_morphism(m);
  EXPECT_EQ(d.source().label(0), "{}");
  EXPECT_EQ(d.target().label(d(*d.source().find_label("{}"))), "{}");
  EXPECT_EQ(d.target().label(d(*d.source().find_label("{*}"))), "{a}");

  PosetMap adj = d_morphism_adjoint(m);
  EXPECT_EQ(adj.target().label(adj(*adj.source().find_label("{b}"))), "{*}");
  EXPECT_EQ(adj.target().label(adj(*adj.source().find_label("{}"))), "{}");
  EXPECT_EQ(adj.table(), right_adjoint(d).table());
}

TEST(DOnMorphism, IdentityAndConstantToTop) {
  PosetMap id = validate_chainmail_morphism(exa(), exa(), identity(7));
  EXPECT_EQ(d_on_morphism(id).table(), identity(11));
  EXPECT_EQ(d_morphism_adjoint(id).table(), identity(11));

  const Poset& p = exa().poset();
  PosetMap top = validate_chainmail_morphism(exa(), exa(), MapTable(7, el(p, "7")));
  PosetMap d = d_on_morphism(top);
  for (Element i = 0; i < d.table().size(); ++i)
    EXPECT_EQ(d.target().label(d(i)), d.source().label(i) == "{}" ? "{}" : "{7}");
  EXPECT_EQ(d_morphism_adjoint(top).table(), right_adjoint(d).table());
}

TEST(DOnMorphism, AdjointFormulaMatchesRightAdjointOnAllSmallMorphisms) {
  auto mails = enumerate_up_to(3, EnumerationFilter::chainmails);
  for (const auto& p1 : mails)
    for (const auto& p2 : mails) {
      Chainmail g1 = as_chainmail(p1), g2 = as_chainmail(p2);
      for (auto& t : chainmail_morphisms(g1, g2)) {
        PosetMap m = validate_chainmail_morphism(g1, g2, t);
        EXPECT_EQ(d_morphism_adjoint(m).table(), right_adjoint(d_on_morphism(m)).table());
      }
    }
}

TEST(Unit, Examples) {
  Unit u = unit_eta(exa());
  EXPECT_EQ(u.eta.table().size(), 7u);
  for (Element x = 0; x < 7; ++x)
    EXPECT_EQ(u.eta.target().label(u.eta(x)), "{" + exa().poset().label(x) + "}");
  Unit c = unit_eta(chain2());
  EXPECT_EQ(c.d.lattice.size(), 3u);
  EXPECT_EQ(c.eta.target().label(c.eta(0)), "{a}");
  EXPECT_EQ(c.eta.target().label(c.eta(1)), "{b}");
  EXPECT_TRUE(unit_eta(as_chainmail(Poset::antichain(0))).eta.table().empty());
}

TEST(Counit, Examples) {
  CompleteLattice b2 = powerset_lattice(2);
  Counit c = counit_epsilon(b2);
  EXPECT_EQ(c.dk.lattice.size(), 4u);
  EXPECT_TRUE(is_order_isomorphism(c.dk.lattice.poset(), b2.poset(), c.epsilon.table()));

  Counit m = counit_epsilon(m3());
  EXPECT_EQ(m.dk.lattice.size(), 1u);
  EXPECT_EQ(m.epsilon(0), m3().bottom());

  EXPECT_TRUE(is_epsilon_iso(b2));
  EXPECT_FALSE(is_epsilon_iso(m3()));
  EXPECT_TRUE(is_epsilon_iso(as_complete_lattice(Poset::chain(1))));
}

TEST(Triangle, Examples) {
  EXPECT_NO_THROW(check_triangle_identities(exa(), powerset_lattice(2)));
  EXPECT_NO_THROW(check_triangle_identities(chain2(), powerset_lattice(3)));
  EXPECT_NO_THROW(check_triangle_identities(as_chainmail(Poset::antichain(0)), as_complete_lattice(Poset::chain(1))));
  EXPECT_NO_THROW(check_triangle_identities(exa(), m3()));
}

TEST(Naturality, Examples) {
  EXPECT_NO_THROW(check_naturality(validate_chainmail_morphism(exa(), exa(), identity(7))));
  const Poset& p = exa().poset();
  EXPECT_NO_THROW(check_naturality(validate_chainmail_morphism(exa(), exa(), MapTable(7, el(p, "7")))));
  EXPECT_NO_THROW(check_naturality(validate_chainmail_morphism(point(), chain2(), {0})));
  CompleteLattice b2 = powerset_lattice(2);
  EXPECT_EQ(check_naturality(validate_map(b2.poset(), b2.poset(), identity(4), MapRole::connectivity_hom)).size(), 2u);
}

TEST(Compose, RolesAreClosedOnSmallInstances) {
  auto lattices = enumerate_up_to(4, EnumerationFilter::all_posets);
  std::vector<CompleteLattice> ls;
  for (auto& p : lattices)
    if (oracle::is_lattice(oracle::matrix_of(p))) ls.push_back(as_complete_lattice(p));
  for (const auto& a : ls)
    for (const auto& b : ls)
      for (const auto& c : ls)
        for (const auto& f : connectivity_homs(a, b))
          for (const auto& g : connectivity_homs(b, c)) {
            PosetMap pf = validate_connectivity_hom(a, b, f);
            PosetMap pg = validate_connectivity_hom(b, c, g);
            EXPECT_EQ(compose(pg, pf).role(), MapRole::connectivity_hom);
          }
  auto mails = enumerate_up_to(3, EnumerationFilter::chainmails);
  for (const auto& p1 : mails)
    for (const auto& p2 : mails) {
      Chainmail g1 = as_chainmail(p1), g2 = as_chainmail(p2);
      for (const auto& f : chainmail_morphisms(g1, g2))
        for (const auto& g : chainmail_morphisms(g2, g1)) {
          PosetMap composite = compose(validate_chainmail_morphism(g2, g1, g), validate_chainmail_morphism(g1, g2, f));
          EXPECT_EQ(composite.role(), MapRole::chainmail_morphism);
        }
    }
}

TEST(HomSets, JoinPreservingMapsAgainstBruteForce) {
  auto lattices = enumerate_up_to(5, EnumerationFilter::all_posets);
  std::vector<CompleteLattice> ls;
  for (auto& p : lattices)
    if (oracle::is_lattice(oracle::matrix_of(p))) ls.push_back(as_complete_lattice(p));
  for (const auto& a : ls)
    for (const auto& b : ls) {
      std::size_t brute = 0;
      for (const auto& t : monotone_maps(a.poset(), b.poset())) {
        bool ok = t[a.bottom()] == b.bottom();
        for (Element x = 0; x < a.size() && ok; ++x)
          for (Element y = 0; y < a.size() && ok; ++y) ok = t[a.join(x, y)] == b.join(t[x], t[y]);
        brute += ok;
      }
      EXPECT_EQ(join_preserving_maps(a, b).size(), brute);
    }
}

TEST(HomSets, AdjunctionOnExamples) {
  auto r = check_adjunction(chain2(), powerset_lattice(2), false);
  EXPECT_EQ(r.chainmail_morphisms, r.lattice_homs);
  auto w = check_adjunction(exa(), powerset_lattice(2), true);
  EXPECT_EQ(w.chainmail_morphisms, w.lattice_homs);
  auto e = check_adjunction(point(), m3(), false);
  EXPECT_EQ(e.chainmail_morphisms, 0u);
  EXPECT_EQ(e.lattice_homs, 0u);
}
