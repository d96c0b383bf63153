#include <gtest/gtest.h>

#include "chainmail/chainmail.hpp"
#include "chainmail/enumeration.hpp"
#include "chainmail/sources.hpp"
#include "oracles.hpp"

using namespace chainmail;

namespace {

const Chainmail& exa() {
  static const Chainmail g = example_exa_a();
  return g;
}

ElementSet set_of(const Poset& p, std::initializer_list<const char*> names) {
  ElementSet s(p.size());
  for (auto n : names) s.insert(*p.find_label(n));
  return s;
}

ElementSet ex(std::initializer_list<const char*> names) { return set_of(exa().poset(), names); }

Element el(const char* name) { return *exa().poset().find_label(name); }

}  // namespace

TEST(AsChainmail, Examples) {
  EXPECT_TRUE(is_chainmail(exa().poset()));
  Poset v = validate_poset(3, {{0, 1}, {0, 2}}, RelationMode::covers).with_labels({"x", "a", "b"});
  try {
    as_chainmail(v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_a_chainmail);
    EXPECT_EQ(e.witness(), (std::vector<Element>{1, 2}));
  }
  EXPECT_NO_THROW(as_chainmail(Poset::antichain(3)));
  EXPECT_NO_THROW(as_chainmail(Poset::antichain(0)));
}

TEST(AsChainmail, PairwiseCriterionMatchesAllMailsDefinition) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& p : enumerate_posets(n)) EXPECT_EQ(is_chainmail(p), oracle::is_chainmail(oracle::matrix_of(p)));
}

TEST(IsMail, Examples) {
  EXPECT_TRUE(is_mail(exa(), ex({"2", "6"})));
  EXPECT_FALSE(is_mail(exa(), ex({"3", "4"})));
  EXPECT_FALSE(is_mail(exa(), exa().poset().none()));
}

TEST(MailComponents, Examples) {
  auto comps = mail_components(exa(), ex({"2", "3", "4"}));
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], ex({"2", "3"}));
  EXPECT_EQ(comps[1], ex({"4"}));
  EXPECT_EQ(mail_components(exa(), exa().poset().all()).size(), 1u);
  Poset anti = Poset::antichain(2);
  EXPECT_EQ(mail_components(anti, anti.all()).size(), 2u);
}

TEST(JoinOfMailConnected, Examples) {
  EXPECT_EQ(join_of_mail_connected(exa(), ex({"2", "3", "6"})), el("7"));
  EXPECT_EQ(join_of_mail_connected(exa(), ex({"2", "3"})), el("5"));
  for (Element x = 0; x < exa().size(); ++x) {
    ElementSet s(exa().size());
    s.insert(x);
    EXPECT_EQ(join_of_mail_connected(exa(), s), x);
  }
  try {
    join_of_mail_connected(exa(), ex({"3", "4"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_mail_connected);
  }
}

TEST(JoinOfMailConnected, MatchesScanOnEveryChainmailUpToSeven) {
  for (const auto& p : enumerate_up_to(7, EnumerationFilter::chainmails)) {
    Chainmail g = as_chainmail(p);
    const std::size_t n = p.size();
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      ElementSet s(n);
      for (Element i = 0; i < n; ++i)
        if (mask >> i & 1U) s.insert(i);
      if (!is_mail_connected(p, s)) continue;
      auto scan = oracle::join(oracle::matrix_of(p), mask);
      ASSERT_TRUE(scan.has_value());
      EXPECT_EQ(join_of_mail_connected(g, s), *scan);
    }
  }
}

TEST(TotallyDisconnected, Examples) {
  EXPECT_TRUE(is_totally_disconnected(exa(), ex({"3", "4"})));
  EXPECT_FALSE(is_totally_disconnected(exa(), ex({"2", "3"})));
  for (Element x = 0; x < exa().size(); ++x) {
    ElementSet s(exa().size());
    s.insert(x);
    EXPECT_TRUE(is_totally_disconnected(exa(), s));
  }
  EXPECT_TRUE(is_totally_disconnected(exa(), exa().poset().none()));
}

TEST(XStar, Examples) {
  EXPECT_EQ(x_star(exa(), ex({"1", "2", "3", "5"})), ex({"5"}));
  EXPECT_EQ(x_star(exa(), ex({"3", "4"})), ex({"3", "4"}));
  EXPECT_TRUE(x_star(exa(), exa().poset().none()).empty());
}

TEST(Subchainmail, Examples) {
  // 4 < 5 in exaA, so the down-set of 5 has five elements.
  EXPECT_TRUE(is_subchainmail(exa(), ex({"1", "2", "3", "4", "5"})));
  EXPECT_FALSE(is_subchainmail(exa(), ex({"1", "2", "3", "5"})));
  EXPECT_FALSE(is_subchainmail(exa(), ex({"1", "2", "3"})));
  EXPECT_TRUE(is_subchainmail(exa(), exa().poset().none()));
}

TEST(Subchainmail, ThreeConditionsAgreeOnExaA) {
  const Poset& p = exa().poset();
  for (std::uint32_t mask = 0; mask < (1U << p.size()); ++mask) {
    ElementSet s(p.size());
    for (Element i = 0; i < p.size(); ++i)
      if (mask >> i & 1U) s.insert(i);
    if (!p.is_down_closed(s)) continue;
    bool c1 = is_down_of_totally_disconnected(exa(), s);
    EXPECT_EQ(c1, closed_under_mail_joins(exa(), s));
    EXPECT_EQ(c1, closed_under_connected_joins(exa(), s));
  }
}

TEST(SubchainmailGenerated, Examples) {
  EXPECT_EQ(subchainmail_generated(exa(), ex({"2", "3"})), ex({"1", "2", "3", "4", "5"}));
  EXPECT_EQ(subchainmail_generated(exa(), ex({"4"})), ex({"4"}));
  EXPECT_TRUE(subchainmail_generated(exa(), exa().poset().none()).empty());
}

TEST(DLattice, ExaAHasElevenElements) {
  DLattice d = d_lattice(exa());
  EXPECT_EQ(d.lattice.size(), 11u);
  EXPECT_EQ(oracle::totally_disconnected_sets(oracle::matrix_of(exa().poset())).size(), 11u);
  std::set<std::string> names(d.lattice.poset().labels().begin(), d.lattice.poset().labels().end());
  for (const char* expected : {"{}", "{1}", "{7}", "{1,4}", "{2,4}", "{3,4}"}) EXPECT_TRUE(names.count(expected));
  EXPECT_TRUE(d.sets[0].empty());
  EXPECT_EQ(d.lattice.bottom(), 0u);
}

TEST(DLattice, AntichainAndEmpty) {
  for (std::size_t n = 0; n <= 4; ++n)
    EXPECT_EQ(d_lattice(as_chainmail(Poset::antichain(n))).lattice.size(), std::size_t{1} << n);
  EXPECT_EQ(d_lattice(as_chainmail(Poset::antichain(0))).lattice.size(), 1u);
}

TEST(DLattice, SizeMatchesOracleForAllChainmailsUpToSix) {
  for (const auto& p : enumerate_up_to(6, EnumerationFilter::chainmails))
    EXPECT_EQ(d_lattice(as_chainmail(p)).lattice.size(),
              oracle::totally_disconnected_sets(oracle::matrix_of(p)).size());
}

TEST(DLattice, JoinsAndMeetsViaSubchainmails) {
  DLattice d = d_lattice(exa());
  for (Element a = 0; a < d.sets.size(); ++a)
    for (Element b = 0; b < d.sets.size(); ++b) {
      EXPECT_EQ(d.sets[d.lattice.join(a, b)], d_join_via_subchainmails(exa(), d.sets[a], d.sets[b]));
      EXPECT_EQ(d.sets[d.lattice.meet(a, b)], d_meet_via_subchainmails(exa(), d.sets[a], d.sets[b]));
    }
}

TEST(DLattice, BudgetIsEnforced) {
  Budget b;
  b.derived_size = 10;
  try {
    d_lattice(exa(), b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_budget_exceeded);
  }
}
