#include <gtest/gtest.h>

#include "chainmail/canonical.hpp"
#include "chainmail/sources.hpp"
#include "oracles.hpp"

using namespace chainmail;

namespace {

std::vector<std::string> labels(const Chainmail& g) { return g.poset().labels(); }

std::vector<Graph> all_graphs(std::size_t max_vertices) {
  std::vector<Graph> out;
  for (std::size_t v = 0; v <= max_vertices; ++v) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < v; ++a)
      for (std::size_t b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
    for (std::uint32_t s = 0; s < (1U << pairs.size()); ++s) {
      Graph g{v, {}};
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (s >> k & 1U) g.edges.push_back(pairs[k]);
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace

TEST(Graph, Examples) {
  Graph path{3, {{0, 1}, {1, 2}}};
  EXPECT_EQ(labels(chainmail_from_graph(path)),
            (std::vector<std::string>{"{0}", "{1}", "{2}", "{0,1}", "{1,2}", "{0,1,2}"}));
  EXPECT_EQ(chainmail_from_graph(Graph{3, {{0, 1}, {1, 2}, {0, 2}}}).size(), 7u);
  Chainmail edgeless = chainmail_from_graph(Graph{2, {}});
  EXPECT_TRUE(edgeless.poset() == Poset::antichain(2));
}

TEST(Graph, GroundBudget) {
  try {
    chainmail_from_graph(Graph{6, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_budget_exceeded);
  }
}

TEST(Hypergraph, Examples) {
  Graph path{3, {{0, 1}, {1, 2}}};
  EXPECT_EQ(chainmail_from_hypergraph(graph_hypergraph(path)).poset(), chainmail_from_graph(path).poset());
  EXPECT_EQ(labels(chainmail_from_hypergraph(graph_hypergraph(path))), labels(chainmail_from_graph(path)));

  Hypergraph big{3, {{0}, {1}, {2}, {0, 1, 2}}};
  EXPECT_EQ(labels(chainmail_from_hypergraph(big)), (std::vector<std::string>{"{0}", "{1}", "{2}", "{0,1,2}"}));
  EXPECT_EQ(chainmail_from_hypergraph(Hypergraph{3, {}}).size(), 0u);
}

TEST(Hypergraph, AgreesWithGraphsAndConnectivitySpaces) {
  for (const auto& g : all_graphs(4)) {
    Chainmail from_graph = chainmail_from_graph(g);
    Chainmail from_h = chainmail_from_hypergraph(graph_hypergraph(g));
    EXPECT_TRUE(from_graph.poset() == from_h.poset());
    EXPECT_EQ(labels(from_graph), labels(from_h));
    ConnectivitySpace s{g.vertices, {{}}};
    for (auto m : graph_connected_sets(g)) s.connected.push_back(point_members(m));
    Chainmail from_s = chainmail_from_connectivity_space(s);
    EXPECT_TRUE(from_s.poset() == from_graph.poset());
    EXPECT_EQ(labels(from_s), labels(from_graph));
  }
}

TEST(Topology, Examples) {
  FiniteTopology sierpinski{2, {{}, {0}, {0, 1}}};
  Chainmail s = chainmail_from_topology(sierpinski);
  EXPECT_EQ(labels(s), (std::vector<std::string>{"{0}", "{1}", "{0,1}"}));
  EXPECT_TRUE(s.poset().less(0, 2));
  EXPECT_TRUE(s.poset().less(1, 2));
  EXPECT_FALSE(s.poset().comparable(0, 1));

  EXPECT_TRUE(chainmail_from_topology(FiniteTopology{2, {{}, {0}, {1}, {0, 1}}}).poset() == Poset::antichain(2));
  EXPECT_EQ(chainmail_from_topology(FiniteTopology{2, {{}, {0, 1}}}).size(), 3u);
}

TEST(Topology, RejectsNonTopologies) {
  try {
    chainmail_from_topology(FiniteTopology{2, {{}, {0}, {1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::axiom_violation);
  }
}

TEST(ConnectivitySpace, Examples) {
  EXPECT_EQ(chainmail_from_connectivity_space(ConnectivitySpace{2, {{}, {0}, {1}, {0, 1}}}).size(), 3u);
  try {
    chainmail_from_connectivity_space(ConnectivitySpace{3, {{}, {0}, {2}, {0, 1}, {1, 2}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::axiom_violation);
    EXPECT_NE(std::string(e.what()).find("(c1)"), std::string::npos);
    EXPECT_EQ(e.witness(), (std::vector<Element>{3, 4}));  // {0,1} and {1,2}
  }
  EXPECT_EQ(chainmail_from_connectivity_space(ConnectivitySpace{3, {{}}}).size(), 0u);
  try {
    chainmail_from_connectivity_space(ConnectivitySpace{1, {{0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(c0)"), std::string::npos);
  }
}

TEST(ConnectivitySpace, PairwiseClosureMatchesSubfamilyCheck) {
  // Every family of subsets of a 3-point set that contains the empty set.
  for (std::uint32_t fam = 0; fam < (1U << 7); ++fam) {
    std::vector<oracle::Mask> family{0};
    ConnectivitySpace s{3, {{}}};
    for (std::uint32_t m = 1; m < 8; ++m)
      if (fam >> (m - 1) & 1U) {
        family.push_back(m);
        s.connected.push_back(point_members(m));
      }
    bool ours = true;
    try {
      validate_connectivity_space(s);
    } catch (const Error&) {
      ours = false;
    }
    EXPECT_EQ(ours, oracle::closed_under_overlapping_unions(family));
  }
}

TEST(Lattices, Powerset) {
  EXPECT_EQ(powerset_lattice(0).size(), 1u);
  EXPECT_EQ(powerset_lattice(2).size(), 4u);
  CompleteLattice b3 = powerset_lattice(3);
  EXPECT_EQ(b3.size(), 8u);
  EXPECT_TRUE(is_locally_connected(b3));
  EXPECT_EQ(connected_elements(b3).count(), 3u);
  for (std::size_t n = 0; n <= 4; ++n) {
    CompleteLattice b = powerset_lattice(n);
    EXPECT_TRUE(is_locally_connected(b));
    EXPECT_EQ(connected_elements(b).count(), n);
  }
}

TEST(Lattices, DownSets) {
  EXPECT_TRUE(is_isomorphic(downset_lattice(Poset::antichain(2)).poset(), powerset_lattice(2).poset()));
  EXPECT_TRUE(is_isomorphic(downset_lattice(Poset::chain(2)).poset(), Poset::chain(3)));
  Poset v = validate_poset(3, {{0, 1}, {0, 2}}, RelationMode::covers);
  EXPECT_EQ(downset_lattice(v).size(), 5u);
}

TEST(ExaA, ListedJoinsAndMails) {
  Chainmail g = example_exa_a();
  const Poset& p = g.poset();
  auto s = [&](const char* a, const char* b) {
    ElementSet r(7);
    r.insert(*p.find_label(a));
    r.insert(*p.find_label(b));
    return r;
  };
  EXPECT_EQ(p.label(*p.join_of(s("2", "3"))), "5");
  EXPECT_EQ(p.label(*p.join_of(s("2", "6"))), "7");
  EXPECT_EQ(p.label(*p.join_of(s("5", "6"))), "7");
  EXPECT_FALSE(is_mail(g, s("3", "4")));
}

TEST(Representation, Examples) {
  Chainmail path = chainmail_from_graph(Graph{3, {{0, 1}, {1, 2}}});
  auto found = search_connectivity_representation(path, 3);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(is_isomorphic(chainmail_from_connectivity_space(*found).poset(), path.poset()));

  EXPECT_FALSE(search_connectivity_representation(example_exa_a(), 6).has_value());

  auto anti = search_connectivity_representation(as_chainmail(Poset::antichain(2)), 2);
  ASSERT_TRUE(anti.has_value());
  EXPECT_EQ(anti->points, 2u);
}

TEST(Representation, FoundSpacesAreValidForAllGraphChainmails) {
  for (const auto& g : all_graphs(3)) {
    Chainmail c = chainmail_from_graph(g);
    auto found = search_connectivity_representation(c, g.vertices);
    ASSERT_TRUE(found.has_value());
    EXPECT_LE(found->points, g.vertices);
  }
}
