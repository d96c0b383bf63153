#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainmail.hpp"
#include "cli.hpp"

using namespace chainmail;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "chainmail");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = chainmail::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "chainmail_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const Json& j) {
  auto path = scratch() / name;
  std::ofstream(path) << j.dump();
  return path.string();
}

std::string exa_file() { return write("exa.json", poset_to_json(example_exa_a().poset())); }

}  // namespace

TEST(Json, PosetRoundTrip) {
  Poset p = example_exa_a().poset();
  Json j = poset_to_json(p);
  Poset q = poset_from_json(j);
  EXPECT_TRUE(is_isomorphic(p, q));
  EXPECT_EQ(poset_to_json(q), j);
}

TEST(Json, RejectsDuplicatesAndUnknownNames) {
  Json dup = {{"elements", {"a", "a"}}, {"covers", Json::array()}};
  EXPECT_THROW(poset_from_json(dup), Error);
  Json unknown = Json::parse(R"({"elements": ["a"], "covers": [["a", "b"]]})");
  try {
    poset_from_json(unknown);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::index_out_of_range);
  }
  try {
    poset_from_json(Json{{"covers", Json::array()}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
  }
}

TEST(Json, MapRoundTrip) {
  CompleteLattice b = powerset_lattice(2);
  MapTable id(b.size());
  std::iota(id.begin(), id.end(), Element{0});
  PosetMap f = validate_connectivity_hom(b, b, id);
  PosetMap g = map_from_json(map_to_json(f));
  EXPECT_EQ(g.role(), MapRole::connectivity_hom);
  EXPECT_EQ(map_to_json(g), map_to_json(f));
}

TEST(Json, ConnectivitySpaceRoundTrip) {
  ConnectivitySpace s{2, {{}, {0}, {1}, {0, 1}}};
  Json j = connectivity_space_to_json(s);
  ConnectivitySpace t = connectivity_space_from_json(j);
  EXPECT_EQ(t.points, s.points);
  EXPECT_EQ(t.connected, s.connected);
}

TEST(Dot, HasseDiagram) {
  std::string dot = to_dot(Poset::chain(2).with_labels({"a", "b"}), "c2");
  EXPECT_NE(dot.find("digraph \"c2\""), std::string::npos);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1"), std::string::npos);
  EXPECT_NE(dot.find("label=\"a\""), std::string::npos);
}

TEST(Cli, CheckExaA) {
  auto r = run_cli({"check", exa_file()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("poset: yes; lattice: no (witness {3,4}); chainmail: yes"), std::string::npos) << r.out;
}

TEST(Cli, CheckReportsAxiomViolations) {
  auto path = write("cycle.json", Json::parse(R"({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})"));
  auto r = run_cli({"check", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("poset: no"), std::string::npos) << r.out;
}

TEST(Cli, DLatticeOfExaA) {
  auto r = run_cli({"dlattice", exa_file()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("lattice with 11 elements"), std::string::npos) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["elements"].size(), 11u);
}

TEST(Cli, DLatticeRejectsNonChainmail) {
  auto path = write("v.json", Json::parse(R"({"elements": ["x", "a", "b"], "covers": [["x", "a"], ["x", "b"]]})"));
  auto r = run_cli({"dlattice", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("witness"), std::string::npos);
}

TEST(Cli, KLatticeOfPowerset) {
  auto path = write("b2.json", poset_to_json(powerset_lattice(2).poset()));
  auto r = run_cli({"klattice", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["elements"].size(), 2u);
}

TEST(Cli, BuildGraph) {
  auto path = write("path.json", Json::parse(R"({"vertices": 3, "edges": [[0, 1], [1, 2]]})"));
  auto r = run_cli({"build", "graph", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["elements"].size(), 6u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 3);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 3);
  EXPECT_EQ(run_cli({"verify", "--suite", "nope"}).code, 3);
  EXPECT_EQ(run_cli({"enumerate", "-n", "0"}).code, 3);
}

TEST(Cli, MissingFileIsAnError) {
  auto r = run_cli({"check", (scratch() / "missing.json").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, VerifyPassesAndMutationFails) {
  auto ok = run_cli({"verify", "--suite", "thmF", "--max-size", "5"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("PASS"), std::string::npos);
  auto bad = run_cli({"verify", "--suite", "thmF", "--max-size", "5", "--mutate"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Enumerate) {
  auto r = run_cli({"enumerate", "-n", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n\t1\t2\t3\t4\t5\ncount\t1\t1\t2\t5\t16\n");
  auto all = run_cli({"enumerate", "-n", "4", "--filter", "all-posets", "--jobs", "2"});
  EXPECT_EQ(all.out, "n\t1\t2\t3\t4\ncount\t1\t2\t5\t16\n");
  EXPECT_EQ(run_cli({"enumerate", "-n", "9"}).code, 1);
}

TEST(Cli, Represent) {
  auto absent = run_cli({"represent", exa_file(), "--max-points", "6"});
  EXPECT_EQ(absent.code, 0);
  EXPECT_NE(absent.out.find("absent"), std::string::npos);
  auto path = write("anti.json", poset_to_json(Poset::antichain(2).with_labels({"a", "b"})));
  auto found = run_cli({"represent", path, "--max-points", "2"});
  EXPECT_EQ(found.code, 0);
  EXPECT_EQ(Json::parse(found.out)["points"], 2);
}

TEST(Cli, Render) {
  auto r = run_cli({"render", exa_file()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("digraph"), std::string::npos);
  auto target = (scratch() / "exa.dot").string();
  EXPECT_EQ(run_cli({"render", exa_file(), "-o", target}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(target));
}
