#pragma once

// The chainmail command-line tool. Exit codes: 0 success, 1 validation
// failure, 2 theorem violation, 3 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainmail.hpp"

namespace chainmail::cli {

enum Exit { ok = 0, validation_failure = 1, theorem_violation = 2, usage_error = 3 };

namespace detail {

inline std::string witness_set(const Poset& p, const chainmail::Error& e) {
  ElementSet s(p.size());
  for (auto w : e.witness())
    if (w < p.size()) s.insert(w);
  return p.format_set(s);
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw chainmail::Error(ErrorKind::io_error, "cannot write " + path);
  f << text;
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chainmails, connectivity in complete lattices, and their enumeration", "chainmail"};
  app.require_subcommand(1);

  Budget budget;
  if (const char* env = std::getenv("CHAINMAIL_BUDGET")) {
    try {
      budget.poset_size = std::stoul(env);
    } catch (const std::exception&) {
      err << "error: CHAINMAIL_BUDGET must be a number, got \"" << env << "\"\n";
      return usage_error;
    }
  }
  app.add_option("--budget", budget.poset_size, "Largest accepted poset (default 24, or $CHAINMAIL_BUDGET)");
  app.add_option("--d-budget", budget.derived_size, "Largest derived structure such as D(G) (default 65536)");

  std::string input, output;

  auto* check = app.add_subcommand("check", "Classify a poset as lattice and chainmail, with witnesses");
  check->add_option("file", input, "Poset JSON")->required();

  auto* dlat = app.add_subcommand("dlattice", "Lattice of totally disconnected sets of a chainmail");
  dlat->add_option("file", input, "Chainmail JSON")->required();
  dlat->add_option("-o,--output", output, "Write the lattice JSON here instead of stdout");

  auto* klat = app.add_subcommand("klattice", "Chainmail of connected elements of a lattice");
  klat->add_option("file", input, "Lattice JSON")->required();
  klat->add_option("-o,--output", output, "Write the chainmail JSON here instead of stdout");

  std::string source_kind;
  auto* build = app.add_subcommand("build", "Chainmail of connected sets of a concrete source");
  build->add_option("kind", source_kind, "graph | hypergraph | topology | connspace")
      ->required()
      ->check(CLI::IsMember({"graph", "hypergraph", "topology", "connspace"}));
  build->add_option("file", input, "Source JSON")->required();
  build->add_option("-o,--output", output, "Write the chainmail JSON here instead of stdout");
  build->add_option("--max-points", budget.ground_points, "Largest accepted ground set (default 5)");

  std::string suite;
  std::size_t max_size = 0;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "Run an exhaustive property suite");
  std::vector<std::string> suites(suite_names().begin(), suite_names().end());
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suites));
  verify->add_option("--max-size", max_size, "Largest structure in the population (suite default if omitted)");
  verify->add_flag("--mutate", mutate, "Seed the suite's deliberate fault; the run must then fail");

  std::size_t n = 0, jobs = 1;
  std::string filter_name = "mail-connected-chainmails", catalog_dir;
  bool stretch = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count or catalog posets and chainmails up to isomorphism");
  enumerate->add_option("-n", n, "Largest size")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--filter", filter_name, "all-posets | chainmails | mail-connected-chainmails")
      ->check(CLI::IsMember({"all-posets", "chainmails", "mail-connected-chainmails"}));
  enumerate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--catalog", catalog_dir, "Write one DOT file per structure and manifest.jsonl here");
  enumerate->add_flag("--stretch", stretch, "Allow n up to 10 (the default limit is 8)");

  std::size_t max_points = 6;
  auto* represent = app.add_subcommand("represent", "Search for a connectivity space realizing a chainmail");
  represent->add_option("file", input, "Chainmail JSON")->required();
  represent->add_option("--max-points", max_points, "Largest ground set to try")->required();

  auto* render = app.add_subcommand("render", "Hasse diagram of a poset as DOT");
  render->add_option("file", input, "Poset JSON")->required();
  render->add_option("-o,--output", output, "Output DOT file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage_error;
  }

  try {
    if (check->parsed()) {
      Poset p;
      try {
        p = poset_from_json(read_json_file(input), budget);
      } catch (const chainmail::Error& e) {
        if (e.kind() == ErrorKind::io_error || e.kind() == ErrorKind::parse_error) throw;
        out << "poset: no (" << e.what() << ")\n";
        return validation_failure;
      }
      std::string lattice_part = "yes";
      std::optional<CompleteLattice> lattice;
      try {
        lattice = as_complete_lattice(p);
      } catch (const chainmail::Error& e) {
        lattice_part = "no (witness " + detail::witness_set(p, e) + ")";
      }
      std::string chainmail_part = "yes";
      if (auto w = find_mail_pair_without_join(p)) {
        ElementSet s(p.size());
        s.insert(w->first);
        s.insert(w->second);
        chainmail_part = "no (witness " + p.format_set(s) + ")";
      }
      out << "poset: yes; lattice: " << lattice_part << "; chainmail: " << chainmail_part << "\n";
      if (chainmail_part == "yes" && !p.empty()) {
        auto comps = mail_components(p, p.all());
        out << "mail components: " << comps.size() << "\n";
      }
      if (lattice) {
        ElementSet connected = connected_elements(*lattice);
        out << "connected elements: " << p.format_set(connected) << "\n";
        out << "locally connected: " << (is_locally_connected(*lattice, connected) ? "yes" : "no") << "\n";
        out << "connective foundation: " << (has_connective_foundation(*lattice, connected) ? "yes" : "no")
            << "\n";
        out << "nu: " << to_string(nu_classification(*lattice, budget).nu_class) << "\n";
      }
      return ok;
    }

    if (dlat->parsed()) {
      Chainmail g = as_chainmail(poset_from_json(read_json_file(input), budget));
      DLattice d = d_lattice(g, budget);
      err << "lattice with " << d.lattice.size() << " elements\n";
      detail::write_output(detail::json_text(poset_to_json(d.lattice.poset())), output, out);
      return ok;
    }

    if (klat->parsed()) {
      CompleteLattice l = as_complete_lattice(poset_from_json(read_json_file(input), budget));
      KChainmail k = k_chainmail(l);
      err << "chainmail with " << k.chainmail.size() << " elements\n";
      detail::write_output(detail::json_text(poset_to_json(k.chainmail.poset())), output, out);
      return ok;
    }

    if (build->parsed()) {
      Json j = read_json_file(input);
      std::optional<Chainmail> g;
      if (source_kind == "graph") g = chainmail_from_graph(graph_from_json(j), budget);
      if (source_kind == "hypergraph") g = chainmail_from_hypergraph(hypergraph_from_json(j), budget);
      if (source_kind == "topology") g = chainmail_from_topology(topology_from_json(j), budget);
      if (source_kind == "connspace") g = chainmail_from_connectivity_space(connectivity_space_from_json(j), budget);
      err << "chainmail with " << g->size() << " elements\n";
      detail::write_output(detail::json_text(poset_to_json(g->poset())), output, out);
      return ok;
    }

    if (verify->parsed()) {
      SuiteOptions opt;
      opt.mutate = mutate;
      opt.max_size = max_size ? max_size : (suite == "adjunction" ? 5 : 6);
      SuiteReport r = run_suite(suite, opt);
      out << "suite " << r.suite << ": " << r.structures << " structures, " << r.checks << " checks, "
          << r.violation_count << " violations\n";
      for (const auto& v : r.violations) out << "  violation: " << v << "\n";
      out << (r.passed() ? "PASS" : "FAIL") << "\n";
      return r.passed() ? ok : theorem_violation;
    }

    if (enumerate->parsed()) {
      budget.enumeration_n = stretch ? 10 : 8;
      EnumerationTask task;
      task.n = n;
      task.filter = *parse_filter(filter_name);
      task.workers = jobs;
      EnumerationResult r;
      if (catalog_dir.empty()) {
        r = run_enumeration(task, budget);
      } else {
        r = emit_catalog(task, catalog_dir, budget);
        err << "wrote " << r.entries.size() << " diagrams to " << catalog_dir << "\n";
      }
      out << count_table_tsv({r.counts.begin() + 1, r.counts.end()});
      return ok;
    }

    if (represent->parsed()) {
      Chainmail g = as_chainmail(poset_from_json(read_json_file(input), budget));
      auto found = search_connectivity_representation(g, max_points, budget);
      if (!found) {
        out << "absent (no connectivity space on at most " << max_points << " points)\n";
        return ok;
      }
      out << detail::json_text(connectivity_space_to_json(*found));
      return ok;
    }

    if (render->parsed()) {
      Poset p = poset_from_json(read_json_file(input), budget);
      detail::write_output(to_dot(p), output, out);
      return ok;
    }
  } catch (const chainmail::Error& e) {
    err << "error: " << e.what();
    if (!e.witness().empty()) {
      err << " [witness";
      for (auto w : e.witness()) err << " " << w;
      err << "]";
    }
    err << "\n";
    return e.kind() == ErrorKind::theorem_violation ? theorem_violation : validation_failure;
  }
  return usage_error;
}

}  // namespace chainmail::cli
