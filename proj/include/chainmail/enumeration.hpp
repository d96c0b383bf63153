#pragma once

// Isomorph-free generation of posets by canonical augmentation: a poset of
// size k+1 is built from a size-k parent by adding a new maximal element over
// a down-set, and is kept only when the parent is isomorphic to the result
// of deleting its canonical maximal element. Children of one parent are
// deduplicated locally, so memory stays proportional to the search depth.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "chainmail/canonical.hpp"
#include "chainmail/chainmail.hpp"
#include "chainmail/config.hpp"
#include "chainmail/io.hpp"
#include "chainmail/poset.hpp"

namespace chainmail {

enum class EnumerationFilter { all_posets, chainmails, mail_connected_chainmails };
enum class EmitMode { count_only, catalog };

constexpr std::string_view to_string(EnumerationFilter f) {
  switch (f) {
    case EnumerationFilter::all_posets: return "all-posets";
    case EnumerationFilter::chainmails: return "chainmails";
    case EnumerationFilter::mail_connected_chainmails: return "mail-connected-chainmails";
  }
  return "?";
}

inline std::optional<EnumerationFilter> parse_filter(std::string_view s) {
  for (auto f : {EnumerationFilter::all_posets, EnumerationFilter::chainmails,
                 EnumerationFilter::mail_connected_chainmails})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

struct EnumerationTask {
  std::size_t n = 1;
  EnumerationFilter filter = EnumerationFilter::mail_connected_chainmails;
  std::size_t workers = 1;
  EmitMode emit = EmitMode::count_only;
  // When set, every parent is relabeled by a seeded random permutation
  // before its children are generated. Output must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
  // Subtrees rooted at this size are the unit of work; 0 picks a default.
  std::size_t split_size = 0;
};

struct CatalogEntry {
  std::vector<std::uint8_t> code;
  Poset poset;  // canonically labeled
  bool chainmail = false;
  bool mail_connected = false;
  std::size_t d_size = 0;
};

struct EnumerationResult {
  std::vector<std::uint64_t> counts;  // counts[k] for k = 1..n; counts[0] unused
  std::vector<CatalogEntry> entries;  // sorted by size, then code
};

inline bool passes_filter(const Poset& p, EnumerationFilter f) {
  if (f == EnumerationFilter::all_posets) return true;
  if (!is_chainmail(p)) return false;
  return f == EnumerationFilter::chainmails || is_mail_connected(p, p.all());
}

// Visits every down-set of p once.
template <class Visit>
void for_each_down_set(const Poset& p, Visit&& visit) {
  std::vector<Element> order = p.linear_extension();
  std::vector<ElementSet> strictly_below;
  for (Element x = 0; x < p.size(); ++x) {
    ElementSet s = p.down_set(x);
    s.erase(x);
    strictly_below.push_back(std::move(s));
  }
  ElementSet cur(p.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      visit(static_cast<const ElementSet&>(cur));
      return;
    }
    Element x = order[i];
    rec(i + 1);
    if (strictly_below[x].is_subset_of(cur)) {
      cur.insert(x);
      rec(i + 1);
      cur.erase(x);
    }
  };
  rec(0);
}

namespace detail {

struct Node {
  Poset poset;
  std::vector<std::uint8_t> code;
};

// Canonical children of a node, deduplicated by code.
inline std::vector<Node> canonical_children(const Node& parent, std::mt19937_64* rng) {
  Poset base = parent.poset;
  if (rng && base.size() > 1) {
    std::vector<Element> perm(base.size());
    std::iota(perm.begin(), perm.end(), Element{0});
    std::shuffle(perm.begin(), perm.end(), *rng);
    base = base.relabeled(perm);
  }
  const Element added = base.size();
  std::vector<Node> out;
  std::set<std::vector<std::uint8_t>> seen;
  for_each_down_set(base, [&](const ElementSet& below) {
    Poset child = base.with_maximal(below);
    CanonicalForm form = canonical_form(child);
    if (seen.count(form.code)) return;
    // Canonical deletion: the maximal element with the largest canonical
    // index.
    ElementSet top = child.maximal(child.all());
    Element removed = added;
    std::size_t best = 0;
    bool any = false;
    top.for_each([&](Element m) {
      if (!any || form.relabeling[m] > best) {
        best = form.relabeling[m];
        removed = m;
        any = true;
      }
    });
    if (removed != added && canonical_form(child.without(removed)).code != parent.code) return;
    seen.insert(form.code);
    out.push_back({std::move(child), std::move(form.code)});
  });
  return out;
}

class Enumerator {
 public:
  Enumerator(const EnumerationTask& task) : task_(task) {}

  EnumerationResult run() {
    EnumerationResult result;
    result.counts.assign(task_.n + 1, 0);
    Poset one = Poset::antichain(1);
    Node root{one, canonical_form(one).code};

    const std::size_t split = task_.split_size ? std::min(task_.split_size, task_.n)
                                               : std::min<std::size_t>(task_.n, 5);
    std::optional<std::mt19937_64> rng;
    if (task_.shuffle_seed) rng.emplace(*task_.shuffle_seed);

    // Breadth-first up to the split size, then independent subtrees.
    std::vector<Node> frontier{root};
    Local head{std::vector<std::uint64_t>(task_.n + 1, 0), {}};
    for (std::size_t k = 1;; ++k) {
      for (const auto& node : frontier) record(node, head);
      if (k == split) break;
      std::vector<Node> next;
      for (const auto& node : frontier)
        for (auto& c : canonical_children(node, rng ? &*rng : nullptr)) next.push_back(std::move(c));
      frontier = std::move(next);
    }

    const std::size_t workers = std::max<std::size_t>(1, std::min(task_.workers, frontier.size()));
    std::vector<Local> locals(workers, Local{std::vector<std::uint64_t>(task_.n + 1, 0), {}});
    std::vector<std::uint64_t> seeds(workers);
    for (auto& s : seeds) s = rng ? (*rng)() : 0;
    auto work = [&](std::size_t w) {
      std::optional<std::mt19937_64> local_rng;
      if (rng) local_rng.emplace(seeds[w]);
      for (std::size_t i = w; i < frontier.size(); i += workers)
        descend(frontier[i], locals[w], local_rng ? &*local_rng : nullptr);
    };
    if (split < task_.n) {
      if (workers == 1) {
        work(0);
      } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
      }
    }

    locals.push_back(std::move(head));
    for (auto& l : locals) {
      for (std::size_t k = 1; k <= task_.n; ++k) result.counts[k] += l.counts[k];
      for (auto& e : l.entries) result.entries.push_back(std::move(e));
    }
    std::sort(result.entries.begin(), result.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
      return a.poset.size() != b.poset.size() ? a.poset.size() < b.poset.size() : a.code < b.code;
    });
    return result;
  }

 private:
  struct Local {
    std::vector<std::uint64_t> counts;
    std::vector<CatalogEntry> entries;
  };

  void record(const Node& node, Local& local) {
    if (!passes_filter(node.poset, task_.filter)) return;
    ++local.counts[node.poset.size()];
    if (task_.emit != EmitMode::catalog) return;
    CatalogEntry e;
    e.code = node.code;
    e.poset = canonical_poset(node.poset);
    e.chainmail = is_chainmail(e.poset);
    e.mail_connected = e.poset.size() > 0 && is_mail_connected(e.poset, e.poset.all());
    if (e.chainmail) e.d_size = count_totally_disconnected_sets(e.poset);
    local.entries.push_back(std::move(e));
  }

  void descend(const Node& node, Local& local, std::mt19937_64* rng) {
    if (node.poset.size() == task_.n) return;
    for (auto& c : canonical_children(node, rng)) {
      record(c, local);
      descend(c, local, rng);
    }
  }

  EnumerationTask task_;
};

}  // namespace detail

inline EnumerationResult run_enumeration(const EnumerationTask& task, const Budget& budget = {}) {
  if (task.n < 1) throw Error(ErrorKind::empty_input, "enumeration size must be at least 1");
  if (task.workers < 1) throw Error(ErrorKind::empty_input, "worker count must be at least 1");
  require_within(task.n, budget.enumeration_n, "enumeration size");
  return detail::Enumerator(task).run();
}

// One representative per isomorphism class of posets on n elements.
inline std::vector<Poset> enumerate_posets(std::size_t n, const Budget& budget = {}) {
  EnumerationTask task{n, EnumerationFilter::all_posets, 1, EmitMode::catalog, std::nullopt, 0};
  auto result = run_enumeration(task, budget);
  std::vector<Poset> out;
  for (auto& e : result.entries)
    if (e.poset.size() == n) out.push_back(std::move(e.poset));
  return out;
}

// All isomorphism classes of posets of sizes 1..n passing the filter,
// canonically labeled.
inline std::vector<Poset> enumerate_up_to(std::size_t n, EnumerationFilter filter, const Budget& budget = {}) {
  EnumerationTask task{n, filter, 1, EmitMode::catalog, std::nullopt, 0};
  auto result = run_enumeration(task, budget);
  std::vector<Poset> out;
  for (auto& e : result.entries) out.push_back(std::move(e.poset));
  return out;
}

inline std::vector<std::uint64_t> count_chainmails(const EnumerationTask& task, const Budget& budget = {}) {
  EnumerationTask t = task;
  t.emit = EmitMode::count_only;
  auto counts = run_enumeration(t, budget).counts;
  return {counts.begin() + 1, counts.end()};
}

// Two tab-separated rows: sizes, then counts.
inline std::string count_table_tsv(const std::vector<std::uint64_t>& counts) {
  std::ostringstream out;
  out << "n";
  for (std::size_t k = 1; k <= counts.size(); ++k) out << '\t' << k;
  out << "\ncount";
  for (auto c : counts) out << '\t' << c;
  out << '\n';
  return out.str();
}

inline std::string catalog_file_name(const CatalogEntry& e) {
  return "n" + std::to_string(e.poset.size()) + "_" + to_hex(e.code) + ".dot";
}

// One DOT file per structure plus manifest.jsonl.
inline EnumerationResult emit_catalog(const EnumerationTask& task, const std::filesystem::path& dir,
                                      const Budget& budget = {}) {
  EnumerationTask t = task;
  t.emit = EmitMode::catalog;
  EnumerationResult result = run_enumeration(t, budget);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream manifest(dir / "manifest.jsonl");
  if (!manifest) throw Error(ErrorKind::io_error, "cannot write " + (dir / "manifest.jsonl").string());
  for (const auto& e : result.entries) {
    std::string hex = to_hex(e.code);
    std::ofstream dot(dir / catalog_file_name(e));
    if (!dot) throw Error(ErrorKind::io_error, "cannot write " + (dir / catalog_file_name(e)).string());
    dot << to_dot(e.poset, "n" + std::to_string(e.poset.size()) + "_" + hex);
    Json rec = {{"code", hex},
                {"n", e.poset.size()},
                {"chainmail", e.chainmail},
                {"mail_connected", e.mail_connected},
                {"d_size", e.d_size}};
    manifest << rec.dump() << '\n';
  }
  return result;
}

}  // namespace chainmail
