#pragma once

// Canonical labeling of finite posets by colour refinement on (down, up)
// neighbour counts followed by an individualization search. Branches are
// pruned with the automorphisms discovered at equal leaves.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "chainmail/poset.hpp"

namespace chainmail {

struct CanonicalForm {
  // Size (4 bytes little-endian) followed by the packed order matrix of the
  // canonically relabeled poset, row-major.
  std::vector<std::uint8_t> code;
  // relabeling[old] = canonical index.
  std::vector<Element> relabeling;
};

namespace detail {

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Poset& p) : p_(p), n_(p.size()), words_(word_count(p.size())) {}

  CanonicalForm run() {
    CanonicalForm out;
    if (n_ == 0) {
      out.code = encode({});
      return out;
    }
    std::vector<Element> prefix;
    search(refine(std::vector<std::uint32_t>(n_, 0)), prefix);
    out.relabeling.assign(best_perm_.begin(), best_perm_.end());
    out.code = encode(best_rows_);
    return out;
  }

 private:
  using Colouring = std::vector<std::uint32_t>;

  static std::size_t colour_count(const Colouring& c) {
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  }

  // Splits colour classes by neighbour counts until stable. New colours are
  // ranks of signatures that start with the old colour, so the result is
  // invariant under relabeling and refines the input order.
  Colouring refine(Colouring colour) const {
    std::size_t k = colour_count(colour);
    std::vector<Word> masks;
    std::vector<std::uint32_t> sig;
    std::vector<Element> order(n_);
    while (true) {
      masks.assign(k * words_, 0);
      for (Element v = 0; v < n_; ++v) bits::set(std::span<Word>(masks.data() + colour[v] * words_, words_), v);
      const std::size_t width = 1 + 2 * k;
      sig.assign(n_ * width, 0);
      for (Element v = 0; v < n_; ++v) {
        std::uint32_t* s = sig.data() + v * width;
        s[0] = colour[v];
        for (std::size_t c = 0; c < k; ++c) {
          std::span<const Word> m(masks.data() + c * words_, words_);
          s[1 + 2 * c] = static_cast<std::uint32_t>(bits::count_and(p_.down_row(v), m));
          s[2 + 2 * c] = static_cast<std::uint32_t>(bits::count_and(p_.up_row(v), m));
        }
      }
      std::iota(order.begin(), order.end(), Element{0});
      auto sig_less = [&](Element a, Element b) {
        return std::lexicographical_compare(sig.begin() + a * width, sig.begin() + (a + 1) * width,
                                            sig.begin() + b * width, sig.begin() + (b + 1) * width);
      };
      std::sort(order.begin(), order.end(), sig_less);
      Colouring next(n_);
      std::uint32_t rank = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && sig_less(order[i - 1], order[i])) ++rank;
        next[order[i]] = rank;
      }
      std::size_t k2 = rank + 1;
      colour = std::move(next);
      if (k2 == k) return colour;
      k = k2;
    }
  }

  Colouring individualize(const Colouring& colour, Element v) const {
    Colouring next(n_);
    for (Element u = 0; u < n_; ++u) next[u] = 2 * colour[u] + (colour[u] == colour[v] && u != v ? 1 : 0);
    // Re-rank to dense colours while keeping the order.
    std::vector<std::uint32_t> used(next);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& c : next) c = static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), c) - used.begin());
    return refine(std::move(next));
  }

  void search(const Colouring& colour, std::vector<Element>& prefix) {
    const std::size_t k = colour_count(colour);
    if (k == n_) {
      leaf(colour);
      return;
    }
    std::vector<std::size_t> sizes(k, 0);
    for (auto c : colour) ++sizes[c];
    std::uint32_t target = 0;
    while (sizes[target] == 1) ++target;

    std::vector<Element> explored;
    for (Element v = 0; v < n_; ++v) {
      if (colour[v] != target) continue;
      if (pruned(v, explored, prefix)) continue;
      explored.push_back(v);
      prefix.push_back(v);
      search(individualize(colour, v), prefix);
      prefix.pop_back();
    }
  }

  // v is skipped when an automorphism fixing the prefix pointwise maps it
  // onto an already explored branch.
  bool pruned(Element v, const std::vector<Element>& explored, const std::vector<Element>& prefix) const {
    if (explored.empty() || automorphisms_.empty()) return false;
    std::vector<Element> parent(n_);
    std::iota(parent.begin(), parent.end(), Element{0});
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Element x) { return gamma[x] == x; });
      if (!fixes) continue;
      for (Element x = 0; x < n_; ++x) {
        Element a = find(x), b = find(gamma[x]);
        if (a != b) parent[a] = b;
      }
    }
    Element rv = find(v);
    return std::any_of(explored.begin(), explored.end(), [&](Element w) { return find(w) == rv; });
  }

  void leaf(const Colouring& colour) {
    // Row i of the relabeled matrix is the up-set of the element labeled i.
    std::vector<Element> inv(n_);
    for (Element v = 0; v < n_; ++v) inv[colour[v]] = v;
    std::vector<Word> rows(n_ * words_, 0);
    for (Element i = 0; i < n_; ++i)
      bits::for_each(p_.up_row(inv[i]),
                     [&](Element u) { bits::set(std::span<Word>(rows.data() + i * words_, words_), colour[u]); });

    if (best_perm_.empty() || rows < best_rows_) {
      best_rows_ = std::move(rows);
      best_perm_.assign(colour.begin(), colour.end());
      return;
    }
    if (rows == best_rows_ && automorphisms_.size() < kMaxStoredAutomorphisms) {
      std::vector<Element> best_inv(n_);
      for (Element v = 0; v < n_; ++v) best_inv[best_perm_[v]] = v;
      std::vector<Element> gamma(n_);
      for (Element v = 0; v < n_; ++v) gamma[v] = best_inv[colour[v]];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  std::vector<std::uint8_t> encode(const std::vector<Word>& rows) const {
    std::vector<std::uint8_t> code;
    const auto n32 = static_cast<std::uint32_t>(n_);
    for (int b = 0; b < 4; ++b) code.push_back(static_cast<std::uint8_t>((n32 >> (8 * b)) & 0xFF));
    std::uint8_t acc = 0;
    int filled = 0;
    for (Element i = 0; i < n_; ++i)
      for (Element j = 0; j < n_; ++j) {
        bool bit = bits::test(std::span<const Word>(rows.data() + i * words_, words_), j);
        acc = static_cast<std::uint8_t>(acc | (bit ? 1U << filled : 0U));
        if (++filled == 8) {
          code.push_back(acc);
          acc = 0;
          filled = 0;
        }
      }
    if (filled) code.push_back(acc);
    return code;
  }

  static constexpr std::size_t kMaxStoredAutomorphisms = 512;

  const Poset& p_;
  std::size_t n_;
  std::size_t words_;
  std::vector<Word> best_rows_;
  std::vector<std::uint32_t> best_perm_;
  std::vector<std::vector<Element>> automorphisms_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Poset& p) { return detail::CanonicalSearch(p).run(); }

inline std::string code_string(const CanonicalForm& f) { return {f.code.begin(), f.code.end()}; }

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

inline Poset canonical_poset(const Poset& p) {
  auto form = canonical_form(p);
  return p.relabeled(form.relabeling);
}

inline bool is_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return false;
  return canonical_form(p).code == canonical_form(q).code;
}

}  // namespace chainmail
