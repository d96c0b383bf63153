#pragma once

// Dynamic bitset over the element indices of one fixed poset, plus the raw
// word-span helpers the order algorithms use on bit rows.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace chainmail {

using Element = std::size_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t word_count(std::size_t universe) {
  return (universe + kWordBits - 1) / kWordBits;
}

namespace bits {

inline bool test(std::span<const Word> row, std::size_t i) {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set(std::span<Word> row, std::size_t i) {
  row[i / kWordBits] |= Word{1} << (i % kWordBits);
}

inline void reset(std::span<Word> row, std::size_t i) {
  row[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline std::size_t count(std::span<const Word> row) {
  std::size_t c = 0;
  for (Word w : row) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline std::size_t count_and(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline bool subset(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

inline bool equal(std::span<const Word> a, std::span<const Word> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

inline bool none(std::span<const Word> a) {
  return std::all_of(a.begin(), a.end(), [](Word w) { return w == 0; });
}

template <class F>
void for_each(std::span<const Word> row, F&& f) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    Word word = row[w];
    while (word) {
      f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
}

}  // namespace bits

// A subset of {0, ..., universe-1}. Two sets compare equal only when they
// share the universe.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}
  ElementSet(std::size_t universe, std::initializer_list<Element> members) : ElementSet(universe) {
    for (Element e : members) insert(e);
  }

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (Element e = 0; e < universe; ++e) s.insert(e);
    return s;
  }

  static ElementSet from_words(std::size_t universe, std::span<const Word> words) {
    ElementSet s(universe);
    std::copy(words.begin(), words.end(), s.words_.begin());
    return s;
  }

  template <class Range>
  static ElementSet from_range(std::size_t universe, const Range& members) {
    ElementSet s(universe);
    for (auto e : members) s.insert(static_cast<Element>(e));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const { return bits::count(words_); }
  bool empty() const { return bits::none(words_); }

  // Callers guarantee e < universe(); range checks happen at API boundaries.
  bool contains(Element e) const { return e < universe_ && bits::test(words_, e); }
  void insert(Element e) { bits::set(words_, e); }
  void erase(Element e) { bits::reset(words_, e); }

  bool is_subset_of(const ElementSet& other) const { return bits::subset(words_, other.words_); }
  bool intersects(const ElementSet& other) const { return bits::intersects(words_, other.words_); }

  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  ElementSet& operator|=(std::span<const Word> row) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= row[i];
    return *this;
  }
  ElementSet& operator&=(std::span<const Word> row) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= row[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  std::optional<Element> first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
  }

  std::vector<Element> members() const {
    std::vector<Element> out;
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    bits::for_each(words_, std::forward<F>(f));
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool operator==(const ElementSet& o) const = default;

  // Orders by sorted member list (shorter prefix first), so the empty set
  // sorts before everything.
  friend bool member_order(const ElementSet& a, const ElementSet& b) {
    auto ma = a.members();
    auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

struct ElementSetLess {
  bool operator()(const ElementSet& a, const ElementSet& b) const {
    if (a.universe() != b.universe()) return a.universe() < b.universe();
    auto wa = a.words();
    auto wb = b.words();
    return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
  }
};

}  // namespace chainmail
