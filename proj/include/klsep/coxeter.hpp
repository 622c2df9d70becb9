#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "klsep/error.hpp"
#include "klsep/spec.hpp"

namespace klsep {

/// Dense index of a group element in its GroupTable. Index 0 is the
/// identity; indices are sorted by (length, ShortLex word).
using Element = std::uint32_t;

/// A sequence of 0-based generator indices.
using Word = std::vector<int>;

enum class Side { Left, Right };

/// Set of generators as a bitmask (bit i = generator i).
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t bits) : bits_(bits) {}

  constexpr bool contains(int s) const { return (bits_ >> s) & 1u; }
  constexpr void insert(int s) { bits_ |= (1u << s); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool subset_of(GeneratorSet other) const { return (bits_ & ~other.bits_) == 0; }
  /// Smallest member; precondition: non-empty.
  constexpr int first() const { return std::countr_zero(bits_); }
  /// Largest member; precondition: non-empty.
  constexpr int last() const { return 31 - std::countl_zero(bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// A fully enumerated finite Coxeter group. Immutable after construction;
/// all queries are const and safe to call concurrently.
class GroupTable {
 public:
  const CoxeterSpec& spec() const { return spec_; }
  int rank() const { return spec_.rank; }
  std::size_t order() const { return lengths_.size(); }

  Element identity() const { return 0; }
  Element longest() const { return static_cast<Element>(order() - 1); }

  int length(Element w) const { return lengths_[w]; }
  const Word& word(Element w) const { return words_[w]; }

  Element left_mult(int s, Element w) const { return left_[w * stride() + s]; }
  Element right_mult(Element w, int s) const { return right_[w * stride() + s]; }
  Element mult(int s, Element w, Side side) const {
    return side == Side::Left ? left_mult(s, w) : right_mult(w, s);
  }

  GeneratorSet left_descents(Element w) const { return left_desc_[w]; }
  GeneratorSet right_descents(Element w) const { return right_desc_[w]; }
  GeneratorSet descents(Element w, Side side) const {
    return side == Side::Left ? left_descents(w) : right_descents(w);
  }

  Element inverse(Element w) const { return inverse_[w]; }

  /// Product of an arbitrary (not necessarily reduced) word.
  Element from_word(std::span<const int> word) const {
    Element x = identity();
    for (int s : word) {
      check_generator(s);
      x = right_mult(x, s);
    }
    return x;
  }

  Element product(Element a, Element b) const {
    Element x = a;
    for (int s : word(b)) x = right_mult(x, s);
    return x;
  }

  /// Parses a letter word ("stsu", or "e" for the identity).
  std::optional<Element> parse_word(std::string_view text) const {
    if (text == "e" || text == "id" || (text == "1" && spec_.rank <= 4)) return identity();
    if (text.empty()) return std::nullopt;
    Element x = identity();
    for (char c : text) {
      auto s = spec_.generator_of(c);
      if (!s) return std::nullopt;
      x = right_mult(x, *s);
    }
    return x;
  }

  Element parse_word_or_throw(std::string_view text) const {
    auto w = parse_word(text);
    if (!w) throw std::invalid_argument("not a word over '" + spec_.letters() + "': " + std::string(text));
    return *w;
  }

  /// Letter form of the ShortLex normal word; `e` for the identity.
  std::string format(Element w) const {
    if (w == identity()) return "e";
    std::string out;
    for (int s : word(w)) out.push_back(spec_.letter(s));
    return out;
  }

  /// Bruhat order by the descent recursion: for s in dL(w),
  /// x <= w iff min(x, sx) <= sw.
  bool bruhat_leq(Element x, Element w) const {
    while (true) {
      if (x == w) return true;
      if (length(x) >= length(w)) return false;
      if (x == identity()) return true;
      int s = left_descents(w).first();
      Element sx = left_mult(s, x);
      if (length(sx) < length(x)) x = sx;
      w = left_mult(s, w);
    }
  }

  void check_generator(int s) const {
    if (s < 0 || s >= rank())
      throw std::invalid_argument("generator index " + std::to_string(s) + " out of range for " + spec_.name());
  }

 private:
  friend GroupTable build_group(const CoxeterSpec& spec);

  std::size_t stride() const { return static_cast<std::size_t>(spec_.rank); }

  CoxeterSpec spec_;
  std::vector<int> lengths_;
  std::vector<Word> words_;
  std::vector<Element> left_;
  std::vector<Element> right_;
  std::vector<GeneratorSet> left_desc_;
  std::vector<GeneratorSet> right_desc_;
  std::vector<Element> inverse_;
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 0x100000001b3ull;
    return h;
  }
};

// Left action of s_i on a faithful orbit point. Crystallographic groups act
// on w(rho) in fundamental-weight coordinates; dihedral groups use the
// closed form (length, first letter) of the alternating words.
inline std::vector<int> act_left(const CoxeterSpec& spec, const std::optional<GenMatrix>& cartan,
                                 const std::vector<int>& state, int i) {
  if (!cartan) {
    int len = state[0], first = state[1], m = spec.m;
    int other = 1 - i;
    if (len == 0) return {1, i};
    if (len == m) return {m - 1, other};
    if (first == i) return len == 1 ? std::vector<int>{0, 0} : std::vector<int>{len - 1, other};
    return len + 1 == m ? std::vector<int>{m, 0} : std::vector<int>{len + 1, i};
  }
  std::vector<int> out = state;
  const auto& a = *cartan;
  int ci = state[i];
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= ci * a[j][i];
  return out;
}

}  // namespace detail

/// Enumerates the group by breadth-first search from the identity.
inline GroupTable build_group(const CoxeterSpec& spec) {
  spec.validate();
  const int rank = spec.rank;
  const auto cartan = (spec.family == Family::I2) ? std::optional<GenMatrix>{} : spec.cartan();

  // raw enumeration, BFS order (lengths non-decreasing)
  std::vector<std::vector<int>> states;
  std::unordered_map<std::vector<int>, Element, detail::VecHash> index;
  std::vector<Element> raw_left;
  std::vector<int> raw_len;

  std::vector<int> start = cartan ? std::vector<int>(rank, 1) : std::vector<int>{0, 0};
  states.push_back(start);
  index.emplace(start, 0);
  raw_len.push_back(0);
  for (std::size_t w = 0; w < states.size(); ++w) {
    for (int i = 0; i < rank; ++i) {
      auto next = detail::act_left(spec, cartan, states[w], i);
      auto [it, inserted] = index.emplace(next, static_cast<Element>(states.size()));
      if (inserted) {
        states.push_back(std::move(next));
        raw_len.push_back(raw_len[w] + 1);
      }
      raw_left.push_back(it->second);
    }
  }
  const std::size_t n = states.size();
  if (n != spec.expected_order())
    throw InvariantViolation(spec.name() + ": enumerated " + std::to_string(n) + " elements, expected " +
                             std::to_string(spec.expected_order()));

  // ShortLex-minimal reduced words: the first letter is the smallest left descent.
  std::vector<Word> raw_words(n);
  for (std::size_t w = 1; w < n; ++w) {
    for (int i = 0; i < rank; ++i) {
      Element sw = raw_left[w * rank + i];
      if (raw_len[sw] < raw_len[w]) {
        raw_words[w].reserve(raw_len[w]);
        raw_words[w].push_back(i);
        raw_words[w].insert(raw_words[w].end(), raw_words[sw].begin(), raw_words[sw].end());
        break;
      }
    }
  }

  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    if (raw_len[a] != raw_len[b]) return raw_len[a] < raw_len[b];
    return raw_words[a] < raw_words[b];
  });
  std::vector<Element> relabel(n);
  for (std::size_t k = 0; k < n; ++k) relabel[order[k]] = static_cast<Element>(k);

  GroupTable g;
  g.spec_ = spec;
  g.lengths_.resize(n);
  g.words_.resize(n);
  g.left_.resize(n * rank);
  g.left_desc_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Element old = order[k];
    g.lengths_[k] = raw_len[old];
    g.words_[k] = std::move(raw_words[old]);
    for (int i = 0; i < rank; ++i) {
      Element target = relabel[raw_left[old * rank + i]];
      g.left_[k * rank + i] = target;
      if (raw_len[raw_left[old * rank + i]] < raw_len[old]) g.left_desc_[k].insert(i);
    }
  }

  g.inverse_.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    Element x = 0;
    for (int s : g.words_[w]) x = g.left_[x * rank + s];
    g.inverse_[w] = x;
  }
  g.right_.resize(n * rank);
  g.right_desc_.resize(n);
  for (std::size_t w = 0; w < n; ++w) {
    Element winv = g.inverse_[w];
    g.right_desc_[w] = g.left_desc_[winv];
    for (int i = 0; i < rank; ++i) g.right_[w * rank + i] = g.inverse_[g.left_[winv * rank + i]];
  }
  return g;
}

/// Left or right descent set, {s | sw < w} or {s | ws < w}.
inline GeneratorSet descents(const GroupTable& g, Element w, Side side) { return g.descents(w, side); }

inline bool bruhat_leq(const GroupTable& g, Element x, Element w) { return g.bruhat_leq(x, w); }

}  // namespace klsep
