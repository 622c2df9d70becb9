#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "klsep/coxeter.hpp"
#include "klsep/roots.hpp"

namespace klsep {

/// Longest word accepted by fiber_fixed_points (2^l candidate masks).
inline constexpr int kMaxFiberWordLength = 24;

/// A subword selector eps in (Z/2)^l. Positions are 1-based; in the string
/// form position 1 is the leftmost character, which is also the most
/// significant bit of `bits`.
class SubwordMask {
 public:
  SubwordMask() = default;
  SubwordMask(int length, std::uint32_t bits) : length_(length), bits_(bits) {
    if (length < 0 || length > 32) throw std::invalid_argument("mask length out of range");
    if (length < 32 && (bits >> length) != 0) throw std::invalid_argument("mask bits exceed length");
  }

  /// delta_{p1} + delta_{p2} + ...
  static SubwordMask from_positions(int length, std::initializer_list<int> positions) {
    SubwordMask m(length, 0);
    for (int p : positions) m = m + delta(length, p);
    return m;
  }
  static SubwordMask delta(int length, int position) {
    if (position < 1 || position > length) throw std::out_of_range("mask position");
    return SubwordMask(length, std::uint32_t{1} << (length - position));
  }
  static SubwordMask parse(std::string_view text) {
    std::uint32_t bits = 0;
    for (char c : text) {
      if (c != '0' && c != '1') throw std::invalid_argument("mask must be a 0/1 string: " + std::string(text));
      bits = (bits << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return SubwordMask(static_cast<int>(text.size()), bits);
  }

  int length() const { return length_; }
  std::uint32_t bits() const { return bits_; }
  bool operator[](int position) const { return (bits_ >> (length_ - position)) & 1u; }

  std::string to_string() const {
    std::string out;
    for (int k = 1; k <= length_; ++k) out.push_back((*this)[k] ? '1' : '0');
    return out;
  }

  /// Addition in (Z/2)^l.
  friend SubwordMask operator+(const SubwordMask& a, const SubwordMask& b) {
    if (a.length_ != b.length_) throw std::invalid_argument("mask lengths differ");
    return SubwordMask(a.length_, a.bits_ ^ b.bits_);
  }
  friend bool operator==(const SubwordMask&, const SubwordMask&) = default;
  friend auto operator<=>(const SubwordMask&, const SubwordMask&) = default;

 private:
  int length_ = 0;
  std::uint32_t bits_ = 0;
};

namespace detail {

inline void check_mask(const Word& word, const SubwordMask& eps) {
  if (static_cast<int>(word.size()) != eps.length()) throw std::invalid_argument("mask length does not match word");
}

}  // namespace detail

/// w^{eps[k]}: product of the selected letters among the first k.
inline Element prefix_product(const GroupTable& g, const Word& word, const SubwordMask& eps, int k) {
  detail::check_mask(word, eps);
  Element w = g.identity();
  for (int p = 1; p <= k; ++p)
    if (eps[p]) w = g.right_mult(w, word[static_cast<std::size_t>(p - 1)]);
  return w;
}

inline Element subword_product(const GroupTable& g, const Word& word, const SubwordMask& eps) {
  return prefix_product(g, word, eps, eps.length());
}

/// All eps with w^eps = y, in increasing binary order.
inline std::vector<SubwordMask> fiber_fixed_points(const GroupTable& g, const Word& word, Element y) {
  const int l = static_cast<int>(word.size());
  if (l > kMaxFiberWordLength)
    throw std::invalid_argument("word too long for fixed-point enumeration (" + std::to_string(l) + " letters)");
  for (int s : word) g.check_generator(s);
  std::vector<SubwordMask> out;
  const int ly = g.length(y);
  // depth-first, 0 before 1, so masks come out in binary order
  auto visit = [&](auto&& self, int k, Element u, std::uint32_t bits) -> void {
    if (std::abs(g.length(u) - ly) > l - k) return;
    if (k == l) {
      if (u == y) out.emplace_back(l, bits);
      return;
    }
    const int s = word[static_cast<std::size_t>(k)];
    self(self, k + 1, u, bits << 1);
    self(self, k + 1, g.right_mult(u, s), (bits << 1) | 1u);
  };
  visit(visit, 0, g.identity(), 0);
  return out;
}

struct CellDims {
  int total = 0;
  int fiber = 0;
  friend bool operator==(const CellDims&, const CellDims&) = default;
};

/// Bialynicki-Birula cell dimensions at eps from lengths:
/// total counts k with l(w^{eps[k]} s_k) < l(w^{eps[k]}),
/// fiber counts k with l(w^{eps[k-1]} s_k) < l(w^{eps[k-1]}).
inline CellDims bb_cell_dim(const GroupTable& g, const Word& word, const SubwordMask& eps) {
  detail::check_mask(word, eps);
  CellDims d;
  Element before = g.identity();
  for (int k = 1; k <= eps.length(); ++k) {
    const int s = word[static_cast<std::size_t>(k - 1)];
    const Element after = eps[k] ? g.right_mult(before, s) : before;
    if (g.right_descents(after).contains(s)) ++d.total;
    if (g.right_descents(before).contains(s)) ++d.fiber;
    before = after;
  }
  return d;
}

/// The same dimensions from roots: w^{eps[k]}(alpha_k) (resp. w^{eps[k-1]})
/// is a negative root.
inline CellDims bb_cell_dim_roots(const GroupTable& g, const Word& word, const SubwordMask& eps) {
  detail::check_mask(word, eps);
  CellDims d;
  const int n = g.rank();
  Element before = g.identity();
  for (int k = 1; k <= eps.length(); ++k) {
    const int s = word[static_cast<std::size_t>(k - 1)];
    const Element after = eps[k] ? g.right_mult(before, s) : before;
    if (act_on_root(g, after, RootVector::simple(n, s)).is_negative()) ++d.total;
    if (act_on_root(g, before, RootVector::simple(n, s)).is_negative()) ++d.fiber;
    before = after;
  }
  return d;
}

/// Tangent weight w^{eps[i-1]}(alpha_i) of the curve through p(eps) normal
/// to the i-th divisor.
inline RootVector normal_line_weight(const GroupTable& g, const Word& word, const SubwordMask& eps, int i) {
  detail::check_mask(word, eps);
  if (i < 1 || i > eps.length()) throw std::out_of_range("position out of range");
  const int s = word[static_cast<std::size_t>(i - 1)];
  return act_on_root(g, prefix_product(g, word, eps, i - 1), RootVector::simple(g.rank(), s));
}

/// Weight w(mu) of the T-curve through w and w s_mu in the flag variety.
inline RootVector tcurve_weight(const GroupTable& g, const RootSystem& roots, Element w, const RootVector& mu) {
  if (!roots.is_positive_root(mu)) throw std::invalid_argument("not a positive root");
  return act_on_root(g, w, mu);
}

/// Weight at p(from) of the T-curve joining two fixed points of a
/// Bott-Samelson variety that first differ at stage k of the tower: with
/// u = w^{from[k]}, u' = w^{to[k]} and u^-1 u' = s_mu, the weight is u(mu).
inline RootVector fiber_curve_weight(const GroupTable& g, const RootSystem& roots, const Word& word,
                                     const SubwordMask& from, const SubwordMask& to) {
  detail::check_mask(word, from);
  detail::check_mask(word, to);
  for (int k = 1; k <= from.length(); ++k) {
    const Element u = prefix_product(g, word, from, k), u2 = prefix_product(g, word, to, k);
    if (u == u2) continue;
    auto mu = roots.root_of_reflection(g.product(g.inverse(u), u2));
    if (!mu) throw std::invalid_argument("fixed points " + from.to_string() + " and " + to.to_string() +
                                         " are not joined by a T-curve at stage " + std::to_string(k));
    return act_on_root(g, u, *mu);
  }
  throw std::invalid_argument("fixed points coincide");
}

}  // namespace klsep
