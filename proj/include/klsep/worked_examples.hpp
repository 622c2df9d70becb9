#pragma once

// Fixed inputs of the fiber and torsion computations: the SL(3) pentagon,
// the A7 hexagon permutation 14327658 and the D4 element suv.

#include <array>
#include <string>
#include <vector>

#include "klsep/bott_samelson.hpp"
#include "klsep/coxeter.hpp"
#include "klsep/permutation.hpp"
#include "klsep/roots.hpp"
#include "klsep/torsion.hpp"

namespace klsep::examples {

// ---- SL(3): word s1 s2 s1 s2 s1 over w0 -----------------------------------

inline Word sl3_word() { return {0, 1, 0, 1, 0}; }

/// The five fixed points over w0, in cyclic order around the pentagon.
inline std::vector<SubwordMask> sl3_pentagon() {
  return {SubwordMask::parse("11100"), SubwordMask::parse("01110"), SubwordMask::parse("00111"),
          SubwordMask::parse("10011"), SubwordMask::parse("11001")};
}

// ---- A7: word (3,2,1,5,4,3,2,6,5,4,3,7,6,5) over y = 14327658 -------------

inline constexpr int kA7WordLength = 14;

inline Word a7_word() { return {2, 1, 0, 4, 3, 2, 1, 5, 4, 3, 2, 6, 5, 4}; }
inline const char* a7_target() { return "14327658"; }

inline SubwordMask a7_delta(std::initializer_list<int> positions) {
  return SubwordMask::from_positions(kA7WordLength, positions);
}

/// lambda_1..lambda_5 (index 0..4).
inline std::array<SubwordMask, 5> a7_lambda() {
  return {a7_delta({1, 2, 6}), a7_delta({2, 6, 7}), a7_delta({6, 7, 11}), a7_delta({7, 11, 1}),
          a7_delta({11, 1, 2})};
}
/// mu_1..mu_5.
inline std::array<SubwordMask, 5> a7_mu() {
  return {a7_delta({4, 8, 9}), a7_delta({8, 9, 13}), a7_delta({9, 13, 14}), a7_delta({13, 14, 4}),
          a7_delta({14, 4, 8})};
}
inline SubwordMask a7_nu() { return a7_delta({5, 10}); }

/// Word positions of the divisors whose normal lines give L_1..L_4.
inline std::array<int, 4> a7_line_positions() { return {3, 5, 10, 12}; }

/// Expected e_T(L_i) restrictions, as sums of simple roots (1-based indices).
/// Rows L_1..L_4; the entry at lambda_j + mu_k is lambda-part[j] + mu-part[k].
inline const std::array<std::array<std::vector<int>, 5>, 4>& a7_lambda_weights() {
  static const std::array<std::array<std::vector<int>, 5>, 4> table{{
      {{{1, 2, 3}, {1, 2}, {1}, {1}, {1, 2, 3}}},
      {{{3, 4}, {4}, {4}, {3, 4}, {3, 4}}},
      {{{2, 3, 4}, {2, 3, 4}, {3, 4}, {3, 4}, {3, 4}}},
      {{{}, {}, {}, {}, {}}},
  }};
  return table;
}
inline const std::array<std::array<std::vector<int>, 5>, 4>& a7_mu_weights() {
  static const std::array<std::array<std::vector<int>, 5>, 4> table{{
      {{{}, {}, {}, {}, {}}},
      {{{5}, {}, {}, {5}, {5}}},
      {{{5, 6}, {5, 6}, {5}, {5}, {5}}},
      {{{5, 6, 7}, {6, 7}, {7}, {7}, {5, 6, 7}}},
  }};
  return table;
}

inline RootVector sum_of_simple_roots(int rank, const std::vector<int>& one_based) {
  RootVector r(rank);
  for (int i : one_based) r += RootVector::simple(rank, i - 1);
  return r;
}

// ---- D4: word (s,u,v,t,s,u,v) over y = suv --------------------------------

inline Word d4_word() { return {0, 2, 3, 1, 0, 2, 3}; }
inline const char* d4_target() { return "suv"; }
inline constexpr int kD4LinePosition = 4;

/// Fixed point with eps(1..3) = bits of e (bit 0 = eps(1)), eps(4) = 0 and
/// eps(i+4) = 1 - eps(i).
inline SubwordMask d4_mask(std::uint32_t e) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 3; ++i) {
    const bool on = (e >> i) & 1u;
    bits |= (on ? std::uint32_t{1} << (7 - (i + 1)) : std::uint32_t{1} << (7 - (i + 5)));
  }
  return SubwordMask(7, bits);
}

/// alpha_t + eps(1) alpha_s + eps(2) alpha_u + eps(3) alpha_v.
inline RootVector d4_restriction_formula(std::uint32_t e) {
  RootVector r = RootVector::simple(4, 1);
  const int gens[] = {0, 2, 3};
  for (int i = 0; i < 3; ++i)
    if ((e >> i) & 1u) r += RootVector::simple(4, gens[i]);
  return r;
}

struct D4EulerComputation {
  std::vector<SubwordMask> masks;          // indexed by e
  std::vector<RootVector> restrictions;    // normal-line weights at position 4
  MonomialClass euler_class;
};

/// Restrictions of e_T(L) at the 8 fixed points (computed as normal-line
/// weights, checked against the closed formula) and the resulting class.
inline D4EulerComputation euler_class_d4(const GroupTable& g) {
  if (!(g.spec() == CoxeterSpec::D(4))) throw std::invalid_argument("euler_class_d4 needs the D4 group");
  D4EulerComputation out{{}, {}, MonomialClass(3)};
  const Word word = d4_word();
  const Element y = g.parse_word_or_throw(d4_target());
  for (std::uint32_t e = 0; e < 8; ++e) {
    const SubwordMask m = d4_mask(e);
    if (subword_product(g, word, m) != y) throw InvariantViolation("D4 mask " + m.to_string() + " is not over suv");
    RootVector r = normal_line_weight(g, word, m, kD4LinePosition);
    if (r != d4_restriction_formula(e))
      throw InvariantViolation("D4 restriction at " + m.to_string() + " disagrees with the closed formula");
    out.masks.push_back(m);
    out.restrictions.push_back(std::move(r));
  }
  const std::vector<RootVector> weights{RootVector::simple(4, 0), RootVector::simple(4, 2), RootVector::simple(4, 3)};
  out.euler_class = euler_class_from_restrictions(3, out.restrictions, weights);
  return out;
}

}  // namespace klsep::examples
