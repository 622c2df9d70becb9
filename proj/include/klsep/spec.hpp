#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klsep/error.hpp"

namespace klsep {

enum class Family { A, B, D, F4, G2, I2 };

inline constexpr int kMaxRank = 8;

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    case Family::I2: return "I2";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "D") return Family::D;
  if (s == "F4" || s == "F") return Family::F4;
  if (s == "G2" || s == "G") return Family::G2;
  if (s == "I2" || s == "I") return Family::I2;
  return std::nullopt;
}

/// Square integer matrix indexed by generators. For Cartan matrices the
/// convention is `a[i][j] = <alpha_j, alpha_i^vee>`, so that
/// `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`.
using GenMatrix = std::vector<std::vector<int>>;

/// A finite Coxeter system by family and rank.
///
/// Generator numbering (0-based):
///   A_n: s_1..s_n along the path.
///   B_n: path with the short simple root last (double bond between n-2, n-1).
///   D_n: path 0..n-2, generator n-1 attached to n-3 (the fork is n-2, n-1).
///   F4:  Bourbaki, alpha_1 alpha_2 long, alpha_3 alpha_4 short.
///   G2:  Bourbaki, alpha_1 short.
///   I2(m): two generators with (st)^m = 1.
///
/// Letters: rank <= 4 uses s,t,u,v; higher rank uses the digits 1..n.
/// The identity is written `e`.
struct CoxeterSpec {
  Family family = Family::A;
  int rank = 1;
  int m = 0;  // only for I2

  static CoxeterSpec A(int n) { return {Family::A, n, 0}; }
  static CoxeterSpec B(int n) { return {Family::B, n, 0}; }
  static CoxeterSpec D(int n) { return {Family::D, n, 0}; }
  static CoxeterSpec F4() { return {Family::F4, 4, 0}; }
  static CoxeterSpec G2() { return {Family::G2, 2, 0}; }
  static CoxeterSpec I2(int m) { return {Family::I2, 2, m}; }

  friend bool operator==(const CoxeterSpec&, const CoxeterSpec&) = default;

  void validate() const {
    auto fail = [&](const std::string& why) { throw UnsupportedSpec(name() + " (" + why + ")"); };
    switch (family) {
      case Family::A:
        if (rank < 1) fail("A_n needs n >= 1");
        break;
      case Family::B:
        if (rank < 2) fail("B_n needs n >= 2");
        break;
      case Family::D:
        if (rank < 4) fail("D_n needs n >= 4");
        break;
      case Family::F4:
        if (rank != 4) fail("F4 has rank 4");
        break;
      case Family::G2:
        if (rank != 2) fail("G2 has rank 2");
        break;
      case Family::I2:
        if (rank != 2) fail("I2 has rank 2");
        if (m < 2) fail("I2(m) needs m >= 2");
        break;
    }
    if (rank > kMaxRank) fail("rank above " + std::to_string(kMaxRank));
  }

  std::string name() const {
    if (family == Family::I2) return "I2(" + std::to_string(m) + ")";
    if (family == Family::F4 || family == Family::G2) return std::string(family_name(family));
    return std::string(family_name(family)) + std::to_string(rank);
  }

  /// Letter used for generator i in words.
  char letter(int i) const {
    if (rank <= 4) return "stuv"[i];
    return static_cast<char>('1' + i);
  }

  std::string letters() const {
    std::string out;
    for (int i = 0; i < rank; ++i) out.push_back(letter(i));
    return out;
  }

  std::optional<int> generator_of(char c) const {
    for (int i = 0; i < rank; ++i)
      if (letter(i) == c) return i;
    return std::nullopt;
  }

  /// Whether the group carries an integral root datum.
  bool crystallographic() const {
    if (family != Family::I2) return true;
    return m == 2 || m == 3 || m == 4 || m == 6;
  }

  /// Cartan matrix in the convention documented on GenMatrix, or nullopt
  /// for non-crystallographic dihedral groups.
  std::optional<GenMatrix> cartan() const {
    if (!crystallographic()) return std::nullopt;
    GenMatrix a(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) a[i][i] = 2;
    auto bond = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (family) {
      case Family::A:
        for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
        break;
      case Family::B:
        for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
        // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        a[rank - 1][rank - 2] = -2;
        break;
      case Family::D:
        for (int i = 0; i + 2 < rank; ++i) bond(i, i + 1);
        bond(rank - 3, rank - 1);
        break;
      case Family::F4:
        bond(0, 1);
        bond(1, 2);
        bond(2, 3);
        a[2][1] = -2;
        break;
      case Family::G2:
        bond(0, 1);
        a[0][1] = -3;
        break;
      case Family::I2:
        if (m == 3) bond(0, 1);
        if (m == 4) {
          bond(0, 1);
          a[1][0] = -2;
        }
        if (m == 6) {
          bond(0, 1);
          a[0][1] = -3;
        }
        break;
    }
    return a;
  }

  /// Coxeter matrix: m_ii = 1, m_ij = order of s_i s_j.
  GenMatrix coxeter_matrix() const {
    GenMatrix out(rank, std::vector<int>(rank, 2));
    for (int i = 0; i < rank; ++i) out[i][i] = 1;
    if (family == Family::I2) {
      out[0][1] = out[1][0] = m;
      return out;
    }
    auto a = *cartan();
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        if (i == j) continue;
        switch (a[i][j] * a[j][i]) {
          case 0: out[i][j] = 2; break;
          case 1: out[i][j] = 3; break;
          case 2: out[i][j] = 4; break;
          case 3: out[i][j] = 6; break;
          default: throw InvariantViolation("bad Cartan product");
        }
      }
    return out;
  }

  /// Classical group order.
  std::uint64_t expected_order() const {
    auto fact = [](int n) {
      std::uint64_t r = 1;
      for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
      return r;
    };
    switch (family) {
      case Family::A: return fact(rank + 1);
      case Family::B: return (std::uint64_t{1} << rank) * fact(rank);
      case Family::D: return (std::uint64_t{1} << (rank - 1)) * fact(rank);
      case Family::F4: return 1152;
      case Family::G2: return 12;
      case Family::I2: return 2 * static_cast<std::uint64_t>(m);
    }
    return 0;
  }
};

}  // namespace klsep
