#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "klsep/coxeter.hpp"

namespace klsep {

/// One-line notation of a type-A element: values w(1)..w(n+1), with s_i the
/// transposition (i, i+1) and products composed as functions.
inline std::vector<int> one_line(const GroupTable& g, Element w) {
  if (g.spec().family != Family::A) throw UnsupportedSpec(g.spec().name() + " is not type A");
  std::vector<int> perm(static_cast<std::size_t>(g.rank() + 1));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i + 1);
  // right multiplication by s_i swaps positions i, i+1
  for (int s : g.word(w)) std::swap(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(s) + 1]);
  return perm;
}

inline std::string one_line_string(const GroupTable& g, Element w) {
  std::string out;
  for (int v : one_line(g, w)) out += std::to_string(v);
  return out;
}

inline bool is_permutation_of(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

/// Inverse of one_line.
inline Element parse_one_line(const GroupTable& g, std::span<const int> perm) {
  if (g.spec().family != Family::A) throw UnsupportedSpec(g.spec().name() + " is not type A");
  if (!is_permutation_of(perm, g.rank() + 1))
    throw std::invalid_argument("not a permutation of 1.." + std::to_string(g.rank() + 1));
  std::vector<int> p(perm.begin(), perm.end());
  Word sorted_by;  // p * s_{i1} * ... * s_{ik} = id
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        sorted_by.push_back(static_cast<int>(i));
        changed = true;
      }
  }
  std::reverse(sorted_by.begin(), sorted_by.end());
  return g.from_word(sorted_by);
}

inline std::vector<int> digits_of(std::string_view text) {
  std::vector<int> out;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("one-line notation must be digits: " + std::string(text));
    out.push_back(c - '0');
  }
  return out;
}

inline Element parse_one_line(const GroupTable& g, std::string_view text) {
  auto digits = digits_of(text);
  return parse_one_line(g, std::span<const int>(digits));
}

/// Whether w contains the pattern y (values at some increasing index set in
/// the same relative order as y).
inline bool contains_pattern(std::span<const int> w, std::span<const int> y) {
  const std::size_t n = w.size(), m = y.size();
  if (m > n) return false;
  if (m == 0) return true;
  std::vector<std::size_t> pick;
  pick.reserve(m);
  std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
    const std::size_t k = pick.size();
    if (k == m) return true;
    for (std::size_t i = from; i + (m - k) <= n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = (w[pick[j]] < w[i]) == (y[j] < y[k]);
      if (!ok) continue;
      pick.push_back(i);
      if (extend(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return extend(0);
}

}  // namespace klsep
