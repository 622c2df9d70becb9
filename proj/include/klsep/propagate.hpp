#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "klsep/coxeter.hpp"
#include "klsep/error.hpp"
#include "klsep/separation.hpp"
#include "klsep/wgraph.hpp"

namespace klsep {

/// Whether ch(E(x)) = h_x is known to hold, known to fail, or neither.
enum class CharStatus { Unknown, CharEq, CharNeq };

inline const char* to_string(CharStatus c) {
  switch (c) {
    case CharStatus::CharEq: return "eq";
    case CharStatus::CharNeq: return "neq";
    default: return "unknown";
  }
}

/// If every premise is CharEq then so is the conclusion.
struct Implication {
  std::vector<Element> premises;
  Element conclusion = 0;
  int generator = 0;
  Side side = Side::Left;
  friend bool operator==(const Implication&, const Implication&) = default;
};

struct PropagationResult {
  std::vector<CharStatus> status;
  /// Elements for which both CharEq and CharNeq were derived.
  std::vector<Element> contradictions;
  std::vector<Implication> implications;
};

namespace detail {

inline ElementSet bound_by_fw(const FWTable& f, Element x, ElementSet s) {
  return f.defined(x) ? set_intersection(s, f.at(x)) : s;
}

}  // namespace detail

/// All single-step implications available from the W-graph.
///
/// Up: for s a descent of x with y = sx, ch(E(y)) = h_y makes h_s h_y the
/// character of a sheaf containing E(x), so if supp(h_s h_y) meets f_W(x)
/// only in x then ch(E(x)) = h_x.
///
/// Down: for sy > y, if ch(E(y)) = h_y and ch(E(sy)) = h_{sy} then the rest
/// of h_s h_y is the character of a sum of parity sheaves; each Bruhat-maximal
/// z of that rest occurs, and if the rest meets f_W(z) only in z then
/// ch(E(z)) = h_z.
inline std::vector<Implication> implications(const GroupTable& g, const WGraph& graph, const FWTable& f) {
  std::vector<Implication> out;
  for (Element y = 0; y < g.order(); ++y) {
    for (Side side : {Side::Left, Side::Right}) {
      for (int s = 0; s < g.rank(); ++s) {
        if (g.descents(y, side).contains(s)) continue;
        const Element x = g.mult(s, y, side);
        const ElementSet supp = product_support(g, graph, y, s, side);
        if (detail::bound_by_fw(f, x, supp) == ElementSet{x}) out.push_back({{y}, x, s, side});

        ElementSet rest;
        for (Element z : supp)
          if (z != x) rest.push_back(z);
        for (Element z : rest) {
          const bool maximal = std::none_of(rest.begin(), rest.end(),
                                            [&](Element o) { return o != z && g.bruhat_leq(z, o); });
          if (maximal && detail::bound_by_fw(f, z, rest) == ElementSet{z}) out.push_back({{y, x}, z, s, side});
        }
      }
    }
  }
  return out;
}

/// Closure of `assumptions` (plus CharEq on every separated element) under
/// the implications: forward when all premises are CharEq, and backward when
/// the conclusion is CharNeq and all premises but one are CharEq.
/// Contradictions are collected in the result, never resolved.
inline PropagationResult propagate(const GroupTable& g, const WGraph& graph, const FWTable& f,
                                   const std::map<Element, CharStatus>& assumptions) {
  PropagationResult r;
  r.status.assign(g.order(), CharStatus::Unknown);
  r.implications = implications(g, graph, f);
  std::vector<bool> contradicted(g.order(), false);

  auto mark = [&](Element x, CharStatus c) {
    if (r.status[x] == c || contradicted[x]) return false;
    if (r.status[x] != CharStatus::Unknown) {
      contradicted[x] = true;
      r.contradictions.push_back(x);
      return false;
    }
    r.status[x] = c;
    return true;
  };

  for (Element x = 0; x < g.order(); ++x)
    if (f.separated(x)) r.status[x] = CharStatus::CharEq;
  for (const auto& [x, c] : assumptions) {
    if (x >= g.order()) throw std::out_of_range("assumption refers to an unknown element");
    if (c != CharStatus::Unknown) mark(x, c);
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& imp : r.implications) {
      std::size_t eq = 0;
      Element open = 0;
      std::size_t n_open = 0;
      for (Element p : imp.premises) {
        if (r.status[p] == CharStatus::CharEq)
          ++eq;
        else if (r.status[p] == CharStatus::Unknown) {
          open = p;
          ++n_open;
        }
      }
      if (eq == imp.premises.size())
        changed |= mark(imp.conclusion, CharStatus::CharEq);
      else if (r.status[imp.conclusion] == CharStatus::CharNeq && n_open == 1 && eq + 1 == imp.premises.size())
        changed |= mark(open, CharStatus::CharNeq);
    }
  }
  std::sort(r.contradictions.begin(), r.contradictions.end());
  return r;
}

}  // namespace klsep
