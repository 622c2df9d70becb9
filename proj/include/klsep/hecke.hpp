#pragma once

#include <map>
#include <string>
#include <unordered_map>

#include "klsep/coxeter.hpp"
#include "klsep/laurent.hpp"

namespace klsep {

/// Element of the Hecke algebra in the standard basis {H_w}. Coordinates
/// that become zero are erased.
class HeckeElt {
 public:
  using Coords = std::map<Element, LaurentPoly>;

  HeckeElt() = default;

  /// H_w
  static HeckeElt standard(Element w) {
    HeckeElt h;
    h.add(w, LaurentPoly(1));
    return h;
  }

  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  LaurentPoly coefficient(Element w) const {
    auto it = coords_.find(w);
    return it == coords_.end() ? LaurentPoly() : it->second;
  }

  void add(Element w, const LaurentPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = coords_.try_emplace(w, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) coords_.erase(it);
    }
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    for (const auto& [w, p] : o.coords_) add(w, p);
    return *this;
  }
  HeckeElt& operator-=(const HeckeElt& o) {
    for (const auto& [w, p] : o.coords_) add(w, -p);
    return *this;
  }
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const LaurentPoly& c, const HeckeElt& h) {
    HeckeElt out;
    for (const auto& [w, p] : h.coords_) out.add(w, c * p);
    return out;
  }
  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;

  /// "H_s + v^-1 H_e", highest index first.
  std::string to_string(const GroupTable& g) const {
    if (coords_.empty()) return "0";
    std::string out;
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
      const auto& [w, p] = *it;
      std::string coeff = p.to_string();
      const bool single = p.terms().size() == 1;
      const bool minus = single && coeff[0] == '-';
      if (!out.empty()) {
        out += minus ? " - " : " + ";
        if (minus) coeff.erase(0, 1);
      }
      if (coeff == "1")
        coeff.clear();
      else if (coeff == "-1")
        coeff = "-";
      else if (!single)
        coeff = "(" + coeff + ")";
      out += coeff + (coeff.empty() || coeff == "-" ? "" : " ") + "H_" + g.format(w);
    }
    return out;
  }

 private:
  Coords coords_;
};

/// Multiplies by H_s on the given side using
/// H_s H_w = H_{sw} if sw > w, (v - v^-1) H_w + H_{sw} if sw < w.
inline HeckeElt mult_by_Hs(const GroupTable& g, const HeckeElt& h, int s, Side side) {
  g.check_generator(s);
  static const LaurentPoly quad = LaurentPoly::v(1) - LaurentPoly::v(-1);
  HeckeElt out;
  for (const auto& [w, p] : h.coords()) {
    Element sw = g.mult(s, w, side);
    out.add(sw, p);
    if (g.length(sw) < g.length(w)) out.add(w, quad * p);
  }
  return out;
}

/// Multiplies by h_s = H_s + v^-1 on the given side.
inline HeckeElt mult_by_hs(const GroupTable& g, const HeckeElt& h, int s, Side side) {
  HeckeElt out = mult_by_Hs(g, h, s, side);
  out += LaurentPoly::v(-1) * h;
  return out;
}

/// a * b.
inline HeckeElt multiply(const GroupTable& g, const HeckeElt& a, const HeckeElt& b) {
  HeckeElt out;
  for (const auto& [y, p] : b.coords()) {
    HeckeElt term = a;
    for (int s : g.word(y)) term = mult_by_Hs(g, term, s, Side::Right);
    out += p * term;
  }
  return out;
}

/// The ring involution v -> v^-1, H_w -> H_{w^-1}^{-1}, with
/// H_s^{-1} = H_s - (v - v^-1).
inline HeckeElt bar_involution(const GroupTable& g, const HeckeElt& h) {
  static const LaurentPoly quad = LaurentPoly::v(1) - LaurentPoly::v(-1);
  // bar(H_y) = bar(H_{y'}) * H_s^{-1} for y = y's along the ShortLex word
  std::unordered_map<Element, HeckeElt> cache;
  auto bar_standard = [&](auto&& self, Element y) -> const HeckeElt& {
    if (auto it = cache.find(y); it != cache.end()) return it->second;
    HeckeElt value;
    if (y == g.identity()) {
      value = HeckeElt::standard(y);
    } else {
      int s = g.word(y).back();
      const HeckeElt& prefix = self(self, g.right_mult(y, s));
      value = mult_by_Hs(g, prefix, s, Side::Right);
      value -= quad * prefix;
    }
    return cache.emplace(y, std::move(value)).first->second;
  };
  HeckeElt out;
  for (const auto& [y, p] : h.coords()) out += p.negate_exponents() * bar_standard(bar_standard, y);
  return out;
}

}  // namespace klsep
