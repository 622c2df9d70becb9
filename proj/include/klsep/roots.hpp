#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "klsep/coxeter.hpp"

namespace klsep {

/// Integer vector in the simple-root basis.
class RootVector {
 public:
  RootVector() = default;
  explicit RootVector(int rank) : coords_(static_cast<std::size_t>(rank), 0) {}
  explicit RootVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  static RootVector simple(int rank, int i) {
    RootVector r(rank);
    r.coords_[static_cast<std::size_t>(i)] = 1;
    return r;
  }

  int rank() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
  }
  bool is_positive() const {
    return !is_zero() && std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c >= 0; });
  }
  bool is_negative() const {
    return !is_zero() && std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c <= 0; });
  }

  RootVector& operator+=(const RootVector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  RootVector& operator-=(const RootVector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend RootVector operator+(RootVector a, const RootVector& b) { return a += b; }
  friend RootVector operator-(RootVector a, const RootVector& b) { return a -= b; }
  friend RootVector operator-(RootVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend RootVector operator*(std::int64_t k, RootVector a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }
  friend bool operator==(const RootVector&, const RootVector&) = default;
  friend auto operator<=>(const RootVector&, const RootVector&) = default;

  /// "a1+a2-2a3" style, using the given simple-root names; "0" when zero.
  std::string to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      auto c = coords_[i];
      if (c == 0) continue;
      if (c < 0)
        out += "-";
      else if (!out.empty())
        out += "+";
      auto mag = c < 0 ? -c : c;
      if (mag != 1) out += std::to_string(mag);
      out += names[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<std::int64_t> coords_;
};

/// Names "a<letter>" for the simple roots of a spec ("as", "at", ... or "a1", "a2", ...).
inline std::vector<std::string> simple_root_names(const CoxeterSpec& spec) {
  std::vector<std::string> out;
  for (int i = 0; i < spec.rank; ++i) out.push_back(std::string("a") + spec.letter(i));
  return out;
}

inline GenMatrix require_cartan(const CoxeterSpec& spec) {
  auto c = spec.cartan();
  if (!c) throw NoRootDatum(spec.name());
  return *c;
}

/// s_i(r) = r - <r, alpha_i^vee> alpha_i.
inline RootVector reflect(const GenMatrix& cartan, int i, RootVector r) {
  std::int64_t pairing = 0;
  for (int j = 0; j < r.rank(); ++j) pairing += cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * r[j];
  r[i] -= pairing;
  return r;
}

/// w(r), applying the letters of a reduced word of w right to left.
inline RootVector act_on_root(const GroupTable& g, Element w, RootVector r) {
  auto cartan = require_cartan(g.spec());
  const auto& word = g.word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect(cartan, *it, std::move(r));
  return r;
}

/// Positive roots with, for each, the reflection s_mu as a group element.
class RootSystem {
 public:
  explicit RootSystem(const GroupTable& g) : g_(&g), cartan_(require_cartan(g.spec())) {
    const int n = g.rank();
    for (Element w = 0; w < g.order(); ++w)
      for (int i = 0; i < n; ++i) {
        auto r = act_on_root(g, w, RootVector::simple(n, i));
        if (r.is_positive()) positive_.insert(r);
      }
    for (const auto& mu : positive_) reflections_.emplace(mu, reflection_of(mu));
  }

  const std::set<RootVector>& positive_roots() const { return positive_; }
  bool is_root(const RootVector& r) const {
    return positive_.count(r) > 0 || positive_.count(-r) > 0;
  }
  bool is_positive_root(const RootVector& r) const { return positive_.count(r) > 0; }

  /// s_mu for a positive root mu.
  Element reflection(const RootVector& mu) const {
    auto it = reflections_.find(mu);
    if (it == reflections_.end()) throw std::invalid_argument("not a positive root");
    return it->second;
  }

  /// The positive root mu with r = s_mu, if r is a reflection.
  std::optional<RootVector> root_of_reflection(Element r) const {
    for (const auto& [mu, s] : reflections_)
      if (s == r) return mu;
    return std::nullopt;
  }

 private:
  // mu = s_{i1}...s_{ik}(alpha_j) by descending height, so s_mu = x s_j x^{-1}.
  Element reflection_of(RootVector mu) const {
    const int n = g_->rank();
    Word prefix;
    while (true) {
      int simple = -1;
      for (int i = 0; i < n; ++i)
        if (mu == RootVector::simple(n, i)) simple = i;
      if (simple >= 0) {
        Element x = g_->from_word(prefix);
        return g_->product(g_->right_mult(x, simple), g_->inverse(x));
      }
      int step = -1;
      for (int i = 0; i < n && step < 0; ++i) {
        std::int64_t pairing = 0;
        for (int j = 0; j < n; ++j) pairing += cartan_[i][j] * mu[j];
        if (pairing > 0) step = i;
      }
      if (step < 0) throw InvariantViolation("positive root with no descending reflection");
      mu = reflect(cartan_, step, mu);
      prefix.push_back(step);
    }
  }

  const GroupTable* g_;
  GenMatrix cartan_;
  std::set<RootVector> positive_;
  std::map<RootVector, Element> reflections_;
};

}  // namespace klsep
