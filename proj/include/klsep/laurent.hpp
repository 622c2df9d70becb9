#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

namespace klsep {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse Laurent polynomial in v. No zero coefficient is ever stored.
template <class Coeff>
class BasicLaurentPoly {
 public:
  using Terms = std::map<int, Coeff>;

  BasicLaurentPoly() = default;
  BasicLaurentPoly(Coeff c) { add_term(0, std::move(c)); }  // NOLINT: implicit constant

  static BasicLaurentPoly monomial(Coeff c, int exponent) {
    BasicLaurentPoly p;
    p.add_term(exponent, std::move(c));
    return p;
  }
  /// v^k
  static BasicLaurentPoly v(int k = 1) { return monomial(Coeff(1), k); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }

  void add_term(int exponent, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BasicLaurentPoly& operator+=(const BasicLaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicLaurentPoly& operator-=(const BasicLaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  BasicLaurentPoly& operator*=(const BasicLaurentPoly& o) { return *this = *this * o; }

  friend BasicLaurentPoly operator+(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a += b; }
  friend BasicLaurentPoly operator-(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a -= b; }
  friend BasicLaurentPoly operator-(const BasicLaurentPoly& a) {
    BasicLaurentPoly out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend BasicLaurentPoly operator*(const BasicLaurentPoly& a, const BasicLaurentPoly& b) {
    BasicLaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend bool operator==(const BasicLaurentPoly&, const BasicLaurentPoly&) = default;

  /// v -> v^{-1}
  BasicLaurentPoly negate_exponents() const {
    BasicLaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  /// Multiplication by v^k.
  BasicLaurentPoly shifted(int k) const {
    BasicLaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Highest power first: "v^2 - 2v^-1 + 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Coeff mag = c < 0 ? Coeff(-c) : c;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (e == 0) {
        out += to_str(mag);
        continue;
      }
      if (mag != 1) out += to_str(mag);
      out += "v";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  static std::string to_str(const Coeff& c) {
    if constexpr (std::is_integral_v<Coeff>)
      return std::to_string(c);
    else
      return c.str();
  }

  Terms terms_;
};

using LaurentPoly = BasicLaurentPoly<BigInt>;

}  // namespace klsep
