#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klsep/error.hpp"
#include "klsep/laurent.hpp"
#include "klsep/roots.hpp"

namespace klsep {

/// Element of H*((P^1)^k) = Z[x_1..x_k]/(x_i^2), as a map from monomial
/// (bitmask of generators) to coefficient. A monomial with d generators has
/// cohomological degree 2d.
class MonomialClass {
 public:
  explicit MonomialClass(int k = 0) : k_(k) {
    if (k < 0 || k > 30) throw std::invalid_argument("number of factors out of range");
  }

  static MonomialClass generator(int k, int i) {
    MonomialClass c(k);
    c.add(std::uint32_t{1} << i, 1);
    return c;
  }

  int factors() const { return k_; }
  const std::map<std::uint32_t, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(std::uint32_t monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add(std::uint32_t monomial, const BigInt& c) {
    if (k_ < 32 && (monomial >> k_) != 0) throw std::invalid_argument("monomial uses a generator beyond k");
    if (c == 0) return;
    auto& slot = terms_[monomial];
    slot += c;
    if (slot == 0) terms_.erase(monomial);
  }

  /// Cohomological degree if homogeneous; -1 for the zero class or a mixed one.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      const int md = 2 * std::popcount(m);
      if (d >= 0 && d != md) return -1;
      d = md;
    }
    return d;
  }

  friend MonomialClass operator+(MonomialClass a, const MonomialClass& b) {
    if (a.k_ != b.k_) throw std::invalid_argument("classes on different products");
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend MonomialClass operator*(const BigInt& s, MonomialClass a) {
    MonomialClass out(a.k_);
    for (const auto& [m, c] : a.terms_) out.add(m, s * c);
    return out;
  }
  friend MonomialClass operator*(const MonomialClass& a, const MonomialClass& b) {
    if (a.k_ != b.k_) throw std::invalid_argument("classes on different products");
    MonomialClass out(a.k_);
    for (const auto& [m1, c1] : a.terms_)
      for (const auto& [m2, c2] : b.terms_)
        if ((m1 & m2) == 0) out.add(m1 | m2, c1 * c2);
    return out;
  }
  friend bool operator==(const MonomialClass&, const MonomialClass&) = default;

  /// Sum of monomials in the given generator names; "0" when zero.
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      BigInt mag = c < 0 ? BigInt(-c) : c;
      out += c < 0 ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
      std::string mono;
      for (int i = 0; i < k_; ++i)
        if ((m >> i) & 1u) mono += names.at(static_cast<std::size_t>(i));
      if (mono.empty())
        out += mag.str();
      else
        out += (mag == 1 ? "" : mag.str() + " ") + mono;
    }
    return out;
  }

 private:
  int k_;
  std::map<std::uint32_t, BigInt> terms_;
};

inline std::vector<std::string> default_factor_names(int k) {
  static const char* greek[] = {"alpha", "beta", "gamma"};
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(k <= 3 ? greek[i] : "x" + std::to_string(i + 1));
  return out;
}

/// Monomials with d generators out of k, in lexicographic order of their
/// sorted index lists (x1x2 < x1x3 < x2x3 ...).
inline std::vector<std::uint32_t> monomial_basis(int k, int d) {
  std::vector<std::uint32_t> out;
  if (d < 0 || d > k) return out;
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int i : idx) m |= std::uint32_t{1} << i;
    out.push_back(m);
    int p = d - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == k - d + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < d; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  return out;
}

inline std::string monomial_name(std::uint32_t m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if ((m >> i) & 1u) out += names[i];
  return out.empty() ? "1" : out;
}

/// Dense integer matrix with optional row/column labels.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> data;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, BigInt(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols) throw std::invalid_argument("ragged matrix");
      for (long long v : row) data.emplace_back(v);
    }
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  BigInt& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not match");
    IntMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  /// Entries only; labels are ignored.
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols; ++j) out += (j ? ", " : "") + (*this)(i, j).str();
      out += "]";
    }
    return out + "]";
  }
};

/// Matrix of x -> c * x from degree `source_degree` to source_degree + 2 in
/// H*((P^1)^k). Columns are source monomials, rows target monomials, both in
/// monomial_basis order.
inline IntMatrix mult_matrix(const MonomialClass& c, int source_degree, int k,
                             const std::vector<std::string>& names = {}) {
  if (c.factors() != k) throw std::invalid_argument("class lives on a different number of factors");
  if (c.degree() != 2) throw std::invalid_argument("multiplier must be homogeneous of degree 2");
  if (source_degree < 0 || source_degree % 2 != 0 || source_degree / 2 >= k)
    throw std::invalid_argument("source degree must be even and below 2k");
  const auto src = monomial_basis(k, source_degree / 2);
  const auto dst = monomial_basis(k, source_degree / 2 + 1);
  IntMatrix m(dst.size(), src.size());
  const auto label_names = names.empty() ? default_factor_names(k) : names;
  for (auto d : dst) m.row_labels.push_back(monomial_name(d, label_names));
  for (auto s : src) m.col_labels.push_back(monomial_name(s, label_names));
  for (std::size_t j = 0; j < src.size(); ++j) {
    MonomialClass x(k);
    x.add(src[j], 1);
    const MonomialClass y = c * x;
    for (std::size_t i = 0; i < dst.size(); ++i) m(i, j) = y.coefficient(dst[i]);
  }
  return m;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  /// The first min(rows, cols) diagonal entries of d, nonnegative,
  /// each dividing the next (zeros last).
  std::vector<BigInt> invariants;
};

/// U * m * V = D with U, V unimodular and D diagonal in Smith form. The
/// identity is re-checked before returning.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows, c = m.cols;
  IntMatrix a = m, u = IntMatrix::identity(r), v = IntMatrix::identity(c);
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < r; ++k) std::swap(u(i, k), u(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < c; ++k) std::swap(v(k, i), v(k, j));
  };
  // row_i -= q * row_j, col_i -= q * col_j
  auto sub_row = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < c; ++k) a(i, k) -= q * a(j, k);
    for (std::size_t k = 0; k < r; ++k) u(i, k) -= q * u(j, k);
  };
  auto sub_col = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t k = 0; k < r; ++k) a(k, i) -= q * a(k, j);
    for (std::size_t k = 0; k < c; ++k) v(k, i) -= q * v(k, j);
  };
  auto abs_big = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };

  const std::size_t n = std::min(r, c);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi == r || abs_big(a(i, j)) < abs_big(a(pi, pj)))) pi = i, pj = j;
      if (pi == r) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i)
        if (a(i, t) != 0) {
          sub_row(i, t, a(i, t) / a(t, t));
          if (a(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < c; ++j)
        if (a(t, j) != 0) {
          sub_col(j, t, a(t, j) / a(t, t));
          if (a(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // pivot must divide the rest of the block
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      sub_row(t, bad, BigInt(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t k = 0; k < c; ++k) a(t, k) = -a(t, k);
      for (std::size_t k = 0; k < r; ++k) u(t, k) = -u(t, k);
    }
  }

  SmithForm out{a, u, v, {}};
  for (std::size_t t = 0; t < n; ++t) out.invariants.push_back(a(t, t));
  if (!(u * m * v == a)) throw InvariantViolation("Smith normal form certificate U*m*V = D failed");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (i != j && a(i, j) != 0) throw InvariantViolation("Smith normal form is not diagonal");
  for (std::size_t t = 0; t + 1 < n; ++t)
    if (out.invariants[t] == 0 ? out.invariants[t + 1] != 0 : out.invariants[t + 1] % out.invariants[t] != 0)
      throw InvariantViolation("Smith invariants do not form a divisibility chain");
  return out;
}

/// Primes dividing some nonzero invariant factor, ascending.
inline std::vector<BigInt> torsion_primes(const std::vector<BigInt>& invariants) {
  std::vector<BigInt> primes;
  for (BigInt d : invariants) {
    if (d < 0) d = -d;
    for (BigInt p = 2; d > 1 && p * p <= d; ++p)
      if (d % p == 0) {
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
        while (d % p == 0) d /= p;
      }
    if (d > 1 && std::find(primes.begin(), primes.end(), d) == primes.end()) primes.push_back(d);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

/// "2-torsion", "2-torsion, 3-torsion", or "no torsion".
inline std::string torsion_verdict(const std::vector<BigInt>& invariants) {
  const auto primes = torsion_primes(invariants);
  if (primes.empty()) return "no torsion";
  std::string out;
  for (const auto& p : primes) out += (out.empty() ? "" : ", ") + p.str() + "-torsion";
  return out;
}

/// Recovers a degree-2 class on (P^1)^k from its torus-fixed-point
/// restrictions. `restriction[e]` is the value at the fixed point whose i-th
/// coordinate is bit i of e; `factor_weights[i]` is the weight by which the
/// i-th generator's restriction jumps across that factor. The coefficient of
/// x_i is the (necessarily constant) jump divided by that weight; the
/// constant term is dropped.
inline MonomialClass euler_class_from_restrictions(int k, const std::vector<RootVector>& restriction,
                                                   const std::vector<RootVector>& factor_weights) {
  if (restriction.size() != (std::size_t{1} << k) || factor_weights.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("restriction table has the wrong shape");
  MonomialClass c(k);
  for (int i = 0; i < k; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    const RootVector jump = restriction[bit] - restriction[0];
    for (std::uint32_t e = 0; e < restriction.size(); ++e)
      if (!(e & bit) && restriction[e | bit] - restriction[e] != jump)
        throw InvariantViolation("restrictions do not come from a class: jump across factor " +
                                 std::to_string(i + 1) + " is not constant");
    const RootVector& w = factor_weights[static_cast<std::size_t>(i)];
    std::optional<std::int64_t> ratio;
    bool ok = true;
    for (int j = 0; j < jump.rank() && ok; ++j) {
      if (w[j] == 0) {
        ok = jump[j] == 0;
      } else if (jump[j] % w[j] != 0 || (ratio && *ratio != jump[j] / w[j])) {
        ok = false;
      } else {
        ratio = jump[j] / w[j];
      }
    }
    if (!ok || (!ratio && !jump.is_zero()))
      throw InvariantViolation("jump across factor " + std::to_string(i + 1) + " is not a multiple of its weight");
    if (ratio) c.add(bit, *ratio);
  }
  return c;
}

}  // namespace klsep
