#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "klsep/bruhat.hpp"
#include "klsep/coxeter.hpp"
#include "klsep/hecke.hpp"
#include "klsep/parallel.hpp"

namespace klsep {

/// Coefficients of a Kazhdan-Lusztig polynomial P_{x,w}(q), lowest degree
/// first, trailing zeros trimmed. h_{x,w} = v^{l(x)-l(w)} P_{x,w}(v^2).
using KLPoly = std::vector<std::int64_t>;

struct MuEdge {
  Element x;
  std::int64_t mu;
  friend bool operator==(const MuEdge&, const MuEdge&) = default;
};

enum class DescentChoice { Smallest, Largest };

struct KLOptions {
  DescentChoice descent = DescentChoice::Smallest;
  unsigned threads = 1;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantViolation("KL coefficient overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantViolation("KL coefficient overflow");
  return r;
}

// acc += k * q^shift * p
inline void add_scaled(KLPoly& acc, const KLPoly& p, std::int64_t k, std::size_t shift) {
  if (p.empty() || k == 0) return;
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] = checked_add(acc[i + shift], checked_mul(k, p[i]));
}

inline void trim(KLPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

struct KLPolyHash {
  std::size_t operator()(const KLPoly& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto c : p) h = (h ^ static_cast<std::size_t>(c)) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace detail

/// Kazhdan-Lusztig basis of the Hecke algebra of a finite Coxeter group.
///
/// Storage follows the usual extremal-pair compression: row w keeps P_{x,w}
/// only for x <= w with dL(w) in dL(x) and dR(w) in dR(x). Any other x is
/// pushed up (x -> sx for s in dL(w) with sx > x, and mirror) before lookup,
/// which leaves P unchanged. Polynomials are interned in a pool. A separate
/// adjacency list holds mu(x, w) != 0 for every x < w.
///
/// The referenced GroupTable must outlive the table.
class KLTable {
 public:
  static constexpr std::uint32_t kZero = 0;
  static constexpr std::uint32_t kOne = 1;

  const GroupTable& group() const { return *g_; }

  /// P_{x,w}; the zero polynomial when x is not below w.
  const KLPoly& kl_poly(Element x, Element w) const { return pool_[poly_id(x, w)]; }

  /// h_{x,w} = v^{l(x)-l(w)} P_{x,w}(v^2).
  LaurentPoly h_coefficient(Element x, Element w) const {
    const KLPoly& p = kl_poly(x, w);
    LaurentPoly out;
    const int base = g_->length(x) - g_->length(w);
    for (std::size_t i = 0; i < p.size(); ++i) out.add_term(base + 2 * static_cast<int>(i), BigInt(p[i]));
    return out;
  }

  /// Coefficient of v^-1 in h_{x,w}; 0 if x = w or x is not below w.
  std::int64_t mu(Element x, Element w) const {
    const auto& row = mu_[w];
    auto it = std::lower_bound(row.begin(), row.end(), x, [](const MuEdge& e, Element v) { return e.x < v; });
    return (it != row.end() && it->x == x) ? it->mu : 0;
  }

  /// All x < w with mu(x, w) != 0, sorted by x.
  std::span<const MuEdge> lower_mu(Element w) const { return mu_[w]; }

  /// h_w in the standard basis.
  HeckeElt kl_element(Element w) const {
    HeckeElt h;
    for (Element x = 0; x <= w; ++x)
      if (g_->bruhat_leq(x, w)) h.add(x, h_coefficient(x, w));
    return h;
  }

  std::size_t extremal_pairs() const {
    std::size_t c = 0;
    for (const auto& r : row_x_) c += r.size();
    return c;
  }
  std::size_t distinct_polys() const { return pool_.size(); }
  std::size_t mu_edges() const {
    std::size_t c = 0;
    for (const auto& r : mu_) c += r.size();
    return c;
  }
  std::span<const KLPoly> pool() const { return pool_; }
  std::span<const Element> extremal_row(Element w) const { return row_x_[w]; }
  std::span<const std::uint32_t> extremal_poly_ids(Element w) const { return row_p_[w]; }

  /// Pool index of P_{x,w} (kZero when x is not below w).
  std::uint32_t poly_id(Element x, Element w) const {
    if (x == w) return kOne;
    const std::uint32_t dl = g_->left_descents(w).bits(), dr = g_->right_descents(w).bits();
    for (bool moved = true; moved;) {
      moved = false;
      for (std::uint32_t b = dl & ~g_->left_descents(x).bits(); b != 0; b &= b - 1) {
        x = g_->left_mult(std::countr_zero(b), x);
        moved = true;
        break;
      }
      if (moved) continue;
      for (std::uint32_t b = dr & ~g_->right_descents(x).bits(); b != 0; b &= b - 1) {
        x = g_->right_mult(x, std::countr_zero(b));
        moved = true;
        break;
      }
    }
    if (x == w) return kOne;
    if (g_->length(x) >= g_->length(w)) return kZero;
    const auto& xs = row_x_[w];
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end() || *it != x) return kZero;
    return row_p_[w][static_cast<std::size_t>(it - xs.begin())];
  }

 private:
  friend KLTable kl_basis(const GroupTable& g, const KLOptions& options);
  friend KLTable read_klt(std::istream& in, const GroupTable& g);

  explicit KLTable(const GroupTable& g)
      : g_(&g), row_x_(g.order()), row_p_(g.order()), mu_(g.order()) {
    pool_.push_back({});
    pool_.push_back({1});
    pool_index_.emplace(pool_[0], kZero);
    pool_index_.emplace(pool_[1], kOne);
  }

  std::uint32_t intern(KLPoly p) {
    auto [it, inserted] = pool_index_.try_emplace(p, static_cast<std::uint32_t>(pool_.size()));
    if (inserted) pool_.push_back(std::move(p));
    return it->second;
  }

  // mu row of w from its extremal row plus the covers sw, wt.
  void finish_mu_row(Element w) {
    auto& row = mu_[w];
    row.clear();
    const int lw = g_->length(w);
    const auto& xs = row_x_[w];
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const int d = lw - g_->length(xs[k]);
      if (d % 2 == 0) continue;
      const KLPoly& p = pool_[row_p_[w][k]];
      const auto top = static_cast<std::size_t>((d - 1) / 2);
      if (p.size() > top && p[top] != 0) row.push_back({xs[k], p[top]});
    }
    for (int s : g_->left_descents(w).members()) row.push_back({g_->left_mult(s, w), 1});
    for (int t : g_->right_descents(w).members()) row.push_back({g_->right_mult(w, t), 1});
    std::sort(row.begin(), row.end(), [](const MuEdge& a, const MuEdge& b) { return a.x < b.x; });
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  const GroupTable* g_;
  std::vector<KLPoly> pool_;
  std::unordered_map<KLPoly, std::uint32_t, detail::KLPolyHash> pool_index_;
  std::vector<std::vector<Element>> row_x_;
  std::vector<std::vector<std::uint32_t>> row_p_;
  std::vector<std::vector<MuEdge>> mu_;
};

/// Computes the Kazhdan-Lusztig basis in length strata. For each w a left
/// descent s is fixed (smallest index by default) and with u = sw
///   P_{x,w} = P_{sx,u} + q P_{x,u} - sum_{z<u, sz<z} mu(z,u) q^{(l(w)-l(z))/2} P_{x,z}
/// for the extremal x (which all have sx < x). Rows within one stratum are
/// independent and computed on `options.threads` workers.
///
/// Throws InvariantViolation if a polynomial has a negative coefficient,
/// a constant term other than 1, or degree above (l(w)-l(x)-1)/2.
inline KLTable kl_basis(const GroupTable& g, const KLOptions& options = {}) {
  KLTable table(g);
  const BruhatIntervals intervals(g);
  const std::size_t n = g.order();

  struct RowResult {
    std::vector<Element> xs;
    std::vector<KLPoly> polys;
  };

  std::size_t begin = 1;
  while (begin < n) {
    std::size_t end = begin;
    while (end < n && g.length(static_cast<Element>(end)) == g.length(static_cast<Element>(begin))) ++end;
    std::vector<RowResult> results(end - begin);

    parallel_for(end - begin, options.threads, [&](std::size_t k) {
      const auto w = static_cast<Element>(begin + k);
      const GeneratorSet dl = g.left_descents(w), dr = g.right_descents(w);
      const int s = options.descent == DescentChoice::Smallest ? dl.first() : dl.last();
      const Element u = g.left_mult(s, w);
      const int lw = g.length(w);
      RowResult& out = results[k];
      intervals.for_each(w, [&](Element x) {
        if (x == w || !dl.subset_of(g.left_descents(x)) || !dr.subset_of(g.right_descents(x))) return;
        KLPoly p = table.kl_poly(g.left_mult(s, x), u);
        detail::add_scaled(p, table.kl_poly(x, u), 1, 1);
        for (const MuEdge& e : table.lower_mu(u)) {
          if (!g.left_descents(e.x).contains(s) || !intervals.contains(e.x, x)) continue;
          detail::add_scaled(p, table.kl_poly(x, e.x), -e.mu, static_cast<std::size_t>((lw - g.length(e.x)) / 2));
        }
        detail::trim(p);
        const int d = lw - g.length(x);
        if (p.empty() || p[0] != 1 || static_cast<int>(p.size()) > (d + 1) / 2 ||
            std::any_of(p.begin(), p.end(), [](auto c) { return c < 0; }))
          throw InvariantViolation("bad KL polynomial for (" + g.format(x) + ", " + g.format(w) + ")");
        out.xs.push_back(x);
        out.polys.push_back(std::move(p));
      });
    });

    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto w = static_cast<Element>(begin + k);
      auto& r = results[k];
      table.row_x_[w] = std::move(r.xs);
      table.row_p_[w].reserve(r.polys.size());
      for (auto& p : r.polys) table.row_p_[w].push_back(table.intern(std::move(p)));
      table.finish_mu_row(w);
    }
    begin = end;
  }
  return table;
}

inline std::int64_t mu(const KLTable& t, Element x, Element w) { return t.mu(x, w); }

/// Writes {x: a_x} with h = sum a_x h_x, by unitriangular back-substitution
/// from the top element of the support downwards.
inline std::map<Element, LaurentPoly> expand_in_kl(const KLTable& t, HeckeElt h) {
  std::map<Element, LaurentPoly> out;
  while (!h.is_zero()) {
    auto top = std::prev(h.coords().end());
    const Element y = top->first;
    const LaurentPoly c = top->second;
    out.emplace(y, c);
    h -= c * t.kl_element(y);
  }
  return out;
}

/// KL-support of h_w h_s (Right) or h_s h_w (Left), read from mu-edges only.
inline std::vector<Element> kl_product_support(const KLTable& t, Element w, int s, Side side) {
  const GroupTable& g = t.group();
  g.check_generator(s);
  if (g.descents(w, side).contains(s)) return {w};
  std::vector<Element> out{g.mult(s, w, side)};
  for (const MuEdge& e : t.lower_mu(w))
    if (g.descents(e.x, side).contains(s)) out.push_back(e.x);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// KLT1 text dump.
//
//   KLT1 <family> <rank> [m]
//   order <n>
//   polys <k>
//   <len> <c0> <c1> ...          k lines, pool entries 0..k-1 (0 = zero, 1 = one)
//   rows
//   <w> <count> <x>:<pid> ...    one line per element with a non-empty row
//   end
//
// mu-edges are derived on load.
// ---------------------------------------------------------------------------

inline std::string spec_header_fields(const CoxeterSpec& spec) {
  std::string out = std::string(family_name(spec.family)) + " " + std::to_string(spec.rank);
  if (spec.family == Family::I2) out += " " + std::to_string(spec.m);
  return out;
}

inline void write_klt(std::ostream& out, const KLTable& t) {
  const GroupTable& g = t.group();
  out << "KLT1 " << spec_header_fields(g.spec()) << "\n";
  out << "order " << g.order() << "\n";
  out << "polys " << t.pool().size() << "\n";
  for (const KLPoly& p : t.pool()) {
    out << p.size();
    for (auto c : p) out << ' ' << c;
    out << "\n";
  }
  out << "rows\n";
  for (Element w = 0; w < g.order(); ++w) {
    auto xs = t.extremal_row(w);
    if (xs.empty()) continue;
    auto ps = t.extremal_poly_ids(w);
    out << w << ' ' << xs.size();
    for (std::size_t k = 0; k < xs.size(); ++k) out << ' ' << xs[k] << ':' << ps[k];
    out << "\n";
  }
  out << "end\n";
}

namespace detail {

inline CoxeterSpec parse_spec_fields(std::istringstream& in, ParseErrorKind kind, const std::string& line) {
  std::string fam;
  int rank = 0;
  if (!(in >> fam >> rank)) throw ParseError(kind, line);
  auto f = parse_family(fam);
  if (!f) throw ParseError(kind, "unknown family in: " + line);
  CoxeterSpec spec{*f, rank, 0};
  if (*f == Family::I2 && !(in >> spec.m)) throw ParseError(kind, "I2 needs m: " + line);
  std::string extra;
  if (in >> extra) throw ParseError(kind, "trailing fields: " + line);
  try {
    spec.validate();
  } catch (const UnsupportedSpec& e) {
    throw ParseError(kind, e.what());
  }
  return spec;
}

}  // namespace detail

inline KLTable read_klt(std::istream& in, const GroupTable& g) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(ParseErrorKind::MalformedHeader, "empty input");
  {
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic.rfind("KLT", 0) != 0) throw ParseError(ParseErrorKind::MalformedHeader, line);
    if (magic != "KLT1") throw ParseError(ParseErrorKind::UnknownVersion, magic);
    auto spec = detail::parse_spec_fields(hs, ParseErrorKind::MalformedHeader, line);
    if (!(spec == g.spec())) throw ParseError(ParseErrorKind::SpecMismatch, spec.name() + " vs " + g.spec().name());
  }
  auto expect_keyword = [&](const std::string& key) -> std::size_t {
    std::string k;
    std::size_t v = 0;
    if (!(in >> k >> v) || k != key) throw ParseError(ParseErrorKind::MalformedBody, "expected '" + key + "'");
    return v;
  };
  if (expect_keyword("order") != g.order()) throw ParseError(ParseErrorKind::SpecMismatch, "order");
  const std::size_t npolys = expect_keyword("polys");
  if (npolys < 2) throw ParseError(ParseErrorKind::MalformedBody, "pool must start with 0 and 1");

  KLTable t(g);
  std::vector<KLPoly> polys(npolys);
  for (auto& p : polys) {
    std::size_t len = 0;
    if (!(in >> len)) throw ParseError(ParseErrorKind::MalformedBody, "polynomial");
    p.resize(len);
    for (auto& c : p)
      if (!(in >> c)) throw ParseError(ParseErrorKind::MalformedBody, "polynomial coefficient");
  }
  if (!(polys[0].empty() && polys[1] == KLPoly{1})) throw ParseError(ParseErrorKind::MalformedBody, "pool head");
  for (std::size_t k = 2; k < npolys; ++k)
    if (t.intern(polys[k]) != k) throw ParseError(ParseErrorKind::MalformedBody, "duplicate pool entry");

  std::string word;
  if (!(in >> word) || word != "rows") throw ParseError(ParseErrorKind::MalformedBody, "expected 'rows'");
  while (in >> word) {
    if (word == "end") {
      for (Element w = 0; w < g.order(); ++w) t.finish_mu_row(w);
      return t;
    }
    Element w = 0;
    std::size_t count = 0;
    try {
      w = static_cast<Element>(std::stoul(word));
    } catch (const std::exception&) {
      throw ParseError(ParseErrorKind::MalformedBody, "row index " + word);
    }
    if (w >= g.order() || !(in >> count)) throw ParseError(ParseErrorKind::DanglingVertex, "row " + word);
    auto& xs = t.row_x_[w];
    auto& ps = t.row_p_[w];
    for (std::size_t k = 0; k < count; ++k) {
      std::string entry;
      if (!(in >> entry)) throw ParseError(ParseErrorKind::MalformedBody, "row entry");
      auto colon = entry.find(':');
      if (colon == std::string::npos) throw ParseError(ParseErrorKind::MalformedBody, entry);
      unsigned long x = 0, pid = 0;
      try {
        x = std::stoul(entry.substr(0, colon));
        pid = std::stoul(entry.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::MalformedBody, entry);
      }
      if (x >= w || pid >= npolys) throw ParseError(ParseErrorKind::DanglingVertex, entry);
      if (!xs.empty() && xs.back() >= x) throw ParseError(ParseErrorKind::MalformedBody, "row not sorted");
      xs.push_back(static_cast<Element>(x));
      ps.push_back(static_cast<std::uint32_t>(pid));
    }
  }
  throw ParseError(ParseErrorKind::MalformedBody, "missing 'end'");
}

}  // namespace klsep
