#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "klsep/coxeter.hpp"
#include "klsep/error.hpp"
#include "klsep/hecke.hpp"
#include "klsep/kl_table.hpp"
#include "klsep/parallel.hpp"
#include "klsep/version.hpp"
#include "klsep/wgraph.hpp"

namespace klsep {

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Element>;

struct KLSupport {
  ElementSet elements;
  /// Every coordinate in the KL basis is a nonnegative integer constant.
  bool supported_deg0 = true;
};

inline KLSupport supp_kl(const KLTable& t, const HeckeElt& h) {
  KLSupport out;
  for (const auto& [x, c] : expand_in_kl(t, h)) {
    out.elements.push_back(x);
    if (!c.is_constant() || c.coefficient(0) < 0) out.supported_deg0 = false;
  }
  return out;
}

/// {x in z : sx > x} (Left) or {x in z : xs > x} (Right).
inline ElementSet restrict_set(const GroupTable& g, const ElementSet& z, int s, Side side) {
  ElementSet out;
  for (Element x : z)
    if (!g.descents(x, side).contains(s)) out.push_back(x);
  return out;
}

/// f_W(x) for every x; std::nullopt where x is outside the domain.
class FWTable {
 public:
  explicit FWTable(std::size_t order) : values_(order) {}

  bool defined(Element x) const { return values_[x].has_value(); }
  const ElementSet& at(Element x) const { return *values_[x]; }
  const std::optional<ElementSet>& value(Element x) const { return values_[x]; }
  std::size_t size() const { return values_.size(); }
  bool separated(Element x) const { return defined(x) && values_[x]->size() == 1 && values_[x]->front() == x; }

  void set(Element x, std::optional<ElementSet> v) { values_[x] = std::move(v); }

  friend bool operator==(const FWTable&, const FWTable&) = default;

 private:
  std::vector<std::optional<ElementSet>> values_;
};

namespace detail {

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Union over z in zs of suppKL(h_s h_z) (Left) or suppKL(h_z h_s) (Right).
inline ElementSet support_of_products(const GroupTable& g, const WGraph& graph, const ElementSet& zs, int s,
                                      Side side) {
  ElementSet out;
  for (Element z : zs) out = detail::set_union(out, product_support(g, graph, z, s, side));
  return out;
}

/// The inductive partial function. For x != e, a descent s of x (either
/// side) qualifies when f(sx) is defined and every member z has sz > z; f(x)
/// is then the intersection over qualifying descents of the product supports.
/// With no qualifying descent x is left undefined.
inline FWTable compute_fw(const GroupTable& g, const WGraph& graph, unsigned threads = 1) {
  FWTable f(g.order());
  f.set(g.identity(), ElementSet{g.identity()});
  std::size_t begin = 1;
  const std::size_t n = g.order();
  while (begin < n) {
    std::size_t end = begin;
    while (end < n && g.length(static_cast<Element>(end)) == g.length(static_cast<Element>(begin))) ++end;
    std::vector<std::optional<ElementSet>> results(end - begin);
    parallel_for(end - begin, threads, [&](std::size_t k) {
      const auto x = static_cast<Element>(begin + k);
      std::optional<ElementSet> acc;
      for (Side side : {Side::Left, Side::Right}) {
        for (int s : g.descents(x, side).members()) {
          const Element y = g.mult(s, x, side);
          if (!f.defined(y)) continue;
          const ElementSet& fy = f.at(y);
          if (restrict_set(g, fy, s, side).size() != fy.size()) continue;
          ElementSet u = support_of_products(g, graph, fy, s, side);
          acc = acc ? detail::set_intersection(*acc, u) : std::move(u);
        }
      }
      results[k] = std::move(acc);
    });
    for (std::size_t k = 0; k < results.size(); ++k) f.set(static_cast<Element>(begin + k), std::move(results[k]));
    begin = end;
  }
  return f;
}

struct SigmaReport {
  CoxeterSpec spec;
  std::size_t order = 0;
  std::vector<std::string> undefined;
  /// Defined but f_W(x) != {x}.
  std::vector<std::string> non_separated;
  std::size_t sigma_size = 0;
  /// Element word -> f_W as words; present only when requested.
  std::optional<std::vector<std::pair<std::string, std::optional<std::vector<std::string>>>>> fw;

  friend bool operator==(const SigmaReport&, const SigmaReport&) = default;
};

inline SigmaReport sigma(const GroupTable& g, const FWTable& f, bool include_fw = false) {
  SigmaReport r;
  r.spec = g.spec();
  r.order = g.order();
  // Element indices are already ordered by (length, ShortLex word).
  for (Element x = 0; x < g.order(); ++x) {
    if (!f.defined(x))
      r.undefined.push_back(g.format(x));
    else if (f.separated(x))
      ++r.sigma_size;
    else
      r.non_separated.push_back(g.format(x));
  }
  if (include_fw) {
    r.fw.emplace();
    for (Element x = 0; x < g.order(); ++x) {
      std::optional<std::vector<std::string>> words;
      if (f.defined(x)) {
        words.emplace();
        for (Element z : f.at(x)) words->push_back(g.format(z));
      }
      r.fw->emplace_back(g.format(x), std::move(words));
    }
  }
  if (r.sigma_size + r.undefined.size() + r.non_separated.size() != r.order)
    throw InvariantViolation("sigma report counts do not add up to the group order");
  return r;
}

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : ", ") + w;
  return out;
}

inline void write_text(std::ostream& out, const SigmaReport& r) {
  out << "klsep " << kVersion << " sigma report\n";
  out << "group " << r.spec.name() << ", order " << r.order << "\n";
  out << "letters:";
  for (int i = 0; i < r.spec.rank; ++i) out << ' ' << r.spec.letter(i) << "=s" << i + 1;
  out << "\n";
  out << "separated: " << r.sigma_size << "\n";
  out << "undefined: " << r.undefined.size();
  if (!r.undefined.empty()) out << "  [" << join_words(r.undefined) << "]";
  out << "\n";
  out << "defined, not separated: " << r.non_separated.size();
  if (!r.non_separated.empty()) out << "  [" << join_words(r.non_separated) << "]";
  out << "\n";
  out << "not separated in total: " << r.undefined.size() + r.non_separated.size() << "\n";
  if (r.fw) {
    out << "f_W:\n";
    for (const auto& [x, v] : *r.fw)
      out << "  " << x << " -> " << (v ? "{" + join_words(*v) + "}" : std::string("undefined")) << "\n";
  }
}

// SIGMA1 JSON document:
// {
//   "format": "SIGMA1", "tool": "klsep", "version": "0.1.0",
//   "spec": "B3", "family": "B", "rank": 3, "m": null, "letters": ["s","t","u"],
//   "order": 48, "undefined": [...], "nonSeparated": [...], "sigmaSize": 27,
//   "fw": {"<word>": ["<word>", ...] | null, ...}      optional
// }
// Word lists are ordered by element index, i.e. (length, ShortLex).
inline nlohmann::ordered_json to_json(const SigmaReport& r) {
  nlohmann::ordered_json j;
  j["format"] = "SIGMA1";
  j["tool"] = "klsep";
  j["version"] = kVersion;
  j["spec"] = r.spec.name();
  j["family"] = family_name(r.spec.family);
  j["rank"] = r.spec.rank;
  j["m"] = r.spec.family == Family::I2 ? nlohmann::ordered_json(r.spec.m) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json letters = nlohmann::ordered_json::array();
  for (char c : r.spec.letters()) letters.push_back(std::string(1, c));
  j["letters"] = std::move(letters);
  j["order"] = r.order;
  j["undefined"] = r.undefined;
  j["nonSeparated"] = r.non_separated;
  j["sigmaSize"] = r.sigma_size;
  if (r.fw) {
    nlohmann::ordered_json fw = nlohmann::ordered_json::object();
    for (const auto& [x, v] : *r.fw) fw[x] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    j["fw"] = std::move(fw);
  }
  return j;
}

inline SigmaReport sigma_report_from_json(const nlohmann::ordered_json& j) {
  try {
    if (!j.is_object() || !j.contains("format")) throw ParseError(ParseErrorKind::MalformedHeader, "not a SIGMA document");
    const auto format = j.at("format").get<std::string>();
    if (format.rfind("SIGMA", 0) != 0) throw ParseError(ParseErrorKind::MalformedHeader, format);
    if (format != "SIGMA1") throw ParseError(ParseErrorKind::UnknownVersion, format);
    SigmaReport r;
    auto fam = parse_family(j.at("family").get<std::string>());
    if (!fam) throw ParseError(ParseErrorKind::MalformedHeader, "family");
    r.spec = CoxeterSpec{*fam, j.at("rank").get<int>(), j.at("m").is_null() ? 0 : j.at("m").get<int>()};
    r.spec.validate();
    r.order = j.at("order").get<std::size_t>();
    r.undefined = j.at("undefined").get<std::vector<std::string>>();
    r.non_separated = j.at("nonSeparated").get<std::vector<std::string>>();
    r.sigma_size = j.at("sigmaSize").get<std::size_t>();
    if (j.contains("fw")) {
      r.fw.emplace();
      for (const auto& [x, v] : j.at("fw").items()) {
        std::optional<std::vector<std::string>> words;
        if (!v.is_null()) words = v.get<std::vector<std::string>>();
        r.fw->emplace_back(x, std::move(words));
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseErrorKind::MalformedBody, e.what());
  } catch (const UnsupportedSpec& e) {
    throw ParseError(ParseErrorKind::MalformedHeader, e.what());
  }
}

}  // namespace klsep
