#include <gtest/gtest.h>

#include <set>

#include "klsep/kl_table.hpp"
#include "klsep/separation.hpp"
#include "klsep/wgraph.hpp"
#include "oracles.hpp"

using namespace klsep;

namespace {

struct Computed {
  GroupTable g;
  WGraph graph;
  FWTable f;
};

Computed compute(const CoxeterSpec& spec, unsigned threads = 1) {
  auto g = build_group(spec);
  auto graph = build_wgraph(g, kl_basis(g));
  auto f = compute_fw(g, graph, threads);
  return {std::move(g), std::move(graph), std::move(f)};
}

std::set<Element> elements_of(const GroupTable& g, const std::vector<std::string>& words) {
  std::set<Element> out;
  for (const auto& w : words) out.insert(g.parse_word_or_throw(w));
  return out;
}

// Dihedral closed form: f_W(x) = {prefixes of x of length l(x), l(x)-2, ..., >= 1}
// for x != e, w0 (prefixes of the unique reduced word), {x} for x = e, w0.
ElementSet dihedral_fw(const GroupTable& g, Element x) {
  if (x == g.identity() || x == g.longest()) return {x};
  const Word& word = g.word(x);
  ElementSet out;
  for (std::size_t len = word.size(); len >= 1; len -= 2) {
    out.push_back(g.from_word(std::span<const int>(word.data(), len)));
    if (len < 2) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElementSet image(const GroupTable& g, const ElementSet& s, auto&& map) {
  ElementSet out;
  for (Element z : s) out.push_back(map(z));
  std::sort(out.begin(), out.end());
  return out;
}

void expect_equivariant(const Computed& c, auto&& map) {
  for (Element x = 0; x < c.g.order(); ++x) {
    const Element y = map(x);
    ASSERT_EQ(c.f.defined(x), c.f.defined(y)) << c.g.format(x);
    if (c.f.defined(x)) ASSERT_EQ(image(c.g, c.f.at(x), map), c.f.at(y)) << c.g.format(x);
  }
}

}  // namespace

TEST(FW, DihedralClosedForm) {
  for (int m = 3; m <= 8; ++m) {
    auto c = compute(CoxeterSpec::I2(m));
    for (Element x = 0; x < c.g.order(); ++x) {
      ASSERT_TRUE(c.f.defined(x));
      EXPECT_EQ(c.f.at(x), dihedral_fw(c.g, x)) << m << " " << c.g.format(x);
    }
    const auto sigma_set = elements_of(c.g, {"e", "s", "t", "st", "ts"});
    for (Element x = 0; x < c.g.order(); ++x)
      EXPECT_EQ(c.f.separated(x), sigma_set.contains(x) || x == c.g.longest()) << m << " " << c.g.format(x);
  }
}

TEST(FW, RankTwoClassification) {
  for (const auto& spec : {CoxeterSpec::A(2), CoxeterSpec::I2(2), CoxeterSpec::I2(3)}) {
    auto c = compute(spec);
    EXPECT_EQ(sigma(c.g, c.f).sigma_size, c.g.order()) << spec.name();
  }
  for (const auto& spec : {CoxeterSpec::B(2), CoxeterSpec::G2(), CoxeterSpec::I2(4), CoxeterSpec::I2(5),
                           CoxeterSpec::I2(6), CoxeterSpec::I2(7), CoxeterSpec::I2(8)}) {
    auto c = compute(spec);
    EXPECT_LT(sigma(c.g, c.f).sigma_size, c.g.order()) << spec.name();
  }
}

TEST(FW, B3) {
  auto c = compute(CoxeterSpec::B(3));
  auto r = sigma(c.g, c.f);
  EXPECT_EQ(r.order, 48u);
  EXPECT_EQ(r.undefined, std::vector<std::string>{"stsuts"});
  const auto printed =
      elements_of(c.g, {"utu", "tut", "utsu", "tuts", "utsut", "tsuts", "sutu", "tsutu", "utsutu", "tsutsu",
                        "tutsutu", "stut", "stsut", "sutsut", "sutsutu", "tsutsut", "tsutsutu", "stuts",
                        "stutsutu", "stsutsut"});
  EXPECT_EQ(printed.size(), 20u);
  EXPECT_EQ(elements_of(c.g, r.non_separated), printed);
}

TEST(FW, D4) {
  auto c = compute(CoxeterSpec::D(4));
  auto r = sigma(c.g, c.f);
  EXPECT_TRUE(r.undefined.empty());
  const Element w1 = c.g.parse_word_or_throw("tvtsutv");
  const Element w2 = c.g.parse_word_or_throw("suvtvsu");
  const Element t = c.g.parse_word_or_throw("t");
  const std::vector<int> tau{2, 1, 3, 0};  // s -> u -> v -> s
  auto tau_of = [&](Element x) { return oracle::apply_automorphism(c.g, tau, x); };
  const std::set<Element> expected{w1, tau_of(w1), tau_of(tau_of(w1)), w2, c.g.product(t, w2), c.g.product(w2, t),
                                   c.g.product(c.g.product(t, w2), t)};
  EXPECT_EQ(expected.size(), 7u);
  EXPECT_EQ(elements_of(c.g, r.non_separated), expected);
}

TEST(FW, TypeAUpToRankFiveIsSeparated) {
  for (int n = 1; n <= 5; ++n) {
    auto c = compute(CoxeterSpec::A(n));
    auto r = sigma(c.g, c.f);
    EXPECT_EQ(r.sigma_size, c.g.order()) << n;
  }
}

TEST(FW, InverseEquivariance) {
  for (const auto& spec : {CoxeterSpec::B(3), CoxeterSpec::D(4), CoxeterSpec::B(4), CoxeterSpec::I2(7)}) {
    auto c = compute(spec);
    expect_equivariant(c, [&](Element x) { return c.g.inverse(x); });
  }
}

TEST(FW, DiagramAutomorphismEquivariance) {
  {
    auto c = compute(CoxeterSpec::D(4));
    for (const std::vector<int>& perm : {std::vector<int>{2, 1, 3, 0}, std::vector<int>{0, 1, 3, 2}})
      expect_equivariant(c, [&](Element x) { return oracle::apply_automorphism(c.g, perm, x); });
  }
  {
    auto c = compute(CoxeterSpec::A(4));
    expect_equivariant(c, [&](Element x) { return oracle::apply_automorphism(c.g, {3, 2, 1, 0}, x); });
  }
  {
    auto c = compute(CoxeterSpec::F4());
    expect_equivariant(c, [&](Element x) { return oracle::apply_automorphism(c.g, {3, 2, 1, 0}, x); });
  }
  {
    auto c = compute(CoxeterSpec::D(5));
    expect_equivariant(c, [&](Element x) { return oracle::apply_automorphism(c.g, {0, 1, 2, 4, 3}, x); });
  }
}

TEST(FW, ValuesAreLowerSetsContainingX) {
  for (const auto& spec : {CoxeterSpec::B(4), CoxeterSpec::D(4), CoxeterSpec::G2()}) {
    auto c = compute(spec);
    for (Element x = 0; x < c.g.order(); ++x) {
      if (!c.f.defined(x)) continue;
      const auto& fx = c.f.at(x);
      EXPECT_TRUE(std::is_sorted(fx.begin(), fx.end()));
      EXPECT_TRUE(std::binary_search(fx.begin(), fx.end(), x)) << spec.name() << " " << c.g.format(x);
      for (Element z : fx) EXPECT_TRUE(c.g.bruhat_leq(z, x));
    }
  }
}

TEST(FW, ProductsOfQualifyingChildrenAreDegreeZero) {
  // h_s h_z for z in a qualifying f_W(sx) is a nonnegative integer combination.
  auto g = build_group(CoxeterSpec::B(3));
  auto t = kl_basis(g);
  auto graph = build_wgraph(g, t);
  auto f = compute_fw(g, graph);
  for (Element x = 1; x < g.order(); ++x)
    for (int s : g.left_descents(x).members()) {
      const Element y = g.left_mult(s, x);
      if (!f.defined(y)) continue;
      for (Element z : restrict_set(g, f.at(y), s, Side::Left)) {
        const auto supp = supp_kl(t, mult_by_hs(g, t.kl_element(z), s, Side::Left));
        EXPECT_TRUE(supp.supported_deg0);
        EXPECT_EQ(supp.elements, product_support(g, graph, z, s, Side::Left));
      }
    }
}

TEST(FW, ThreadCountDoesNotChangeResult) {
  auto one = compute(CoxeterSpec::F4(), 1);
  auto four = compute(CoxeterSpec::F4(), 4);
  EXPECT_EQ(one.f, four.f);
}

TEST(SigmaReport, CountsAddUp) {
  auto c = compute(CoxeterSpec::B(4));
  auto r = sigma(c.g, c.f);
  EXPECT_EQ(r.sigma_size + r.undefined.size() + r.non_separated.size(), 384u);
}

TEST(SigmaReport, TextFormat) {
  auto c = compute(CoxeterSpec::B(3));
  std::ostringstream out;
  write_text(out, sigma(c.g, c.f));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), std::string("klsep ") + kVersion + " sigma report");
  EXPECT_NE(text.find("group B3, order 48\n"), std::string::npos);
  EXPECT_NE(text.find("letters: s=s1 t=s2 u=s3\n"), std::string::npos);
  EXPECT_NE(text.find("separated: 27\n"), std::string::npos);
  EXPECT_NE(text.find("undefined: 1  [stsuts]\n"), std::string::npos);
  EXPECT_NE(text.find("defined, not separated: 20  [tut, utu,"), std::string::npos);
  EXPECT_NE(text.find("not separated in total: 21\n"), std::string::npos);
}

TEST(SIGMA1, RoundTrip) {
  for (const auto& spec : {CoxeterSpec::B(3), CoxeterSpec::I2(5), CoxeterSpec::D(4)}) {
    auto c = compute(spec);
    for (bool with_fw : {false, true}) {
      const SigmaReport r = sigma(c.g, c.f, with_fw);
      const auto j = to_json(r);
      const SigmaReport back = sigma_report_from_json(nlohmann::ordered_json::parse(j.dump()));
      EXPECT_EQ(back, r);
      EXPECT_EQ(to_json(back).dump(), j.dump());
    }
  }
}

TEST(SIGMA1, Fields) {
  auto c = compute(CoxeterSpec::I2(5));
  const auto j = to_json(sigma(c.g, c.f, true));
  EXPECT_EQ(j["format"], "SIGMA1");
  EXPECT_EQ(j["spec"], "I2(5)");
  EXPECT_EQ(j["m"], 5);
  EXPECT_EQ(j["letters"], nlohmann::ordered_json::array({"s", "t"}));
  EXPECT_EQ(j["sigmaSize"], 6);
  EXPECT_EQ(j["nonSeparated"], nlohmann::ordered_json::array({"sts", "tst", "stst", "tsts"}));
  EXPECT_EQ(j["fw"]["stst"], nlohmann::ordered_json::array({"st", "stst"}));
}

TEST(SIGMA1, ParseErrors) {
  auto kind_of = [](const std::string& text) {
    try {
      sigma_report_from_json(nlohmann::ordered_json::parse(text));
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << text;
    return ParseErrorKind::EmptyGraph;
  };
  EXPECT_EQ(kind_of("[]"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind_of(R"({"format": "WG1"})"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind_of(R"({"format": "SIGMA2"})"), ParseErrorKind::UnknownVersion);
  EXPECT_EQ(kind_of(R"({"format": "SIGMA1", "family": "B"})"), ParseErrorKind::MalformedBody);
  EXPECT_EQ(kind_of(R"({"format": "SIGMA1", "family": "D", "rank": 2, "m": null})"), ParseErrorKind::MalformedHeader);
}
