#include <gtest/gtest.h>

#include <map>
#include <random>

#include "klsep/bott_samelson.hpp"
#include "klsep/permutation.hpp"
#include "klsep/worked_examples.hpp"

using namespace klsep;
using namespace klsep::examples;

namespace {

std::vector<SubwordMask> brute_force_fiber(const GroupTable& g, const Word& word, Element y) {
  std::vector<SubwordMask> out;
  const int l = static_cast<int>(word.size());
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << l); ++bits) {
    SubwordMask m(l, bits);
    if (subword_product(g, word, m) == y) out.push_back(m);
  }
  return out;
}

Word random_word(std::mt19937& rng, int rank, int length) {
  std::uniform_int_distribution<int> gen(0, rank - 1);
  Word w;
  for (int k = 0; k < length; ++k) w.push_back(gen(rng));
  return w;
}

}  // namespace

TEST(SubwordMask, Basics) {
  const auto m = SubwordMask::parse("10110");
  EXPECT_EQ(m.length(), 5);
  EXPECT_TRUE(m[1]);
  EXPECT_FALSE(m[2]);
  EXPECT_TRUE(m[4]);
  EXPECT_EQ(m.to_string(), "10110");
  EXPECT_EQ(SubwordMask::from_positions(5, {1, 3, 4}), m);
  EXPECT_EQ((m + SubwordMask::delta(5, 1)).to_string(), "00110");
  EXPECT_EQ((m + m).to_string(), "00000");
  EXPECT_LT(SubwordMask::parse("00111"), SubwordMask::parse("01000"));
  EXPECT_THROW(SubwordMask::parse("1021"), std::invalid_argument);
  EXPECT_THROW(SubwordMask::delta(5, 6), std::out_of_range);
  EXPECT_THROW(m + SubwordMask::parse("1"), std::invalid_argument);
}

TEST(Fiber, MatchesBruteForceOnRandomWords) {
  std::mt19937 rng(2024);
  for (const auto& spec : {CoxeterSpec::A(3), CoxeterSpec::B(3), CoxeterSpec::G2()}) {
    auto g = build_group(spec);
    std::uniform_int_distribution<int> len(0, 10);
    for (int trial = 0; trial < 40; ++trial) {
      const Word word = random_word(rng, g.rank(), len(rng));
      const Element y = g.from_word(random_word(rng, g.rank(), 3));
      EXPECT_EQ(fiber_fixed_points(g, word, y), brute_force_fiber(g, word, y));
    }
  }
}

TEST(Fiber, RejectsLongWords) {
  auto g = build_group(CoxeterSpec::A(2));
  EXPECT_THROW(fiber_fixed_points(g, Word(25, 0), g.identity()), std::invalid_argument);
  EXPECT_THROW(fiber_fixed_points(g, Word{0, 5}, g.identity()), std::invalid_argument);
}

TEST(Fiber, CellDimensionFormulasAgree) {
  std::mt19937 rng(99);
  for (const auto& spec : {CoxeterSpec::A(3), CoxeterSpec::B(3), CoxeterSpec::D(4)}) {
    auto g = build_group(spec);
    for (int trial = 0; trial < 30; ++trial) {
      const Word word = random_word(rng, g.rank(), 8);
      const std::uint32_t bits = std::uniform_int_distribution<std::uint32_t>(0, 255)(rng);
      const SubwordMask m(8, bits);
      const CellDims d = bb_cell_dim(g, word, m);
      EXPECT_EQ(d, bb_cell_dim_roots(g, word, m));
      EXPECT_LE(d.fiber, d.total);
    }
  }
}

TEST(Fiber, SL3Pentagon) {
  auto g = build_group(CoxeterSpec::A(2));
  RootSystem roots(g);
  const auto masks = fiber_fixed_points(g, sl3_word(), g.longest());
  std::vector<std::string> got;
  for (const auto& m : masks) got.push_back(m.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"00111", "01110", "10011", "11001", "11100"}));

  const auto pent = sl3_pentagon();
  const RootVector r1 = RootVector::simple(2, 0), r2 = RootVector::simple(2, 1);
  const std::vector<RootVector> expected{-r1, -r2, r1, r1 + r2, r2};
  for (std::size_t i = 0; i < 5; ++i)
    EXPECT_EQ(fiber_curve_weight(g, roots, sl3_word(), pent[i], pent[(i + 1) % 5]), expected[i]) << i;
}

TEST(Fiber, TCurveWeightsChangeSignAcrossACurve) {
  auto g = build_group(CoxeterSpec::A(2));
  RootSystem roots(g);
  for (Element w = 0; w < g.order(); ++w)
    for (const auto& mu : roots.positive_roots()) {
      const Element other = g.product(w, roots.reflection(mu));
      EXPECT_EQ(tcurve_weight(g, roots, other, mu), -tcurve_weight(g, roots, w, mu));
    }
  EXPECT_THROW(tcurve_weight(g, roots, 0, RootVector::simple(2, 0) + RootVector::simple(2, 0)),
               std::invalid_argument);
}

TEST(Fiber, NormalLineWeightAtFirstPositionIsSimple) {
  auto g = build_group(CoxeterSpec::B(3));
  const Word word{2, 1, 0, 2};
  for (std::uint32_t bits = 0; bits < 16; ++bits)
    EXPECT_EQ(normal_line_weight(g, word, SubwordMask(4, bits), 1), RootVector::simple(3, 2));
}

class A7Fiber : public ::testing::Test {
 protected:
  A7Fiber() : g(build_group(CoxeterSpec::A(7))), y(parse_one_line(g, a7_target())), word(a7_word()) {}
  GroupTable g;
  Element y;
  Word word;
};

TEST_F(A7Fiber, WordIsAReducedWordForTheHexagonPermutation) {
  EXPECT_EQ(one_line_string(g, g.from_word(word)), "46718235");
  EXPECT_EQ(g.length(g.from_word(word)), 14);
}

TEST_F(A7Fiber, FixedPointsAreTheGridAndFourMore) {
  const auto masks = fiber_fixed_points(g, word, y);
  EXPECT_EQ(masks.size(), 29u);
  std::set<SubwordMask> expected;
  const auto lambda = a7_lambda();
  const auto mu = a7_mu();
  for (const auto& l : lambda)
    for (const auto& m : mu) expected.insert(l + m);
  for (int j : {3, 4})
    for (int k : {3, 4}) expected.insert(lambda[static_cast<std::size_t>(j)] + mu[static_cast<std::size_t>(k)] + a7_nu());
  EXPECT_EQ(std::set<SubwordMask>(masks.begin(), masks.end()), expected);
}

TEST_F(A7Fiber, GridCellDimensionsAreThoseOfAProductOfSurfaces) {
  // each factor is a toric surface with 5 fixed points: Betti numbers 1, 3, 1
  std::map<int, int> count;
  const auto lambda = a7_lambda();
  const auto mu = a7_mu();
  int top_dims = 0;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t k = 0; k < 5; ++k) {
      const auto d = bb_cell_dim(g, word, lambda[j] + mu[k]);
      EXPECT_EQ(d, bb_cell_dim_roots(g, word, lambda[j] + mu[k]));
      ++count[d.fiber];
      if (d.fiber == 4) {
        ++top_dims;
        EXPECT_EQ(j, 0u);
        EXPECT_EQ(k, 0u);
      }
    }
  EXPECT_EQ(top_dims, 1);
  EXPECT_EQ(count, (std::map<int, int>{{0, 1}, {1, 6}, {2, 11}, {3, 6}, {4, 1}}));
}

TEST_F(A7Fiber, WeightTables) {
  const auto lambda = a7_lambda();
  const auto mu = a7_mu();
  const auto positions = a7_line_positions();
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 5; ++k) {
        const RootVector want = sum_of_simple_roots(7, a7_lambda_weights()[row][j]) +
                                sum_of_simple_roots(7, a7_mu_weights()[row][k]);
        EXPECT_EQ(normal_line_weight(g, word, lambda[j] + mu[k], positions[row]), want)
            << "L" << row + 1 << " lambda" << j + 1 << " mu" << k + 1;
      }
}

TEST(D4Fiber, EightFixedPointsWithTheClosedFormRestrictions) {
  auto g = build_group(CoxeterSpec::D(4));
  const auto masks = fiber_fixed_points(g, d4_word(), g.parse_word_or_throw(d4_target()));
  EXPECT_EQ(masks.size(), 8u);
  std::set<SubwordMask> expected;
  for (std::uint32_t e = 0; e < 8; ++e) expected.insert(d4_mask(e));
  EXPECT_EQ(std::set<SubwordMask>(masks.begin(), masks.end()), expected);
  for (std::uint32_t e = 0; e < 8; ++e)
    EXPECT_EQ(normal_line_weight(g, d4_word(), d4_mask(e), kD4LinePosition), d4_restriction_formula(e));
}
