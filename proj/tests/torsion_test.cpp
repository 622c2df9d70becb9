#include <gtest/gtest.h>

#include <boost/integer/common_factor.hpp>
#include <random>

#include "klsep/torsion.hpp"
#include "klsep/worked_examples.hpp"
#include "oracles.hpp"

using namespace klsep;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  return m;
}

BigInt laplace_det(const IntMatrix& m) {
  if (m.rows == 0) return 1;
  if (m.rows == 1) return m(0, 0);
  BigInt total = 0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    IntMatrix minor(m.rows - 1, m.cols - 1);
    for (std::size_t r = 1; r < m.rows; ++r)
      for (std::size_t c = 0, cc = 0; c < m.cols; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const BigInt term = m(0, j) * laplace_det(minor);
    total += (j % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

// gcd of all k x k minors (0 if all vanish).
BigInt determinantal_divisor(const IntMatrix& m, std::size_t k) {
  BigInt g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  auto next = [](std::vector<std::size_t>& idx, std::size_t n) {
    for (std::size_t i = idx.size(); i-- > 0;)
      if (idx[i] < n - idx.size() + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      g = boost::integer::gcd(g, abs(laplace_det(sub)));
    } while (next(cols, m.cols));
  } while (next(rows, m.rows));
  return g;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

MonomialClass random_degree_one(std::mt19937& rng, int k) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  MonomialClass c(k);
  for (int i = 0; i < k; ++i) c.add(std::uint32_t{1} << i, coeff(rng));
  if (c.is_zero()) c.add(1, 1);
  return c;
}

}  // namespace

TEST(MonomialClass, Arithmetic) {
  const auto a = MonomialClass::generator(3, 0), b = MonomialClass::generator(3, 1), c = MonomialClass::generator(3, 2);
  const auto names = default_factor_names(3);
  EXPECT_EQ((a + b + c).to_string(names), "alpha + beta + gamma");
  EXPECT_TRUE((a * a).is_zero());
  EXPECT_EQ((a * b).degree(), 4);
  EXPECT_EQ((a + a * b).degree(), -1);
  EXPECT_EQ(((a + b) * (a + b)).to_string(names), "2 alphabeta");
  EXPECT_EQ(monomial_basis(3, 2), (std::vector<std::uint32_t>{0b011, 0b101, 0b110}));
  EXPECT_EQ(monomial_name(0b101, names), "alphagamma");
}

TEST(MultMatrix, Examples) {
  const auto names = default_factor_names(3);
  const auto abc = MonomialClass::generator(3, 0) + MonomialClass::generator(3, 1) + MonomialClass::generator(3, 2);
  const IntMatrix m = mult_matrix(abc, 2, 3, names);
  EXPECT_EQ(m, (IntMatrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(m.col_labels, (std::vector<std::string>{"alpha", "beta", "gamma"}));
  EXPECT_EQ(m.row_labels, (std::vector<std::string>{"alphabeta", "alphagamma", "betagamma"}));
  EXPECT_EQ(m.to_string(), "[[1, 1, 0], [1, 0, 1], [0, 1, 1]]");

  EXPECT_EQ(mult_matrix(MonomialClass::generator(1, 0), 0, 1), (IntMatrix{{1}}));
  const auto ab = MonomialClass::generator(2, 0) + MonomialClass::generator(2, 1);
  const IntMatrix m2 = mult_matrix(ab, 2, 2);
  EXPECT_EQ(m2, (IntMatrix{{1, 1}}));
  EXPECT_EQ(smith_normal_form(m2).invariants, std::vector<BigInt>{1});

  EXPECT_THROW(mult_matrix(abc, 2, 2), std::invalid_argument);
  EXPECT_THROW(mult_matrix(abc * MonomialClass::generator(3, 0), 2, 3), std::invalid_argument);
  EXPECT_THROW(mult_matrix(abc, 6, 3), std::invalid_argument);
}

TEST(MultMatrix, LinearInTheClass) {
  std::mt19937 rng(5);
  for (int k = 1; k <= 3; ++k)
    for (int d = 0; d < 2 * k; d += 2)
      for (int trial = 0; trial < 10; ++trial) {
        const auto c1 = random_degree_one(rng, k), c2 = random_degree_one(rng, k);
        const int n = std::uniform_int_distribution<int>(-4, 4)(rng);
        const MonomialClass sum = c1 + BigInt(n) * c2;
        if (sum.is_zero()) continue;
        const IntMatrix lhs = mult_matrix(sum, d, k);
        IntMatrix rhs = mult_matrix(c1, d, k);
        const IntMatrix m2 = mult_matrix(c2, d, k);
        for (std::size_t i = 0; i < rhs.data.size(); ++i) rhs.data[i] += n * m2.data[i];
        EXPECT_EQ(lhs, rhs);
      }
}

TEST(Determinant, AgreesWithLaplaceExpansion) {
  std::mt19937 rng(17);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix m = from_rows(oracle::random_matrix(rng, n, n, 5));
      EXPECT_EQ(determinant(m), laplace_det(m));
    }
  EXPECT_EQ(determinant(IntMatrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}), -2);
}

TEST(SmithForm, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(4)).invariants, std::vector<BigInt>(4, 1));
  EXPECT_EQ(torsion_verdict(smith_normal_form(IntMatrix::identity(4)).invariants), "no torsion");
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 2)).invariants, (std::vector<BigInt>{0, 0}));
  const auto snf = smith_normal_form(IntMatrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(snf.invariants, (std::vector<BigInt>{1, 1, 2}));
  EXPECT_EQ(torsion_verdict(snf.invariants), "2-torsion");
  EXPECT_EQ(torsion_verdict({BigInt(1), BigInt(6), BigInt(0)}), "2-torsion, 3-torsion");
  EXPECT_EQ(torsion_primes({BigInt(12), BigInt(45)}), (std::vector<BigInt>{2, 3, 5}));
}

TEST(SmithForm, CertificateAndDeterminantalDivisors) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    const IntMatrix m = from_rows(oracle::random_matrix(rng, r, c, trial % 3 == 0 ? 1 : 6));
    const SmithForm s = smith_normal_form(m);
    ASSERT_EQ(s.u * m * s.v, s.d);
    ASSERT_TRUE(is_diagonal(s.d));
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    ASSERT_EQ(s.invariants.size(), std::min(r, c));
    // d_1 * ... * d_k is the gcd of the k x k minors
    BigInt prod = 1;
    for (std::size_t k = 1; k <= s.invariants.size(); ++k) {
      prod *= s.invariants[k - 1];
      EXPECT_EQ(prod, determinantal_divisor(m, k)) << m.to_string();
      if (k >= 2 && s.invariants[k - 1] != 0) EXPECT_EQ(s.invariants[k - 1] % s.invariants[k - 2], 0);
    }
    if (r == c) EXPECT_EQ(abs(determinant(m)), prod);
  }
}

TEST(EulerClass, FromRestrictions) {
  const std::vector<RootVector> weights{RootVector::simple(3, 0), RootVector::simple(3, 1), RootVector::simple(3, 2)};
  EXPECT_TRUE(euler_class_from_restrictions(3, std::vector<RootVector>(8, RootVector(3)), weights).is_zero());

  std::vector<RootVector> only_first(8, RootVector(3));
  for (std::uint32_t e = 0; e < 8; ++e)
    if (e & 1u) only_first[e] = RootVector::simple(3, 0);
  EXPECT_EQ(euler_class_from_restrictions(3, only_first, weights), MonomialClass::generator(3, 0));

  std::vector<RootVector> bent = only_first;
  bent[7] = bent[7] + RootVector::simple(3, 0);
  EXPECT_THROW(euler_class_from_restrictions(3, bent, weights), InvariantViolation);

  std::vector<RootVector> wrong_direction(8, RootVector(3));
  for (std::uint32_t e = 0; e < 8; ++e)
    if (e & 1u) wrong_direction[e] = RootVector::simple(3, 1);
  EXPECT_THROW(euler_class_from_restrictions(3, wrong_direction, weights), InvariantViolation);
  EXPECT_THROW(euler_class_from_restrictions(3, std::vector<RootVector>(4, RootVector(3)), weights),
               std::invalid_argument);
}

TEST(EulerClass, D4) {
  auto g = build_group(CoxeterSpec::D(4));
  const auto comp = examples::euler_class_d4(g);
  EXPECT_EQ(comp.masks.size(), 8u);
  EXPECT_EQ(comp.euler_class.to_string(default_factor_names(3)), "alpha + beta + gamma");
  const auto snf = smith_normal_form(mult_matrix(comp.euler_class, 2, 3));
  EXPECT_EQ(torsion_verdict(snf.invariants), "2-torsion");
  EXPECT_THROW(examples::euler_class_d4(build_group(CoxeterSpec::D(5))), std::invalid_argument);
}
