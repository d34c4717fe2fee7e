#include "kmx/errors.hpp"
#include "kmx/rational.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using kmx::Rational;
using kmx::RationalMatrix;

namespace {

RationalMatrix mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t(a.size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Random unimodular integer matrix: product of elementary row operations.
RationalMatrix random_unimodular(int n, std::mt19937& g) {
  RationalMatrix p(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) p[i][i] = 1;
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int s = 0; s < 3 * n; ++s) {
    int a = idx(g), b = idx(g);
    if (a == b) continue;
    const int c = coef(g);
    for (int j = 0; j < n; ++j) p[a][j] += c * p[b][j];
  }
  return p;
}

}  // namespace

TEST(Rational, PqStringAlwaysHasDenominator) {
  EXPECT_EQ(kmx::to_pq_string(Rational(3)), "3/1");
  EXPECT_EQ(kmx::to_pq_string(Rational(-1, 2)), "-1/2");
  EXPECT_EQ(kmx::parse_rational("4/6"), Rational(2, 3));
  EXPECT_EQ(kmx::parse_rational("-7"), Rational(-7));
  EXPECT_THROW(kmx::parse_rational("1/0"), kmx::DomainError);
  EXPECT_THROW(kmx::parse_rational("x"), kmx::DomainError);
}

// Sylvester's law: P^T D P has the inertia of D for invertible P.
TEST(Rational, InertiaMatchesCongruentDiagonal) {
  std::mt19937 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    std::uniform_int_distribution<int> sign(-1, 1), mag(1, 5);
    RationalMatrix d(n, std::vector<Rational>(n, 0));
    kmx::Inertia expect;
    for (int i = 0; i < n; ++i) {
      const int s = sign(g);
      d[i][i] = s * mag(g);
      (s > 0 ? expect.pos : s < 0 ? expect.neg : expect.null)++;
    }
    const auto p = random_unimodular(n, g);
    EXPECT_EQ(kmx::inertia(mul(transpose(p), mul(d, p))), expect);
  }
}

TEST(Rational, InertiaNeedsTwoByTwoPivot) {
  // Zero diagonal throughout: [[0,1],[1,0]] has signature (1,1).
  RationalMatrix m{{0, 1}, {1, 0}};
  EXPECT_EQ(kmx::inertia(m), (kmx::Inertia{1, 1, 0}));
  RationalMatrix z{{0, 0}, {0, 0}};
  EXPECT_EQ(kmx::inertia(z), (kmx::Inertia{0, 0, 2}));
}

TEST(Rational, DeterminantMatchesBareiss) {
  std::mt19937 g(5);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    oracle::IntMatrix a(n, std::vector<std::int64_t>(n));
    for (auto& row : a)
      for (auto& x : row) x = v(g);
    EXPECT_EQ(kmx::determinant(kmx::to_rational_matrix(a)), Rational(oracle::bareiss_det(a)));
  }
}

TEST(Rational, SolveAndInverse) {
  RationalMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  const auto x = kmx::solve(a, {1, 0, 0});
  EXPECT_EQ(x, (std::vector<Rational>{Rational(3, 4), Rational(1, 2), Rational(1, 4)}));
  const auto inv = kmx::inverse(a);
  const auto id = mul(a, inv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(id[i][j], Rational(i == j ? 1 : 0));
  RationalMatrix s{{1, 2}, {2, 4}};
  EXPECT_THROW(kmx::solve(s, {1, 1}), kmx::DomainError);
  EXPECT_THROW(kmx::inverse(s), kmx::DomainError);
}
