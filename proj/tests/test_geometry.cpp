#include "kmx/errors.hpp"
#include "kmx/geometry.hpp"
#include "kmx/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using kmx::LatticeVector;
using kmx::Rational;
using kmx::RationalVector;

namespace {

const kmx::Diagram& e10() { return kmx::catalog_lookup("E10"); }
RationalVector rv(const LatticeVector& v) { return RationalVector(v); }

Rational form(const std::vector<Rational>& x, const std::vector<Rational>& y, const kmx::GramMatrix& g) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  return s;
}

/// Rational nullspace of the rows (Gaussian elimination, free-variable basis).
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, int n) {
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < n && row < static_cast<int>(a.size()); ++c) {
    int p = row;
    while (p < static_cast<int>(a.size()) && a[p][c] == 0) ++p;
    if (p == static_cast<int>(a.size())) continue;
    std::swap(a[p], a[row]);
    const Rational lead = a[row][c];
    for (auto& x : a[row]) x /= lead;
    for (int r = 0; r < static_cast<int>(a.size()); ++r)
      if (r != row && a[r][c] != 0) {
        const Rational f = a[r][c];
        for (int k = 0; k < n; ++k) a[r][k] -= f * a[row][k];
      }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < n; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<Rational> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

/// Test-side Gram-model route: q is the projection of beta to span(alpha,
/// alpha')^perp via Cramer's rule, p the projection to alpha^perp, and the
/// value is (p.q)^2 / (p.p q.q).
Rational gram_model_cosh2(int k, int m) {
  const kmx::GramMatrix g{{2, 1, k}, {1, 2, m}, {k, m, 2}};
  const std::vector<Rational> a{1, 0, 0}, ap{0, 1, 0}, b{0, 0, 1};
  std::vector<Rational> p(3);
  for (int i = 0; i < 3; ++i) p[i] = b[i] - Rational(k, 2) * a[i];
  // Solve [[2,1],[1,2]] (c1,c2) = (k, m).
  const Rational c1 = Rational(2 * k - m, 3), c2 = Rational(2 * m - k, 3);
  std::vector<Rational> q(3);
  for (int i = 0; i < 3; ++i) q[i] = b[i] - c1 * a[i] - c2 * ap[i];
  const Rational pq = form(p, q, g);
  return pq * pq / (form(p, p, g) * form(q, q, g));
}

bool signature_21(int k, int m) {
  const kmx::RationalMatrix g{{2, 1, k}, {1, 2, m}, {k, m, 2}};
  return kmx::inertia(g) == kmx::Inertia{2, 1, 0};
}

}  // namespace

TEST(Geometry, ProjectOrthogonal) {
  const auto& d = e10();
  const LatticeVector a = LatticeVector::simple(10, 3), b = LatticeVector::simple(10, 4) + LatticeVector::simple(10, 5);
  const auto p = kmx::project_orthogonal(rv(b), {a}, d.gcm());
  const Rational c = Rational(kmx::inner(b, a, d), 2);
  EXPECT_EQ(p, rv(b) - c * rv(a));
  const LatticeVector far = LatticeVector::simple(10, 7);
  EXPECT_EQ(kmx::project_orthogonal(rv(far), {a}, d.gcm()), rv(far));
  EXPECT_THROW(kmx::project_orthogonal(rv(b), {a, a}, d.gcm()), kmx::DomainError);

  std::mt19937 g(8);
  std::uniform_int_distribution<int> c5(-5, 5), idx(0, 9);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::int64_t> v(10);
    for (auto& x : v) x = c5(g);
    int i = idx(g), j = idx(g);
    if (i == j) continue;
    const std::vector<LatticeVector> span{LatticeVector::simple(10, i), LatticeVector::simple(10, j)};
    const auto r = kmx::project_orthogonal(rv(LatticeVector(v)), span, d.gcm());
    for (const auto& s : span) EXPECT_EQ(kmx::inner(r, s, d), 0);
  }
}

TEST(Geometry, PointDistance) {
  const auto& d = e10();
  const kmx::RootLattice lat(d);
  const auto& rho = lat.rho_star();
  EXPECT_EQ(kmx::cosh2_point_distance(rho, rho, d.gcm()).value, 1);
  EXPECT_EQ(kmx::cosh2_point_distance(rho, Rational(2) * rho, d.gcm()).value, 1);
  EXPECT_THROW(kmx::cosh2_point_distance(rho, rv(LatticeVector::simple(10, 0)), d.gcm()), kmx::DomainError);
  EXPECT_THROW(kmx::cosh2_point_distance(rho, -rho, d.gcm()), kmx::DomainError);
  // Random timelike points (positive weight combinations) are at cosh^2 >= 1.
  std::mt19937 g(12);
  std::uniform_int_distribution<int> c(1, 6);
  for (int t = 0; t < 100; ++t) {
    RationalVector x = Rational(0) * rho, y = x;
    for (int i = 0; i < 10; ++i) {
      x += Rational(c(g)) * lat.weights()[i];
      y += Rational(c(g)) * lat.weights()[i];
    }
    EXPECT_GE(kmx::cosh2_point_distance(x, y, d.gcm()).value, 1);
  }
}

TEST(Geometry, PointToSubspaceTrivialCase) {
  const auto& d = e10();
  const kmx::RootLattice lat(d);
  const std::vector<LatticeVector> span{LatticeVector::simple(10, 2), LatticeVector::simple(10, 9)};
  const RationalVector x = kmx::project_orthogonal(lat.rho_star(), span, d.gcm());
  EXPECT_EQ(kmx::cosh2_point_to_subspace(x, span, d.gcm()).value, 1);
}

// The exact value agrees with a numeric minimum over the subspace.
TEST(Geometry, PointToSubspaceMatchesSampling) {
  for (const char* name : {"rank4-1", "rank4-2", "rank4-3"}) {
    const auto& d = kmx::catalog_lookup(name);
    const kmx::RootLattice lat(d);
    for (auto [i, j] : d.edges()) {
      RationalVector q = Rational(0) * lat.rho_star();
      for (int n : d.neighbors(i)) q += lat.weights()[n];
      const std::vector<LatticeVector> span{LatticeVector::simple(4, i), LatticeVector::simple(4, j)};
      const double exact = kmx::to_double(kmx::cosh2_point_to_subspace(q, span, d.gcm()).value);
      std::vector<std::vector<Rational>> rows(2, std::vector<Rational>(4));
      for (int c = 0; c < 4; ++c) {
        rows[0][c] = d.gcm()[i][c];
        rows[1][c] = d.gcm()[j][c];
      }
      const auto basis = nullspace(rows, 4);
      ASSERT_EQ(basis.size(), 2u);
      auto dbl = [](const std::vector<Rational>& v) {
        std::vector<double> r;
        for (const auto& x : v) r.push_back(kmx::to_double(x));
        return r;
      };
      const auto u = dbl(basis[0]), w = dbl(basis[1]), qd = dbl(q.coords);
      auto ip = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) s += x[a] * d.gcm()[a][b] * y[b];
        return s;
      };
      double best = 1e300;
      const int steps = 200000;
      for (int s = 0; s < steps; ++s) {
        const double th = M_PI * s / steps;
        std::vector<double> y(4);
        for (int a = 0; a < 4; ++a) y[a] = std::cos(th) * u[a] + std::sin(th) * w[a];
        const double yy = ip(y, y);
        if (yy >= 0) continue;
        const double xy = ip(qd, y);
        best = std::min(best, xy * xy / (ip(qd, qd) * yy));
      }
      EXPECT_NEAR(best, exact, 1e-6) << name << " facet " << i << " neighbour " << j;
      EXPECT_GE(best, exact - 1e-9);
    }
  }
}

TEST(Geometry, FacetBoundSmallDiagrams) {
  EXPECT_EQ(kmx::facet_bound(), Rational(4, 3));
  EXPECT_NEAR(std::acosh(std::sqrt(4.0 / 3.0)), 0.549, 1e-3);
  for (const char* name : {"rank4-1", "rank4-2", "rank4-3", "rank5-1", "rank5-2", "E10"}) {
    const auto rep = kmx::facet_check(kmx::catalog_lookup(name));
    EXPECT_LE(rep.global_maximum, Rational(4, 3)) << name;
    int eq = 0;
    for (const auto& e : rep.entries) {
      EXPECT_LE(e.cosh2, Rational(4, 3));
      EXPECT_EQ(e.attains_bound, e.cosh2 == Rational(4, 3));
      EXPECT_TRUE(kmx::catalog_lookup(name).joined(e.facet, e.neighbor));
      eq += e.attains_bound;
    }
    EXPECT_EQ(eq, rep.equality_count);
    EXPECT_EQ(rep.entries.size(), 2 * kmx::catalog_lookup(name).edges().size());
  }
  EXPECT_EQ(kmx::facet_check(kmx::catalog_lookup("rank4-1")).equality_count, 12);
}

TEST(Geometry, PqClosedForm) {
  EXPECT_EQ(kmx::pq_cosh2(3, 0), Rational(8, 5));
  EXPECT_THROW(kmx::pq_cosh2(2, 0), kmx::DomainError);
  EXPECT_THROW(kmx::pq_cosh2(3, 1), kmx::DomainError);
  const Rational far = kmx::pq_cosh2(200, 0);
  EXPECT_GT(far, Rational(4, 3));
  EXPECT_LT(far - Rational(4, 3), Rational(1, 100));
}

TEST(Geometry, PqAgreesWithGramModel) {
  int checked = 0;
  for (int k = 3; k <= 12; ++k)
    for (int m = -6; m <= 0; ++m) {
      if (!signature_21(k, m)) continue;
      const Rational v = kmx::pq_cosh2(k, m);
      EXPECT_EQ(v, gram_model_cosh2(k, m)) << k << "," << m;
      EXPECT_EQ(v, kmx::pq_cosh2_by_projection(k, m)) << k << "," << m;
      ++checked;
    }
  EXPECT_GT(checked, 0);
}

TEST(Geometry, PqMonotone) {
  for (int k = 3; k <= 12; ++k)
    for (int m = -6; m < 0; ++m)
      if (signature_21(k, m) && signature_21(k, m + 1)) EXPECT_LE(kmx::pq_cosh2(k, m + 1), kmx::pq_cosh2(k, m));
  for (int k = 3; k < 60; ++k) {
    EXPECT_LT(kmx::pq_cosh2(k + 1, 0), kmx::pq_cosh2(k, 0));
    EXPECT_GT(kmx::pq_cosh2(k, 0), Rational(4, 3));
  }
}
