#include "kmx/errors.hpp"
#include "kmx/matrixcheck.hpp"

#include <gtest/gtest.h>

#include <array>

using kmx::Assignment;
using kmx::Letter;
using kmx::RingSpec;

namespace {

using M2 = std::array<std::array<long, 2>, 2>;

M2 mul(const M2& a, const M2& b) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

M2 from(const kmx::Matrix& m) {
  M2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = m.at(i, j).value;
  return out;
}

Letter S(int i, bool inv = false) { return {Letter::Kind::S, i, 0, inv}; }
Letter X(int i, std::int64_t t, bool inv = false) { return {Letter::Kind::X, i, t, inv}; }

}  // namespace

// X(1) S X(1) S^-1 X(1) by hand with S the rotation [[0,1],[-1,0]].
TEST(MatrixCheck, STildeOfOneByHand) {
  const M2 x{{{1, 1}, {0, 1}}}, s{{{0, 1}, {-1, 0}}}, sinv{{{0, -1}, {1, 0}}};
  const M2 hand = mul(mul(mul(mul(x, s), x), sinv), x);
  EXPECT_EQ(hand, (M2{{{0, 1}, {-1, 0}}}));
  const auto z = RingSpec::integers();
  const auto a = kmx::rank1_assignment(z);
  EXPECT_EQ(from(a.eval(kmx::s_tilde(0, z.one()), {0})), hand);
  EXPECT_EQ(from(a.s(0)), hand);
  EXPECT_EQ(from(a.x(0, z.from_int(5))), (M2{{{1, 5}, {0, 1}}}));
}

TEST(MatrixCheck, SSquaredIsCentral) {
  const auto z7 = RingSpec::integers_mod(7);
  const auto a = kmx::rank1_assignment(z7);
  const auto s2 = a.s(0) * a.s(0);
  EXPECT_EQ(s2, [&] {
    kmx::Matrix m(z7, 2);
    m.set(0, 0, z7.from_int(-1));
    m.set(1, 1, z7.from_int(-1));
    return m;
  }());
  for (const auto& t : z7.elements()) EXPECT_EQ(s2 * a.x(0, t), a.x(0, t) * s2);
}

TEST(MatrixCheck, HTildeIsDiagonal) {
  const auto z5 = RingSpec::integers_mod(5);
  const auto a = kmx::rank1_assignment(z5);
  for (const auto& u : z5.units()) {
    const auto h = a.eval(kmx::h_tilde(0, u), {0});
    EXPECT_EQ(h.at(0, 0), u);
    EXPECT_EQ(h.at(1, 1), z5.inv(u));
    EXPECT_EQ(h.at(0, 1), z5.zero());
    EXPECT_EQ(h.at(1, 0), z5.zero());
  }
}

TEST(MatrixCheck, HIdentities) {
  for (const auto& r : {RingSpec::integers(), RingSpec::integers_mod(5), RingSpec::prime_field(7),
                        RingSpec::integers_mod(2), RingSpec::integers_mod(1),
                        RingSpec::parse(KMX_DATA_DIR "/f4.json")}) {
    const auto rep = kmx::h_identities_check(r);
    EXPECT_TRUE(rep.ok()) << r.name();
    EXPECT_GE(rep.checks.size(), 5u);
    if (r.name() == "Z/5")
      for (const auto& c : rep.checks)
        if (c.name == "h(a)h(b)=h(ab)") EXPECT_EQ(c.instances, 16u);
  }
}

TEST(MatrixCheck, JoinedModel) {
  const auto z = RingSpec::integers();
  const auto a = kmx::joined_pair_assignment(z);
  EXPECT_EQ(a.size(), 3);
  const std::vector<int> nodes{0, 1};
  EXPECT_EQ(a.eval({S(0), S(1), S(0)}, nodes), a.eval({S(1), S(0), S(1)}, nodes));
  for (int t = -3; t <= 3; ++t)
    for (int u = -3; u <= 3; ++u) {
      const auto c = a.eval({X(0, t), X(1, u), X(0, t, true), X(1, u, true)}, nodes);
      EXPECT_EQ(std::abs(c.at(0, 2).value), std::abs(t * u));
      for (int i = 0; i < 3; ++i) EXPECT_EQ(c.at(i, i).value, 1);
      EXPECT_EQ(c.at(0, 1).value, 0);
      EXPECT_EQ(c.at(1, 2).value, 0);
      const auto lhs = a.eval({S(0), S(0), X(1, t), S(0, true), S(0, true)}, nodes);
      EXPECT_EQ(lhs, a.eval({X(1, t, true)}, nodes));
    }
  EXPECT_EQ(a.x(0, z.from_int(2)).determinant(), z.one());
  EXPECT_EQ(a.s(1).determinant(), z.one());
}

TEST(MatrixCheck, UnjoinedModel) {
  const auto r = RingSpec::integers_mod(3);
  const auto a = kmx::unjoined_pair_assignment(r);
  EXPECT_EQ(a.size(), 4);
  const std::vector<int> nodes{0, 1};
  EXPECT_EQ(a.eval({S(0), S(1)}, nodes), a.eval({S(1), S(0)}, nodes));
  for (const auto& t : r.elements())
    for (const auto& u : r.elements()) {
      EXPECT_EQ(a.x(0, t) * a.x(1, u), a.x(1, u) * a.x(0, t));
      EXPECT_EQ(a.s(0) * a.x(1, u), a.x(1, u) * a.s(0));
    }
}

TEST(MatrixCheck, AssignmentIsAllPlus) {
  for (const auto& r : {RingSpec::integers(), RingSpec::integers_mod(2), RingSpec::prime_field(5)}) {
    for (const auto& a : {kmx::rank1_assignment(r), kmx::joined_pair_assignment(r), kmx::unjoined_pair_assignment(r)}) {
      EXPECT_EQ(a.x_sign, (std::array<int, 2>{1, 1}));
      EXPECT_EQ(a.s_sign, (std::array<int, 2>{1, 1}));
    }
  }
}

TEST(MatrixCheck, MatrixInverse) {
  const auto z = RingSpec::integers();
  const auto a = kmx::joined_pair_assignment(z);
  const auto m = a.x(0, z.from_int(3)) * a.s(1) * a.x(1, z.from_int(-2));
  EXPECT_EQ(m * m.inverse(), kmx::Matrix::identity(z, 3));
  kmx::Matrix sing(z, 2);
  sing.set(0, 0, z.from_int(2));
  sing.set(1, 1, z.one());
  EXPECT_THROW(sing.inverse(), kmx::DomainError);
}

TEST(MatrixCheck, VerifyAllRings) {
  const auto& e10 = kmx::catalog_lookup("E10");
  for (const auto& r : {RingSpec::integers_mod(2), RingSpec::integers_mod(3), RingSpec::prime_field(5),
                        RingSpec::integers_mod(4), RingSpec::integers_mod(1), RingSpec::integers()}) {
    const auto rep = kmx::verify_all(e10, r);
    EXPECT_TRUE(rep.ok()) << r.name() << " failures " << rep.failures;
    EXPECT_GT(rep.instances, 0u);
    EXPECT_EQ(rep.window.has_value(), r.kind() == RingSpec::Kind::Integers);
    for (const auto& s : rep.schemas) EXPECT_EQ(s.passed, s.instances) << r.name() << " " << s.schema;
  }
}

TEST(MatrixCheck, VerifyAllTableRing) {
  const auto f4 = RingSpec::parse(KMX_DATA_DIR "/f4.json");
  EXPECT_TRUE(kmx::verify_all(kmx::catalog_lookup("rank4-1"), f4).ok());
}

// The convention is load-bearing: with [a,b] = b a b^-1 a^-1 the joined block
// fails wherever -1 != 1.
TEST(MatrixCheck, FlippedConventionFails) {
  kmx::CheckOptions flip;
  flip.convention = kmx::CommutatorConvention::BaBinvAinv;
  for (const auto& r : {RingSpec::integers(), RingSpec::integers_mod(3), RingSpec::prime_field(5)}) {
    const auto rep = kmx::verify_all(kmx::catalog_lookup("E10"), r, flip);
    EXPECT_FALSE(rep.ok()) << r.name();
  }
  // In characteristic 2 the two conventions agree.
  EXPECT_TRUE(kmx::verify_all(kmx::catalog_lookup("E10"), RingSpec::integers_mod(2), flip).ok());
}

TEST(MatrixCheck, ReportJson) {
  const auto rep = kmx::verify_all(kmx::catalog_lookup("rank4-1"), RingSpec::integers_mod(3));
  const auto j = rep.to_json();
  ASSERT_TRUE(j.contains("schemas"));
  for (const auto& s : j["schemas"]) {
    EXPECT_TRUE(s.contains("schema"));
    EXPECT_TRUE(s.contains("instances"));
    EXPECT_TRUE(s.contains("passed"));
    EXPECT_TRUE(s.contains("failed"));
  }
}
