#include "kmx/errors.hpp"
#include "kmx/ring.hpp"

#include <gtest/gtest.h>

#include <fstream>

using kmx::RingSpec;

namespace {
std::vector<RingSpec> finite_rings() {
  return {RingSpec::integers_mod(1), RingSpec::integers_mod(2), RingSpec::integers_mod(4),
          RingSpec::integers_mod(6), RingSpec::prime_field(5), RingSpec::prime_field(7),
          RingSpec::parse(KMX_DATA_DIR "/f4.json")};
}
}  // namespace

TEST(Ring, Arithmetic) {
  const auto z = RingSpec::integers();
  EXPECT_EQ((z.from_int(2) + z.from_int(3)).value, 5);
  const auto z5 = RingSpec::integers_mod(5);
  EXPECT_EQ((z5.from_int(3) * z5.from_int(4)).value, 2);
  EXPECT_EQ(z5.from_int(-1).value, 4);
  EXPECT_THROW(z.from_int(1) + z5.from_int(1), kmx::DomainError);
}

TEST(Ring, Units) {
  const auto z = RingSpec::integers();
  const auto zu = z.units();
  ASSERT_EQ(zu.size(), 2u);
  EXPECT_EQ(zu[0].value, 1);
  EXPECT_EQ(zu[1].value, -1);
  std::vector<std::int64_t> u5;
  for (const auto& u : RingSpec::integers_mod(5).units()) u5.push_back(u.value);
  EXPECT_EQ(u5, (std::vector<std::int64_t>{1, 2, 3, 4}));
  const auto z1 = RingSpec::integers_mod(1);
  ASSERT_EQ(z1.units().size(), 1u);
  EXPECT_EQ(z1.zero(), z1.one());
}

TEST(Ring, Inverses) {
  const auto z = RingSpec::integers();
  EXPECT_EQ(z.inv(z.from_int(-1)).value, -1);
  EXPECT_THROW(z.inv(z.from_int(2)), kmx::DomainError);
  const auto z5 = RingSpec::integers_mod(5);
  EXPECT_EQ(z5.inv(z5.from_int(2)).value, 3);
  const auto z4 = RingSpec::integers_mod(4);
  EXPECT_EQ(z4.inv(z4.from_int(3)).value, 3);
  EXPECT_THROW(z4.inv(z4.from_int(2)), kmx::DomainError);
}

TEST(Ring, AxiomsExhaustive) {
  for (const auto& r : finite_rings()) {
    const auto el = r.elements();
    ASSERT_EQ(static_cast<std::int64_t>(el.size()), r.size()) << r.name();
    for (const auto& a : el) {
      EXPECT_EQ(a + r.zero(), a);
      EXPECT_EQ(a * r.one(), a);
      EXPECT_EQ(a + (-a), r.zero());
      for (const auto& b : el) {
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        for (const auto& c : el) {
          EXPECT_EQ((a + b) + c, a + (b + c));
          EXPECT_EQ((a * b) * c, a * (b * c));
          EXPECT_EQ(a * (b + c), a * b + a * c);
        }
      }
    }
  }
}

TEST(Ring, AxiomsIntegerWindow) {
  const auto z = RingSpec::integers();
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c) {
        const auto x = z.from_int(a), y = z.from_int(b), w = z.from_int(c);
        EXPECT_EQ(x * (y + w), x * y + x * w);
        EXPECT_EQ((x * y) * w, x * (y * w));
      }
}

// units() is exactly the set of elements with a multiplicative inverse.
TEST(Ring, UnitsMatchScan) {
  for (const auto& r : finite_rings()) {
    std::vector<std::int64_t> scan, got;
    for (const auto& a : r.elements()) {
      bool inv = false;
      for (const auto& b : r.elements()) inv |= a * b == r.one();
      if (inv) scan.push_back(a.value);
      EXPECT_EQ(r.is_unit(a), inv);
      if (inv) EXPECT_EQ(a * r.inv(a), r.one());
    }
    for (const auto& u : r.units()) got.push_back(u.value);
    EXPECT_EQ(got, scan) << r.name();
  }
}

TEST(Ring, TableRingF4) {
  const auto f4 = RingSpec::parse(KMX_DATA_DIR "/f4.json");
  EXPECT_EQ(f4.name(), "F4");
  EXPECT_EQ(f4.size(), 4);
  const auto w = f4.parse_element("w");
  EXPECT_EQ(f4.format(w * w), "w+1");
  EXPECT_EQ(f4.format(w + f4.one()), "w+1");
  EXPECT_EQ(f4.units().size(), 3u);
}

TEST(Ring, TableValidation) {
  // Z/4 addition with a non-distributive multiplication.
  std::vector<std::vector<int>> add{{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
  std::vector<std::vector<int>> bad{{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 2, 0}, {0, 3, 0, 3}};
  EXPECT_THROW(RingSpec::table("bad", {"0", "1", "2", "3"}, add, bad, 0, 1), kmx::DomainError);
  std::vector<std::vector<int>> mul{{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 0, 2}, {0, 3, 2, 1}};
  EXPECT_NO_THROW(RingSpec::table("z4", {"0", "1", "2", "3"}, add, mul, 0, 1));
}

TEST(Ring, Parse) {
  EXPECT_EQ(RingSpec::parse("Z").kind(), RingSpec::Kind::Integers);
  EXPECT_EQ(RingSpec::parse("Z/7").modulus(), 7);
  EXPECT_EQ(RingSpec::parse("F5").name(), "F5");
  EXPECT_THROW(RingSpec::parse("F4"), kmx::DomainError);
  EXPECT_THROW(RingSpec::prime_field(9), kmx::DomainError);
  EXPECT_THROW(RingSpec::parse("Z/0"), kmx::DomainError);
  EXPECT_THROW(RingSpec::parse("Q"), kmx::DomainError);
  EXPECT_TRUE(kmx::is_prime(97));
  EXPECT_FALSE(kmx::is_prime(91));
}
