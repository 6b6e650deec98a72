#include "gainlab/bigmath.hpp"

#include <gtest/gtest.h>

#include <random>

namespace gainlab {
namespace {

Natural random_below(std::mt19937_64& rng, const Natural& bound) {
  Integer v = 0;
  for (int i = 0; i < 3; ++i) v = (v << 64) + Integer(rng());
  return Natural::from_integer(v % bound.value());
}

Natural pow10(unsigned e) { return ipow(Natural(10), e); }

Real abs_diff(const Real& a, const Real& b) { return mp::abs(Real(a - b)); }

TEST(Gcd3, Examples) {
  EXPECT_EQ(gcd3(77175, 2944, 121), Natural(1));
  EXPECT_EQ(gcd3(0, 0, 5), Natural(5));
  EXPECT_EQ(gcd3(12, 18, 30), Natural(6));
  EXPECT_EQ(gcd3(0, 0, 0), Natural(0));
}

TEST(Gcd3, DividesEachArgumentAndIgnoresOrder) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Natural common(rng() % 1000 + 1);
    const Natural a = common * Natural(rng() % 100000);
    const Natural b = common * Natural(rng() % 100000);
    const Natural c = common * Natural(rng() % 100000);
    const Natural g = gcd3(a, b, c);
    if (!g.is_zero()) {
      EXPECT_TRUE((a % g).is_zero());
      EXPECT_TRUE((b % g).is_zero());
      EXPECT_TRUE((c % g).is_zero());
    }
    EXPECT_EQ(g, gcd3(b, c, a));
    EXPECT_EQ(g, gcd3(c, a, b));
    EXPECT_EQ(g, gcd3(a, c, b));
  }
}

TEST(Ipow, Examples) {
  EXPECT_EQ(ipow(23, 5), Natural(6436343));
  EXPECT_EQ(Natural(109) * ipow(9, 5) + Natural(2), ipow(23, 5));
  EXPECT_EQ(ipow(7, 1), Natural(7));
  EXPECT_EQ(ipow(128, 3), Natural(2097152));
  EXPECT_EQ(ipow(0, 3), Natural(0));
  EXPECT_EQ(ipow(5, 0), Natural(1));
}

TEST(Ipow, ZeroToTheZeroIsRejected) { EXPECT_THROW(ipow(0, 0), undefined_input); }

TEST(Ipow, NoTruncationBeyond64Bits) {
  EXPECT_EQ(ipow(2, 100).str(), "1267650600228229401496703205376");
  EXPECT_EQ(ipow(2, 100).bit_length(), 101u);
}

TEST(NthRootFloor, Examples) {
  EXPECT_EQ(nth_root_floor(8, 3), Natural(2));
  EXPECT_EQ(nth_root_floor(6436343, 5), Natural(23));
  EXPECT_EQ(nth_root_floor(80, 4), Natural(2));
  EXPECT_EQ(nth_root_floor(0, 7), Natural(0));
  EXPECT_EQ(nth_root_floor(1, 7), Natural(1));
  EXPECT_EQ(nth_root_floor(12345, 1), Natural(12345));
  EXPECT_THROW(nth_root_floor(10, 0), undefined_input);
}

TEST(NthRootFloor, AroundPerfectPowers) {
  for (std::uint64_t n = 2; n <= 12; ++n) {
    for (std::uint64_t r = 2; r < 200; r += 7) {
      const Natural p = ipow(r, n);
      EXPECT_EQ(nth_root_floor(p, n), Natural(r));
      EXPECT_EQ(nth_root_floor(*checked_sub(p, 1), n), Natural(r - 1));
      EXPECT_EQ(nth_root_floor(p + Natural(1), n), Natural(r));
    }
  }
}

TEST(NthRootFloor, ExactFloorPropertyOnRandomInputs) {
  std::mt19937_64 rng(2024);
  const Natural bound = pow10(40) + Natural(1);
  for (int i = 0; i < 2000; ++i) {
    const Natural v = random_below(rng, bound);
    const std::uint64_t n = rng() % 64 + 1;
    const Natural r = nth_root_floor(v, n);
    ASSERT_LE(ipow(r, n), v) << v << " n=" << n;
    ASSERT_GT(ipow(r + Natural(1), n), v) << v << " n=" << n;
  }
}

TEST(LnBig, Examples) {
  EXPECT_EQ(ln_big(1).value, Real(0));
  EXPECT_NEAR(ln_big(53130).value.convert_to<double>(), 10.8805, 5e-5);
  // Reference values from an independent 70-digit evaluation.
  EXPECT_LT(abs_diff(ln_big(84).value, Real("4.4308167988433136153")), Real("1e-18"));
  EXPECT_LT(abs_diff(ln_big(ipow(2, 1000)).value, Real("693.1471805599453094172321214581765680755")),
            Real("1e-36"));
  EXPECT_LT(abs_diff(ln_big(pow10(100) + Natural(7)).value, Real("230.2585092994045684017991454684364207601")),
            Real("1e-36"));
  EXPECT_GE(ln_big(84).precision_digits, 50);
}

TEST(LnBig, ZeroIsRejected) { EXPECT_THROW(ln_big(0), undefined_input); }

TEST(LnBig, ProductIsSumOfLogs) {
  std::mt19937_64 rng(99);
  const Natural bound = pow10(30) + Natural(1);
  const Real tol("1e-45");
  for (int i = 0; i < 2000; ++i) {
    const Natural a = random_below(rng, bound) + Natural(1);
    const Natural b = random_below(rng, bound) + Natural(1);
    const Real lhs = ln_big(a * b).value;
    const Real rhs = ln_big(a).value + ln_big(b).value;
    const Real scale = mp::abs(lhs) > 1 ? Real(mp::abs(lhs)) : Real(1);
    ASSERT_LE(abs_diff(lhs, rhs), tol * scale) << a << " * " << b;
  }
}

TEST(LnBig, Monotone) {
  std::mt19937_64 rng(5);
  const Natural bound = pow10(60);
  for (int i = 0; i < 1000; ++i) {
    const Natural a = random_below(rng, bound) + Natural(1);
    const Natural b = a + Natural(rng() % 3 + 1);
    ASSERT_LT(ln_big(a).value, ln_big(b).value);
  }
  // Values far beyond 64 bits that differ in the 41st digit still order correctly.
  const Natural big = ipow(3, 400);
  EXPECT_LT(ln_big(big).value, ln_big(big + ipow(2, 500)).value);
}

TEST(FormatSignificant, RoundsHalfToEven) {
  EXPECT_EQ(format_significant(Real("1.5"), 1), "2");
  EXPECT_EQ(format_significant(Real("2.5"), 1), "2");
  EXPECT_EQ(format_significant(Real("0.125"), 2), "0.12");
  EXPECT_EQ(format_significant(Real("0.375"), 2), "0.38");
}

TEST(FormatSignificant, Layouts) {
  EXPECT_EQ(format_significant(Real(3), 6), "3.00000");
  EXPECT_EQ(format_significant(Real("0.5"), 6), "0.500000");
  EXPECT_EQ(format_significant(Real(53130), 6), "53130.0");
  EXPECT_EQ(format_significant(Real("1.6299116841"), 6), "1.62991");
  EXPECT_EQ(format_significant(Real("0.0005"), 1), "0.0005");
  EXPECT_EQ(format_significant(Real("-2.25"), 2), "-2.2");
  EXPECT_EQ(format_significant(Real(0), 3), "0.00");
  EXPECT_EQ(format_significant(Real("1e-9"), 2), "1.0e-9");
}

TEST(Natural, ParseAndChecks) {
  EXPECT_EQ(Natural::parse("2477678547239"), Natural(2477678547239ULL));
  EXPECT_THROW(Natural::parse("-3"), undefined_input);
  EXPECT_THROW(Natural::parse(""), undefined_input);
  EXPECT_THROW(Natural::parse("12a"), undefined_input);
  EXPECT_THROW(Natural::from_integer(Integer(-1)), undefined_input);
  EXPECT_FALSE(checked_sub(Natural(3), Natural(4)).has_value());
  EXPECT_EQ(*checked_sub(Natural(4), Natural(4)), Natural(0));
  EXPECT_THROW(Natural(4) / Natural(0), undefined_input);
}

}  // namespace
}  // namespace gainlab
