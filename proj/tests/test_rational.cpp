#include <quadfam/rational.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using quadfam::BigInt;
using quadfam::Rational;

TEST(Rational, CanonicalForm) {
  const Rational r(BigInt(6), BigInt(-8));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(Rational(BigInt(0), BigInt(-5)).to_string(), "0");
  EXPECT_EQ(Rational(BigInt(10), BigInt(5)).to_string(), "2");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), quadfam::InvalidInput);
  EXPECT_THROW(Rational(1) / Rational(0), quadfam::InvalidInput);
  EXPECT_THROW(Rational::parse("3/0"), quadfam::InvalidInput);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* text : {"0", "7", "-7", "1/24", "-17/5760", "1295803/122624409600"}) {
    EXPECT_EQ(Rational::parse(text).to_string(), text);
  }
  EXPECT_EQ(Rational::parse("4/6").to_string(), "2/3");
  EXPECT_THROW(Rational::parse("1/2/3"), quadfam::InvalidInput);
  EXPECT_THROW(Rational::parse("abc"), quadfam::InvalidInput);
  EXPECT_THROW(Rational::parse(""), quadfam::InvalidInput);
}

TEST(Rational, Arithmetic) {
  const Rational a = Rational::parse("11/12");
  const Rational b = Rational::parse("1/24");
  EXPECT_EQ(a + Rational(2) * b, Rational(1));
  EXPECT_EQ(a - b, Rational::parse("7/8"));
  EXPECT_EQ(a / b, Rational(22));
  EXPECT_EQ(-a, Rational::parse("-11/12"));
  EXPECT_EQ(abs(-a), a);
  EXPECT_LT(b, a);
  EXPECT_EQ(quadfam::pow(Rational::parse("-1/2"), 3), Rational::parse("-1/8"));
  EXPECT_EQ(quadfam::factorial(10), 3628800);
}

TEST(Rational, ToDoubleMatchesDivisionForSmallOperands) {
  // Both operands are exact doubles, so IEEE division is correctly rounded.
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> num(-(1L << 52), 1L << 52);
  std::uniform_int_distribution<long> den(1, 1L << 52);
  for (int i = 0; i < 20000; ++i) {
    const long p = num(rng);
    const long q = den(rng);
    const Rational r{BigInt(p), BigInt(q)};
    EXPECT_EQ(r.to_double(), static_cast<double>(p) / static_cast<double>(q)) << p << "/" << q;
  }
}

TEST(Rational, ToDoubleHugeOperands) {
  BigInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 500);
  const Rational r(big + 1, big);
  EXPECT_EQ(r.to_double(), 1.0);
  const Rational tiny(BigInt(1), big);
  EXPECT_NEAR(tiny.to_double() / std::pow(3.0, -500), 1.0, 1e-15);
}

TEST(Rational, FromDoubleIsExact) {
  for (double v : {0.1, -2.5, 1e-300, 123456789.125, std::numeric_limits<double>::max()}) {
    EXPECT_EQ(Rational::from_double(v).to_double(), v);
  }
  EXPECT_EQ(Rational::from_double(0.5).to_string(), "1/2");
  EXPECT_THROW(Rational::from_double(std::nan("")), quadfam::InvalidInput);
}

TEST(Rational, DecimalRoundsHalfToEven) {
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("1457/1440"), 12), "1.011805555556");
  EXPECT_EQ(quadfam::to_decimal(Rational(1), 12), "1.000000000000");
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("1/8"), 2), "0.12");
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("3/8"), 2), "0.38");
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("-1/3"), 3), "-0.333");
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("-1/3000"), 2), "0.00");
  EXPECT_EQ(quadfam::to_decimal(Rational::parse("5/2"), 0), "2");
}
