#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dstoch/rational.hpp"

using dstoch::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r{6, -8};
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, -5), Rational{});
  EXPECT_EQ(Rational(0, 7).den(), 1);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(1, 5), Rational(-1, 5));
  EXPECT_EQ(pow(Rational(2, 3), 0), Rational{1});
  EXPECT_EQ(pow(Rational(2, 3), 5), Rational(32, 243));
  EXPECT_EQ(abs(Rational(-7, 3)), Rational(7, 3));
  // 1/18 summed 18 times
  Rational s;
  for (int k = 0; k < 18; ++k) s += Rational(1, 18);
  EXPECT_EQ(s, Rational{1});
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(std::max(Rational(3, 7), Rational(2, 5)), Rational(3, 7));
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(Rational::parse("3/12"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-5"), Rational(-5));
  EXPECT_EQ(Rational(1, 4).str(), "1/4");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("a/2"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, OverflowIsDetected) {
  const Rational big{std::numeric_limits<std::int64_t>::max() / 2 + 1};
  EXPECT_THROW(big + big, std::overflow_error);
  const Rational p{1, 1'000'000'007};
  const Rational q{1, 998'244'353};
  const Rational pq = p * q;  // fits: ~1e18
  EXPECT_EQ(pq.num(), 1);
  EXPECT_THROW(pq * Rational(1, 1'000'003), std::overflow_error);
}

TEST(Rational, ToDouble) {
  EXPECT_DOUBLE_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(Rational(-9, 4).to_double(), -2.25);
}
