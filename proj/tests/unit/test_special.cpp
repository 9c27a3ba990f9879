#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dpa/rational.hpp"
#include "dpa/special.hpp"

using namespace dpa;

TEST(FallingFactorial, SmallExamples) {
  EXPECT_EQ(falling_factorial(5.0, 0), 1.0);
  EXPECT_EQ(falling_factorial(5.0, 3), 60.0);
  EXPECT_DOUBLE_EQ(falling_factorial(2.5, 2), 3.75);
}

TEST(FallingFactorial, HitsZeroForIntegerA) {
  EXPECT_EQ(falling_factorial(3.0, 4), 0.0);
  EXPECT_EQ(falling_factorial(3.0, 100), 0.0);
  EXPECT_EQ(log_falling_factorial(3.0, 4).sign, 0);
}

TEST(FallingFactorial, LogFormMatchesProductAcrossSwitch) {
  for (double a : {70.5, 100.25, 130.0, 200.75}) {
    for (std::int64_t k : {10, 40, 64, 65, 66, 70}) {
      double direct = 1.0;
      for (std::int64_t t = 0; t < k; ++t) direct *= a - static_cast<double>(t);
      const double via_log = log_falling_factorial(a, k).value();
      EXPECT_NEAR(via_log / direct, 1.0, 1e-11) << "a=" << a << " k=" << k;
      EXPECT_NEAR(falling_factorial(a, k) / direct, 1.0, 1e-11);
    }
  }
}

TEST(FallingFactorial, SignTracking) {
  // 2.5 * 1.5 * 0.5 * -0.5 * -1.5 = 1.40625
  const auto l = log_falling_factorial(2.5, 5);
  EXPECT_EQ(l.sign, 1);
  EXPECT_NEAR(l.value(), 1.40625, 1e-13);
  // 2.5 * 1.5 * 0.5 * -0.5 = -0.9375
  EXPECT_NEAR(log_falling_factorial(2.5, 4).value(), -0.9375, 1e-13);
  // -1.5 * -2.5 * -3.5 = -13.125
  EXPECT_NEAR(log_falling_factorial(-1.5, 3).value(), -13.125, 1e-12);
  EXPECT_NEAR(falling_factorial(-1.5, 3), -13.125, 1e-12);
}

TEST(LogBinomial, MatchesExactIntegers) {
  for (unsigned long n = 0; n <= 60; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      const double exact = binomial_z(n, k).get_d();
      EXPECT_NEAR(std::exp(log_binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k))) /
                      exact,
                  1.0, 1e-12);
    }
  EXPECT_TRUE(std::isinf(log_binomial(3, 4)));
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
  EXPECT_EQ(s.count(), 4);
  EXPECT_EQ(s.abs_total(), 2e100 + 2.0);
}

TEST(CompensatedSum, ManySmallTerms) {
  CompensatedSum s;
  for (int k = 0; k < 10'000'000; ++k) s.add(0.1);
  EXPECT_NEAR(s.value(), 1e6, 1e-8);
}

TEST(Rationalize, ShortestDecimal) {
  EXPECT_EQ(rationalize_decimal(0.3), mpq_class(3, 10));
  EXPECT_EQ(rationalize_decimal(-1.25), mpq_class(-5, 4));
  EXPECT_EQ(rationalize_decimal(1e-3), mpq_class(1, 1000));
  EXPECT_EQ(rationalize_decimal(2.5e10), mpq_class(25000000000));
  EXPECT_EQ(rationalize_decimal(0.0), mpq_class(0));
  EXPECT_THROW(rationalize_decimal(NAN), Error);
}

TEST(Rationalize, CorrectRounding) {
  const mpq_class third(1, 3);
  EXPECT_EQ(to_double(third), 1.0 / 3.0);
  const mpq_class tenth(1, 10);
  EXPECT_EQ(to_double(tenth), 0.1);
  const mpq_class neg(-2, 7);
  EXPECT_EQ(to_double(neg), -2.0 / 7.0);
}

TEST(ScaledFallingFactorial, MatchesExactAndExtendsRange) {
  for (std::int64_t k : {0, 1, 5, 20}) {
    const auto v = scaled_falling_factorial(30.5, k);
    EXPECT_NEAR(std::ldexp(v.mant, static_cast<int>(v.exp)) / falling_factorial(30.5, k), 1.0, 1e-14);
  }
  // 1000! overflows a double; its log does not
  const auto big = scaled_falling_factorial(1000.0, 1000);
  EXPECT_NEAR(big.log(), std::lgamma(1001.0), 1e-9);
  EXPECT_EQ(scaled_ratio(big, big), 1.0);
  EXPECT_EQ(scaled_falling_factorial(3.0, 5).mant, 0.0);
}
