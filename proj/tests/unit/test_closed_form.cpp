#include <gtest/gtest.h>

#include <random>

#include "dpa/absorption.hpp"
#include "dpa/closed_form.hpp"
#include "oracles.hpp"

using namespace dpa;

namespace {

const ModelParams kSym = ModelParams::dpa(0.3, 0.4, 1.0, 1.0);

// Plain double sum in exact rationals, no reduction of either index.
mpq_class brute_alternating(const mpq_class& x, const mpq_class& a, const mpq_class& b, int n,
                            int m) {
  mpq_class s = 0;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= m; ++l) {
      mpq_class t = mpq_class(binomial_z(n, k) * binomial_z(m, l)) / (x + a * k + b * l);
      if ((k + l) % 2) s -= t;
      else s += t;
    }
  return s;
}

}  // namespace

TEST(ClosedForm, Origin) { EXPECT_EQ(joint_closedform(0, 0, rate_constants(kSym), kSym), 0.0); }

TEST(ClosedForm, SingleTermValue) {
  EXPECT_NEAR(joint_closedform(0, 1, rate_constants(kSym), kSym), 0.5 / (0.4375 + 0.875 + 1.0),
              1e-16);
}

TEST(ClosedForm, InnerSumReduction) {
  const mpq_class x(37, 10), b(7, 16);
  for (int m = 0; m <= 25; ++m) {
    mpq_class lhs = 0, prod = 1, fact = 1;
    for (int l = 0; l <= m; ++l) {
      const mpq_class t = mpq_class(binomial_z(m, l)) / (x + b * l);
      if (l % 2) lhs -= t;
      else lhs += t;
      prod *= x + b * l;
      if (l > 0) fact *= b * l;
    }
    EXPECT_EQ(lhs, fact / prod) << "m=" << m;
  }
}

TEST(ClosedForm, ExactMatchesUnreducedDoubleSum) {
  // p_{i,0} and p_{0,j} only involve one start state; compare the whole value
  // against the unreduced double sum times the same prefactor.
  const ClosedFormEvaluator ev(kSym);
  const mpq_class c(7, 16), half(1, 2);
  for (int i = 1; i <= 8; ++i) {
    const mpq_class x = c * 2 + c + 1;  // c(delta_in+1) + c delta_out + 1
    mpq_class pre = half;
    for (int t = 1; t < i; ++t) pre *= mpq_class(1 + t) / t;  // delta = 1, r = 1
    EXPECT_EQ(ev.exact(i, 0), pre * brute_alternating(x, c, c, i - 1, 0));
  }
  const mpq_class x01 = c + c * 2 + 1;
  for (int j = 1; j <= 8; ++j) {
    mpq_class pre = half;
    for (int t = 1; t < j; ++t) pre *= mpq_class(1 + t) / t;
    EXPECT_EQ(ev.exact(0, j), pre * brute_alternating(x01, c, c, 0, j - 1));
  }
}

TEST(ClosedForm, MatchesDpOnSmallDegrees) {
  std::mt19937_64 rng(29);
  std::vector<ModelParams> sets{kSym};
  for (int k = 0; k < 4; ++k)
    sets.push_back(ModelParams::dpa(oracle::rounded_uniform(rng, 0.05, 0.45),
                                    oracle::rounded_uniform(rng, 0.0, 0.5),
                                    oracle::rounded_uniform(rng, 0.1, 3.0),
                                    oracle::rounded_uniform(rng, 0.1, 3.0)));
  for (const auto& p : sets) {
    const ClosedFormEvaluator ev(p);
    const auto dp = dp_absorption(p, 40, 40);
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; i + j <= 40; ++j) ASSERT_NEAR(ev(i, j), dp.at(i, j), 1e-9) << i << "," << j;
  }
}

TEST(ClosedForm, FloatingPathAgreesWithExact) {
  const ClosedFormEvaluator exact(kSym);
  const ClosedFormEvaluator floating(kSym, {.exact_threshold = -1});
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; i + j <= 30; ++j) {
      if (i + j == 0) continue;
      const double e = exact(i, j);
      EXPECT_NEAR(floating(i, j), e, 1e-9 * e + 1e-18) << i << "," << j;
    }
}

TEST(ClosedForm, FloatingPathAboveThreshold) {
  const ClosedFormEvaluator ev(kSym);
  const auto dp = dp_absorption(kSym, 80, 80);
  for (auto [i, j] : {std::pair{61, 0}, {0, 61}, {40, 25}, {10, 60}, {3, 70}}) {
    const double v = ev(i, j);
    EXPECT_NEAR(v / dp.at(i, j), 1.0, 1e-6) << i << "," << j;
  }
}

TEST(ClosedForm, ReportsInstability) {
  const ClosedFormEvaluator ev(kSym, {.exact_threshold = -1, .max_relative_error = 1e-300});
  try {
    ev(30, 30);
    FAIL() << "expected NumericallyUnstable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericallyUnstable);
  }
}

TEST(ClosedForm, RejectsGdpa) {
  const auto g = ModelParams::gdpa(0.3, 0.4, 1, 1, 0, 0, 0);
  EXPECT_THROW(ClosedFormEvaluator{g}, Error);
  const ClosedFormEvaluator ev(kSym);
  EXPECT_THROW(ev(-1, 2), Error);
}
