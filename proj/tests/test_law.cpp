// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "compresslaw/error.hpp"
#include "compresslaw/law.hpp"
#include "oracles.hpp"

using namespace compresslaw;

// Expected values below were computed with mpmath at 40 digits.

TEST(Evaluate, IntrinsicPooledLaw) {
  const CompressionLaw law(0.63, 1.72, 1.16, MetricKind::Loss);
  EXPECT_NEAR(evaluate(law, 2.0, 0.5, 0.0), 6.945774153276351, 1e-3);
  EXPECT_NEAR(evaluate(law, 2.0, 0.5, 0.0), oracle::law(0.63, 1.72, 1.16, 1, 2, 0.5, 0), 1e-12);
}

TEST(Evaluate, IdentityExponentsEchoL0) {
  const CompressionLaw law(1.0, 0.0, 0.0, MetricKind::Loss);
  EXPECT_NEAR(evaluate(law, 3.7, 0.4, 1000.0), 3.7, 1e-12);
}

TEST(Evaluate, LargeDataAndNoCompressionCollapseToL0Alpha) {
  const CompressionLaw law(0.98, -1.03, -0.14, MetricKind::Accuracy);
  EXPECT_NEAR(evaluate(law, 0.6, 0.0, 1e12), 0.6061613275331988, 1e-9);
  EXPECT_NEAR(evaluate(law, 0.6, 0.0, 1e12), 0.6063, 1e-3);
}

TEST(Evaluate, RejectsOutOfDomainInputs) {
  const CompressionLaw law(0.98, -1.03, -0.14, MetricKind::Accuracy);
  EXPECT_THROW(evaluate(law, 0.0, 0.1, 0.0), DomainError);
  EXPECT_THROW(evaluate(law, -1.0, 0.1, 0.0), DomainError);
  EXPECT_THROW(evaluate(law, 0.5, 1.0, 0.0), DomainError);
  EXPECT_THROW(evaluate(law, 0.5, -0.01, 0.0), DomainError);
  EXPECT_THROW(evaluate(law, 0.5, 0.1, -1.0), DomainError);
  EXPECT_THROW(evaluate(law, std::nan(""), 0.1, 0.0), DomainError);
  EXPECT_THROW(evaluate(law, 0.5, 0.1, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Construction, EnforcesInvariants) {
  EXPECT_THROW(CompressionLaw(1, 1, 1, MetricKind::Loss, 0.0), InvalidArgument);
  EXPECT_THROW(CompressionLaw(1, 1, 1, MetricKind::Loss, -1.0), InvalidArgument);
  EXPECT_THROW(CompressionLaw(std::nan(""), 1, 1, MetricKind::Loss), InvalidArgument);
  EXPECT_THROW(CompressionLaw(1, 1, 1, MetricKind::Loss, 1.0, Form::RatioOnly), InvalidArgument);
  EXPECT_THROW(CompressionLaw(1, 1, 1, MetricKind::Loss, 1.0, Form::Runtime), InvalidArgument);
  EXPECT_THROW(RuntimeLaw(0.0, -0.67), InvalidArgument);
  EXPECT_THROW(RuntimeLaw(1.0, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST(AblationR, TabulatedLaws) {
  EXPECT_NEAR(evaluate_ablation_r(0.74, 2.02, 2.0, 0.3), 2.837447067019679, 1e-3);
  EXPECT_NEAR(evaluate_ablation_r(1.0, 0.0, 5.0, 0.9), 5.0, 1e-12);
  EXPECT_NEAR(evaluate_ablation_r(1.01, -1.05, 0.55, 0.5), 0.3571663160934208, 1e-3);
  EXPECT_THROW(evaluate_ablation_r(1.0, 0.0, 5.0, 1.5), DomainError);
}

TEST(AblationD, TabulatedLaws) {
  EXPECT_NEAR(evaluate_ablation_d(1.30, 1.46, 1.0, 2.0, 0.0), 6.773962498900216, 1e-3);
  EXPECT_NEAR(evaluate_ablation_d(1.0, 0.0, 1.0, 7.0, 42.0), 7.0, 1e-12);
  EXPECT_NEAR(evaluate_ablation_d(1.73, -0.22, 1.0, 0.6, 3.0), 0.3934426715099344, 1e-3);
  EXPECT_THROW(evaluate_ablation_d(1.0, 0.0, 1.0, 7.0, -2.0), DomainError);
}

TEST(Runtime, GlobalExponent) {
  const RuntimeLaw law(100.0, -0.67);
  EXPECT_NEAR(evaluate_runtime(law, 0.5), 76.21120991023569, 0.05);
  EXPECT_DOUBLE_EQ(evaluate_runtime(law, 0.0), 100.0);
  EXPECT_NEAR(evaluate_runtime(law, 0.9), 65.04817064370277, 0.05);
  EXPECT_THROW(evaluate_runtime(law, 1.0), DomainError);
  EXPECT_THROW(evaluate_runtime(law, -0.1), DomainError);
}

TEST(Feasibility, SignRules) {
  EXPECT_TRUE(check_feasibility(CompressionLaw(0.98, -1.03, -0.14, MetricKind::Accuracy)).empty());
  EXPECT_TRUE(check_feasibility(CompressionLaw(0.63, 1.72, 1.16, MetricKind::Loss)).empty());

  const auto v = check_feasibility(CompressionLaw(1.0, 0.5, -0.1, MetricKind::Accuracy));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].exponent, "beta");
  EXPECT_EQ(v[0].expected, "< 0");

  const auto both = check_feasibility(CompressionLaw(1.0, -0.5, 0.0, MetricKind::Loss));
  EXPECT_EQ(both.size(), 2u);
}

TEST(Feasibility, AblationsOnlyCheckPresentExponents) {
  EXPECT_TRUE(check_feasibility(CompressionLaw::ratio_only(0.74, 2.02, MetricKind::Loss)).empty());
  EXPECT_TRUE(check_feasibility(CompressionLaw::data_only(1.73, -0.22, MetricKind::Accuracy)).empty());
  EXPECT_EQ(check_feasibility(RuntimeLaw(1.0, 0.2)).size(), 1u);
  EXPECT_TRUE(check_feasibility(RuntimeLaw(1.0, -0.67)).empty());
}

TEST(Names, RoundTrip) {
  for (auto m : {MetricKind::Loss, MetricKind::Accuracy, MetricKind::Runtime}) {
    EXPECT_EQ(parse_metric(to_string(m)), m);
  }
  for (auto f : {Form::Full, Form::RatioOnly, Form::DataOnly, Form::Runtime}) {
    EXPECT_EQ(parse_form(to_string(f)), f);
  }
  EXPECT_THROW(parse_metric("perplexity"), InvalidArgument);
}

// ---- properties -------------------------------------------------------------

class LawProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260416};
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

TEST_F(LawProperties, Homogeneity) {
  for (int i = 0; i < 500; ++i) {
    const CompressionLaw law(uniform(-2, 2), uniform(-3, 3), uniform(-3, 3), MetricKind::Loss);
    const double x = uniform(0.1, 5), k = uniform(0.01, 50);
    const double r = uniform(0, 0.99), d = uniform(0, 1e5);
    const double lhs = evaluate(law, k * x, r, d);
    const double rhs = std::pow(k, law.alpha()) * evaluate(law, x, r, d);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-9);
  }
}

TEST_F(LawProperties, ConvergesToL0AlphaWithoutCompressionAndLargeData) {
  for (int i = 0; i < 200; ++i) {
    const CompressionLaw law(uniform(-2, 2), uniform(-3, 3), uniform(-3, 3), MetricKind::Loss);
    const double l0 = uniform(0.1, 5);
    EXPECT_NEAR(evaluate(law, l0, 0.0, 1e12) / std::pow(l0, law.alpha()), 1.0, 1e-6);
  }
}

TEST_F(LawProperties, MonotoneUnderFeasibleSigns) {
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = uniform(-3, -0.01), gamma = uniform(-3, -0.01);
    const CompressionLaw acc(uniform(0.3, 1.5), beta, gamma, MetricKind::Accuracy);
    const CompressionLaw loss(uniform(0.3, 1.5), -beta, -gamma, MetricKind::Loss);
    const double l0 = uniform(0.2, 4);
    for (int i = 0; i + 1 < 50; ++i) {
      const double r0 = 0.98 * i / 49.0, r1 = 0.98 * (i + 1) / 49.0;
      const double d0 = 10.0 * i, d1 = 10.0 * (i + 1);
      EXPECT_GT(evaluate(acc, l0, r0, 5.0), evaluate(acc, l0, r1, 5.0));
      EXPECT_LT(evaluate(acc, l0, 0.3, d0), evaluate(acc, l0, 0.3, d1));
      EXPECT_LT(evaluate(loss, l0, r0, 5.0), evaluate(loss, l0, r1, 5.0));
      EXPECT_GT(evaluate(loss, l0, 0.3, d0), evaluate(loss, l0, 0.3, d1));
    }
  }
}

TEST_F(LawProperties, RatioAblationIsFullLawWithZeroGamma) {
  for (int i = 0; i < 300; ++i) {
    const double a = uniform(-2, 2), b = uniform(-3, 3);
    const double l0 = uniform(0.1, 5), r = uniform(0, 0.99), d = uniform(0, 1e4);
    EXPECT_EQ(evaluate_ablation_r(a, b, l0, r),
              evaluate(CompressionLaw(a, b, 0.0, MetricKind::Loss), l0, r, d));
  }
}

TEST_F(LawProperties, AgreesWithPowerFormOracle) {
  for (int i = 0; i < 300; ++i) {
    const double a = uniform(-2, 2), b = uniform(-3, 3), g = uniform(-3, 3), eps = uniform(0.1, 3);
    const double l0 = uniform(0.1, 5), r = uniform(0, 0.99), d = uniform(0, 1e4);
    const double got = evaluate(CompressionLaw(a, b, g, MetricKind::Loss, eps), l0, r, d);
    EXPECT_NEAR(got / oracle::law(a, b, g, eps, l0, r, d), 1.0, 1e-12);
  }
}
