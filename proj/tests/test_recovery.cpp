// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "compresslaw/error.hpp"
#include "compresslaw/recovery.hpp"
#include "oracles.hpp"

using namespace compresslaw;

namespace {

const CompressionLaw kAcc(1.0, -1.18, -0.14, MetricKind::Accuracy);

RecoveryQuery query(const CompressionLaw& law, double sigma, double r) {
  return RecoveryQuery{law, sigma, r};
}

}  // namespace

TEST(CriticalRatio, WorkedExample) {
  EXPECT_NEAR(critical_ratio(-1.18, 0.8, MetricKind::Accuracy), 0.2081674464332484, 1e-12);
  EXPECT_NEAR(critical_ratio(-1.18, 0.8, MetricKind::Accuracy), 0.208, 1e-3);
}

TEST(CriticalRatio, BoundaryIsExactlyOne) {
  EXPECT_EQ(critical_ratio(-1.18, std::exp2(-1.18), MetricKind::Accuracy), 1.0);
  EXPECT_EQ(critical_ratio(2.0, 4.0, MetricKind::Loss), 1.0);
}

TEST(CriticalRatio, RootOfMargin) {
  EXPECT_NEAR(critical_ratio(-0.5, 0.9, MetricKind::Accuracy), 0.2345679012345679, 1e-12);
  const CompressionLaw law(1.0, -0.5, -0.3, MetricKind::Accuracy);
  EXPECT_NEAR(recovery_margin(law, 0.9, 0.2345679012345679), 0.0, 1e-12);
}

TEST(CriticalRatio, Errors) {
  EXPECT_THROW(critical_ratio(-1.18, 0.4, MetricKind::Accuracy), RegimeError);
  EXPECT_THROW(critical_ratio(2.0, 5.0, MetricKind::Loss), RegimeError);
  EXPECT_THROW(critical_ratio(1.18, 0.8, MetricKind::Accuracy), DomainError);
  EXPECT_THROW(critical_ratio(-1.18, 1.2, MetricKind::Accuracy), DomainError);
  EXPECT_THROW(critical_ratio(2.0, 0.5, MetricKind::Loss), DomainError);
}

TEST(CriticalRatio, TightThresholdLimit) {
  EXPECT_LT(critical_ratio(-1.18, 1.0 - 1e-9, MetricKind::Accuracy), 1e-8);
  EXPECT_GT(critical_ratio(-1.18, 1.0 - 1e-9, MetricKind::Accuracy), 0.0);
}

TEST(ClassifyRegime, Examples) {
  const auto a = classify_regime(-1.18, 0.4, MetricKind::Accuracy);
  EXPECT_EQ(a.regime, Regime::AlwaysRecoverable);
  EXPECT_NEAR(a.boundary, 0.441, 1e-3);
  EXPECT_EQ(classify_regime(-1.18, 0.8, MetricKind::Accuracy).regime,
            Regime::ConditionallyRecoverable);
  EXPECT_EQ(classify_regime(2.0, 5.0, MetricKind::Loss).regime, Regime::AlwaysRecoverable);
  EXPECT_EQ(classify_regime(2.0, 3.0, MetricKind::Loss).regime,
            Regime::ConditionallyRecoverable);
  EXPECT_EQ(classify_regime(-1.18, std::exp2(-1.18), MetricKind::Accuracy).regime,
            Regime::ConditionallyRecoverable);
  EXPECT_THROW(classify_regime(-1.0, 0.5, MetricKind::Runtime), DomainError);
  EXPECT_THROW(classify_regime(-1.0, 0.0, MetricKind::Accuracy), DomainError);
  EXPECT_THROW(classify_regime(1.0, 1.0, MetricKind::Loss), DomainError);
}

TEST(MinRftSize, WorkedExamples) {
  const auto d = min_rft_size(query(kAcc, 0.8, 0.19));
  ASSERT_TRUE(d.has_value());
  EXPECT_NEAR(*d, 6.341208518, 1e-6);
  const auto scan = oracle::scan_min_d(-1.18, -0.14, 0.8, 0.19, true);
  ASSERT_TRUE(scan.has_value());
  EXPECT_NEAR(*scan, *d, 1e-3 + 1e-9);

  EXPECT_FALSE(min_rft_size(query(kAcc, 0.8, 0.25)).has_value());

  const auto zero = min_rft_size(query(kAcc, 0.9, 0.0));
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ(*zero, 0.0);
  EXPECT_NEAR(recovery_margin(kAcc, 0.9, 0.0), 1.122458553579359, 1e-12);
}

TEST(MinRftSize, RejectsInvalidQueries) {
  EXPECT_THROW(min_rft_size(query(kAcc, 1.5, 0.1)), DomainError);
  EXPECT_THROW(min_rft_size(query(kAcc, 0.8, 1.0)), DomainError);
  const CompressionLaw bad(1.0, 0.3, -0.1, MetricKind::Accuracy);
  EXPECT_THROW(min_rft_size(query(bad, 0.8, 0.1)), DomainError);
  EXPECT_THROW(min_rft_size(query(CompressionLaw::ratio_only(1.0, -1.0, MetricKind::Accuracy), 0.8, 0.1)),
               InvalidArgument);
}

TEST(Recoverable, Examples) {
  EXPECT_TRUE(recoverable(kAcc, 0.8, 0.19, 10.0));
  EXPECT_FALSE(recoverable(kAcc, 0.8, 0.19, 0.0));
  EXPECT_TRUE(recoverable(kAcc, 1e-300, 0.99, 0.0));
}

TEST(AnalyzeRecovery, CarriesRegimeAndThreshold) {
  const auto a = analyze_recovery(query(kAcc, 0.8, 0.19));
  EXPECT_EQ(a.regime, Regime::ConditionallyRecoverable);
  ASSERT_TRUE(a.r_critical.has_value());
  EXPECT_NEAR(*a.r_critical, 0.2081674464, 1e-9);
  ASSERT_TRUE(a.min_d.has_value());
  const auto always = analyze_recovery(query(kAcc, 0.3, 0.9));
  EXPECT_EQ(always.regime, Regime::AlwaysRecoverable);
  EXPECT_FALSE(always.r_critical.has_value());
  EXPECT_TRUE(always.min_d.has_value());
}

// ---- properties -------------------------------------------------------------

class RecoveryProperties : public ::testing::TestWithParam<MetricKind> {
 protected:
  std::mt19937_64 rng{GetParam() == MetricKind::Accuracy ? 101u : 202u};
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  bool accuracy() const { return GetParam() == MetricKind::Accuracy; }
  double exponent() { return accuracy() ? -uniform(1e-3, 3.0) : uniform(1e-3, 3.0); }
  double sigma() { return accuracy() ? uniform(1e-3, 1.0 - 1e-3) : uniform(1.0 + 1e-3, 10.0); }
};

TEST_P(RecoveryProperties, ClosedFormMatchesBoundary) {
  for (int i = 0; i < 200; ++i) {
    const double b = exponent(), g = exponent(), s = sigma(), r = uniform(0.0, 1.0);
    const CompressionLaw law(1.0, b, g, GetParam());
    const auto d = min_rft_size(query(law, s, r));
    if (!d) {
      EXPECT_FALSE(recoverable(law, s, r, 1e12));
      continue;
    }
    EXPECT_TRUE(recoverable(law, s, r, *d));
    if (*d > 0.0) {
      EXPECT_FALSE(recoverable(law, s, r, *d - std::min(*d, 0.01)));
      EXPECT_FALSE(recoverable(law, s, r, std::nextafter(*d, 0.0)));
    }
    if (*d < 99.0) {
      const auto scan = oracle::scan_min_d(b, g, s, r, accuracy());
      ASSERT_TRUE(scan.has_value());
      EXPECT_GE(*scan + 1e-9, *d);
      EXPECT_LE(*scan, *d + 1e-3 + 1e-9);
    }
  }
}

TEST_P(RecoveryProperties, RegimeDichotomy) {
  for (int i = 0; i < 200; ++i) {
    const double b = exponent(), g = exponent(), s = sigma();
    const CompressionLaw law(1.0, b, g, GetParam());
    const auto cls = classify_regime(b, s, GetParam());
    if (cls.regime == Regime::AlwaysRecoverable) {
      for (double r : {1e-6, 0.25, 0.5, 0.75, 0.999}) {
        EXPECT_TRUE(min_rft_size(query(law, s, r)).has_value());
      }
    } else {
      const double rc = critical_ratio(b, s, GetParam());
      const double r = uniform(0.0, 1.0);
      EXPECT_EQ(min_rft_size(query(law, s, r)).has_value(), r < rc)
          << "beta=" << b << " sigma=" << s << " r=" << r << " rc=" << rc;
    }
  }
}

TEST_P(RecoveryProperties, MarginDecreasesWithRatio) {
  for (int i = 0; i < 50; ++i) {
    const CompressionLaw law(1.0, exponent(), exponent(), GetParam());
    const double s = sigma();
    double prev = recovery_margin(law, s, 0.0);
    for (int k = 1; k < 50; ++k) {
      const double cur = recovery_margin(law, s, 0.99 * k / 49.0);
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST_P(RecoveryProperties, LenientThresholdNeverNeedsMoreData) {
  for (int i = 0; i < 100; ++i) {
    const CompressionLaw law(1.0, exponent(), exponent(), GetParam());
    const double r = uniform(0.0, 1.0);
    double s1 = sigma(), s2 = sigma();
    // s1 is the more lenient threshold.
    if (accuracy() ? s1 > s2 : s1 < s2) std::swap(s1, s2);
    const auto d1 = min_rft_size(query(law, s1, r));
    const auto d2 = min_rft_size(query(law, s2, r));
    if (d2) {
      ASSERT_TRUE(d1.has_value());
      EXPECT_LE(*d1, *d2);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Metrics, RecoveryProperties,
                         ::testing::Values(MetricKind::Accuracy, MetricKind::Loss),
                         [](const auto& info) { return std::string(to_string(info.param)); });
