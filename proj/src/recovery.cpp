// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "compresslaw/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "compresslaw/error.hpp"

namespace compresslaw {

namespace {

void check_sigma(double sigma, MetricKind metric) {
  std::ostringstream os;
  switch (metric) {
    case MetricKind::Accuracy:
      if (std::isfinite(sigma) && sigma > 0.0 && sigma < 1.0) return;
      os << "accuracy recovery threshold must lie in (0, 1), got " << sigma;
      break;
    case MetricKind::Loss:
      if (std::isfinite(sigma) && sigma > 1.0) return;
      os << "loss recovery threshold must lie in (1, inf), got " << sigma;
      break;
    case MetricKind::Runtime:
      os << "recovery analysis is defined for loss or accuracy, not runtime";
      break;
  }
  throw DomainError(os.str());
}

void check_exponent_sign(const char* name, double value, MetricKind metric) {
  const bool ok = metric == MetricKind::Accuracy ? value < 0.0 : value > 0.0;
  if (!ok) {
    std::ostringstream os;
    os << name << " = " << value << " has the wrong sign for "
       << to_string(metric) << " (expected " << name
       << (metric == MetricKind::Accuracy ? " < 0" : " > 0") << ")";
    throw DomainError(os.str());
  }
}

void check_query(const CompressionLaw& law, double sigma, double r) {
  check_sigma(sigma, law.metric());
  if (law.form() != Form::Full) {
    throw InvalidArgument("recovery analysis needs a full-form law");
  }
  check_exponent_sign("beta", law.beta(), law.metric());
  check_exponent_sign("gamma", law.gamma(), law.metric());
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    std::ostringstream os;
    os << "compression ratio r must lie in [0, 1), got " << r;
    throw DomainError(os.str());
  }
}

// log of (1+r)^beta * (1 + 1/(d+eps))^gamma
double log_retention(const CompressionLaw& law, double r, double d) {
  return law.beta() * std::log1p(r) +
         law.gamma() * std::log1p(1.0 / (d + law.epsilon()));
}

bool condition_holds(const CompressionLaw& law, double log_sigma, double r,
                     double d) {
  const double lhs = log_retention(law, r, d);
  return law.metric() == MetricKind::Accuracy ? lhs >= log_sigma
                                              : lhs <= log_sigma;
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::AlwaysRecoverable ? "always_recoverable"
                                             : "conditionally_recoverable";
}

RegimeClassification classify_regime(double beta, double sigma,
                                     MetricKind metric) {
  check_sigma(sigma, metric);
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  check_exponent_sign("beta", beta, metric);
  const double boundary = std::exp2(beta);
  const bool always =
      metric == MetricKind::Accuracy ? sigma < boundary : sigma > boundary;
  return {always ? Regime::AlwaysRecoverable : Regime::ConditionallyRecoverable,
          boundary};
}

double critical_ratio(double beta, double sigma, MetricKind metric) {
  const auto cls = classify_regime(beta, sigma, metric);
  if (cls.regime == Regime::AlwaysRecoverable) {
    std::ostringstream os;
    os << "sigma = " << sigma << " is in the always-recoverable band (boundary 2^beta = "
       << cls.boundary << "); no critical ratio exists";
    throw RegimeError(os.str());
  }
  if (sigma == cls.boundary) return 1.0;
  return std::expm1(std::log(sigma) / beta);
}

double recovery_margin(const CompressionLaw& law, double sigma, double r) {
  check_query(law, sigma, r);
  return std::expm1((std::log(sigma) - law.beta() * std::log1p(r)) / law.gamma());
}

bool recoverable(const CompressionLaw& law, double sigma, double r, double d) {
  check_query(law, sigma, r);
  if (!std::isfinite(d) || d < 0.0) {
    std::ostringstream os;
    os << "RFT dataset size d must be finite and nonnegative, got " << d;
    throw DomainError(os.str());
  }
  return condition_holds(law, std::log(sigma), r, d);
}

std::optional<double> min_rft_size(const RecoveryQuery& q) {
  const double phi = recovery_margin(q.law, q.sigma, q.r);
  if (!(phi > 0.0)) return std::nullopt;
  const double eps = q.law.epsilon();
  const double log_sigma = std::log(q.sigma);
  auto holds = [&](double d) { return condition_holds(q.law, log_sigma, q.r, d); };

  double d = std::max(0.0, 1.0 / phi - eps);
  if (!std::isfinite(d)) {
    throw DomainError("minimum RFT size overflowed");
  }
  if (d == 0.0 && holds(0.0)) return 0.0;

  // The closed form is exact in real arithmetic; snap it onto the boundary
  // of the floating-point predicate so recoverable() agrees at d and below.
  const double inf = std::numeric_limits<double>::infinity();
  double lo = d;
  double hi = d;
  double gap = std::max(d * 0x1p-50, std::numeric_limits<double>::min());
  if (holds(hi)) {
    while (true) {
      lo = std::max(0.0, hi - gap);
      if (!holds(lo)) break;
      if (lo == 0.0) return 0.0;
      hi = lo;
      gap *= 2.0;
    }
  } else {
    while (true) {
      hi = lo + gap;
      if (!std::isfinite(hi)) return std::nullopt;
      if (holds(hi)) break;
      lo = hi;
      gap *= 2.0;
    }
  }
  // Invariant: !holds(lo) && holds(hi).
  while (std::nextafter(lo, inf) < hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

RecoveryAnalysis analyze_recovery(const RecoveryQuery& q) {
  check_query(q.law, q.sigma, q.r);
  const auto cls = classify_regime(q.law.beta(), q.sigma, q.law.metric());
  RecoveryAnalysis out{cls.regime, cls.boundary, std::nullopt, min_rft_size(q)};
  if (cls.regime == Regime::ConditionallyRecoverable) {
    out.r_critical = critical_ratio(q.law.beta(), q.sigma, q.law.metric());
  }
  return out;
}

}  // namespace compresslaw
