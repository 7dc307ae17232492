// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Recovery feasibility for a compression law.
//
// Recovery is measured against l0^alpha, not l0: a compressed model with RFT
// size d recovers to threshold sigma when
//   accuracy:  (1+r)^beta * (1 + 1/(d+eps))^gamma >= sigma,  sigma in (0, 1)
//   loss:      (1+r)^beta * (1 + 1/(d+eps))^gamma <= sigma,  sigma in (1, inf)
// In both cases this is equivalent to 1/(d+eps) <= phi(r) with
//   phi(r) = [sigma * (1+r)^(-beta)]^(1/gamma) - 1.
// The regime split sits at sigma = 2^beta; beyond it the critical ratio
// sigma^(1/beta) - 1 bounds the recoverable compression ratios.

#pragma once

#include <optional>

#include "compresslaw/law.hpp"

namespace compresslaw {

enum class Regime { AlwaysRecoverable, ConditionallyRecoverable };

std::string_view to_string(Regime regime) noexcept;

struct RegimeClassification {
  Regime regime;
  double boundary;  ///< 2^beta
};

/// Accuracy: AlwaysRecoverable iff sigma < 2^beta. Loss: iff sigma > 2^beta.
/// sigma == 2^beta is ConditionallyRecoverable (with r_critical = 1).
/// Throws DomainError when sigma is outside (0,1) / (1,inf) or beta has the
/// wrong sign for the metric.
RegimeClassification classify_regime(double beta, double sigma, MetricKind metric);

/// sigma^(1/beta) - 1. Throws RegimeError inside the always-recoverable band.
double critical_ratio(double beta, double sigma, MetricKind metric);

/// phi(r) from the header comment; positive iff some finite d recovers.
double recovery_margin(const CompressionLaw& law, double sigma, double r);

struct RecoveryQuery {
  CompressionLaw law;
  double sigma;
  double r;
};

struct RecoveryAnalysis {
  Regime regime;
  double boundary;                  ///< 2^beta
  std::optional<double> r_critical; ///< absent when AlwaysRecoverable
  std::optional<double> min_d;      ///< absent means unrecoverable
};

/// Smallest d satisfying the recovery condition, or nullopt when no d does.
/// The returned value is the exact real boundary as judged by recoverable():
/// recoverable(d_min) holds and recoverable(next value below d_min) does not.
std::optional<double> min_rft_size(const RecoveryQuery& query);

/// Direct evaluation of the recovery condition at (r, d).
bool recoverable(const CompressionLaw& law, double sigma, double r, double d);

/// Regime, critical ratio and minimum RFT size in one call.
RecoveryAnalysis analyze_recovery(const RecoveryQuery& query);

}  // namespace compresslaw
