// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Log-space ordinary least squares for compression laws.
//
// Taking logs of the law gives
//   log l = alpha*log l0 + beta*log(1+r) + gamma*log(1 + 1/(d+eps)) + noise
// which is linear in the exponents and has no intercept. The runtime form
// log S = log C + beta*log(1+r) carries an intercept column.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "compresslaw/law.hpp"

namespace compresslaw {

/// One measured observation: base performance l0, compression ratio r,
/// RFT dataset size d (0 = no RFT) and observed compressed performance l.
struct ExperimentRecord {
  std::string model_id;
  MetricKind metric = MetricKind::Loss;
  double l0 = 1.0;
  double r = 0.0;
  double d = 0.0;
  double l = 1.0;

  bool operator==(const ExperimentRecord&) const = default;
};

/// Throws DomainError naming the offending field when the record violates
/// l0 > 0, l > 0, 0 <= r < 1, d >= 0 or finiteness.
void validate(const ExperimentRecord& record);

struct Design {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> columns;
  bool has_intercept = false;
};

std::size_t regressor_count(Form form) noexcept;

Design build_design(std::span<const ExperimentRecord> records, double epsilon,
                    Form form);

struct OlsResult {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  FitStatistics stats;
};

/// Largest tolerated 2-norm condition number of the design.
inline constexpr double kMaxConditionNumber = 1e8;

/// Column-pivoted Householder QR least squares. R-squared is uncentered when
/// the design has no intercept. Throws SingularDesignError, naming the
/// near-collinear columns, when cond(X) exceeds kMaxConditionNumber.
OlsResult ols_fit(const Design& design);

/// Convenience overload for a bare matrix; columns are named x0, x1, ...
OlsResult ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  bool has_intercept = false);

using AnyLaw = std::variant<CompressionLaw, RuntimeLaw>;

struct FitReport {
  Form form = Form::Full;
  AnyLaw law;
  FitStatistics stats;
  std::vector<std::string> warnings;
  std::vector<double> residuals;  ///< log-space, in record order
  std::string d_unit;             ///< metadata only

  bool operator==(const FitReport&) const = default;
};

/// build_design + ols_fit. Returns a RuntimeLaw (c = exp(intercept)) for
/// Form::Runtime, a CompressionLaw otherwise. Sign violations become warnings.
FitReport fit_law(std::span<const ExperimentRecord> records,
                  double epsilon = 1.0, Form form = Form::Full);

}  // namespace compresslaw
