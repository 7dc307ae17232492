// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Compression-law value types and their pure evaluation.
//
//   L(l0, r, d) = l0^alpha * (1 + r)^beta * (1 + 1/(d + epsilon))^gamma
//
// Evaluation goes through the same log-space features that the regression
// module uses to build its design matrix, so a fitted law reproduces its own
// fitted values exactly.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace compresslaw {

enum class MetricKind { Loss, Accuracy, Runtime };

/// Parametric shape of a law. Full is the three-factor law; RatioOnly and
/// DataOnly are the ablations that drop the data and ratio factors. Runtime
/// is only meaningful for fitting and selects S = C * (1 + r)^beta.
enum class Form { Full, RatioOnly, DataOnly, Runtime };

std::string_view to_string(MetricKind metric) noexcept;
std::string_view to_string(Form form) noexcept;
MetricKind parse_metric(std::string_view text);
Form parse_form(std::string_view text);

/// Goodness-of-fit summary attached to a fitted law.
struct FitStatistics {
  std::size_t n = 0;  ///< samples
  std::size_t p = 0;  ///< regressors, intercept included when present
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;  ///< +inf for an exact fit
  double residual_std = 0.0;
  double condition_number = 1.0;

  bool operator==(const FitStatistics&) const = default;
};

/// Fitted or tabulated compression law. Immutable once built; the
/// constructor enforces finite exponents and epsilon > 0.
class CompressionLaw {
 public:
  CompressionLaw(double alpha, double beta, double gamma,
                 MetricKind metric, double epsilon = 1.0,
                 Form form = Form::Full);

  static CompressionLaw ratio_only(double alpha, double beta, MetricKind metric);
  static CompressionLaw data_only(double alpha, double gamma, MetricKind metric,
                                  double epsilon = 1.0);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double epsilon() const noexcept { return epsilon_; }
  MetricKind metric() const noexcept { return metric_; }
  Form form() const noexcept { return form_; }
  const std::optional<FitStatistics>& stats() const noexcept { return stats_; }

  CompressionLaw with_stats(FitStatistics stats) const;

  bool operator==(const CompressionLaw&) const = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double epsilon_;
  MetricKind metric_;
  Form form_;
  std::optional<FitStatistics> stats_;
};

/// Inference-runtime law S = c * (1 + r)^beta.
class RuntimeLaw {
 public:
  RuntimeLaw(double c, double beta);

  double c() const noexcept { return c_; }
  double beta() const noexcept { return beta_; }
  const std::optional<FitStatistics>& stats() const noexcept { return stats_; }

  RuntimeLaw with_stats(FitStatistics stats) const;

  bool operator==(const RuntimeLaw&) const = default;

 private:
  double c_;
  double beta_;
  std::optional<FitStatistics> stats_;
};

/// Log-space regressors of one observation.
struct LogFeatures {
  double log_l0;
  double log_ratio;  ///< log(1 + r)
  double log_data;   ///< log(1 + 1/(d + epsilon))
};

/// Validates (l0, r, d) and returns their log-space features.
/// Throws DomainError on l0 <= 0, r outside [0, 1), d < 0 or non-finite input.
LogFeatures log_features(double l0, double r, double d, double epsilon = 1.0);

double evaluate(const CompressionLaw& law, double l0, double r, double d);

/// l0^alpha * (1 + r)^beta.
double evaluate_ablation_r(double alpha, double beta, double l0, double r);

/// l0^alpha * (1 + 1/(d + epsilon))^gamma.
double evaluate_ablation_d(double alpha, double gamma, double epsilon,
                           double l0, double d);

double evaluate_runtime(const RuntimeLaw& law, double r);

struct SignViolation {
  std::string exponent;  ///< "beta" or "gamma"
  double value;
  std::string expected;  ///< "< 0" or "> 0"

  std::string message() const;
};

/// Sign conditions that make a law move the right way with r and d.
/// An empty report means feasible. Exponents absent from the law's form are
/// not checked.
std::vector<SignViolation> check_feasibility(const CompressionLaw& law);

/// Runtime must not grow with compression: flags beta >= 0.
std::vector<SignViolation> check_feasibility(const RuntimeLaw& law);

}  // namespace compresslaw
