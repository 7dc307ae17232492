// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "compresslaw/law.hpp"

#include <cmath>
#include <sstream>

#include "compresslaw/error.hpp"

namespace compresslaw {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

void check_ratio(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    std::ostringstream os;
    os << "compression ratio r must lie in [0, 1), got " << r;
    throw DomainError(os.str());
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::SingularDesign: return "singular_design";
    case ErrorCode::Regime: return "regime";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

std::string_view to_string(MetricKind metric) noexcept {
  switch (metric) {
    case MetricKind::Loss: return "loss";
    case MetricKind::Accuracy: return "accuracy";
    case MetricKind::Runtime: return "runtime";
  }
  return "unknown";
}

std::string_view to_string(Form form) noexcept {
  switch (form) {
    case Form::Full: return "full";
    case Form::RatioOnly: return "ratio";
    case Form::DataOnly: return "data";
    case Form::Runtime: return "runtime";
  }
  return "unknown";
}

MetricKind parse_metric(std::string_view text) {
  if (text == "loss") return MetricKind::Loss;
  if (text == "accuracy") return MetricKind::Accuracy;
  if (text == "runtime") return MetricKind::Runtime;
  throw InvalidArgument("unknown metric '" + std::string(text) +
                        "' (expected loss, accuracy or runtime)");
}

Form parse_form(std::string_view text) {
  if (text == "full") return Form::Full;
  if (text == "ratio") return Form::RatioOnly;
  if (text == "data") return Form::DataOnly;
  if (text == "runtime") return Form::Runtime;
  throw InvalidArgument("unknown form '" + std::string(text) +
                        "' (expected full, ratio, data or runtime)");
}

CompressionLaw::CompressionLaw(double alpha, double beta, double gamma,
                               MetricKind metric, double epsilon, Form form)
    : alpha_(alpha),
      beta_(beta),
      gamma_(gamma),
      epsilon_(epsilon),
      metric_(metric),
      form_(form) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(gamma, "gamma");
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw InvalidArgument("epsilon must be a finite positive number");
  }
  if (form == Form::Runtime) {
    throw InvalidArgument("a compression law cannot have the runtime form");
  }
  if (form == Form::RatioOnly && gamma != 0.0) {
    throw InvalidArgument("ratio-only law must have gamma = 0");
  }
  if (form == Form::DataOnly && beta != 0.0) {
    throw InvalidArgument("data-only law must have beta = 0");
  }
}

CompressionLaw CompressionLaw::ratio_only(double alpha, double beta,
                                          MetricKind metric) {
  return CompressionLaw(alpha, beta, 0.0, metric, 1.0, Form::RatioOnly);
}

CompressionLaw CompressionLaw::data_only(double alpha, double gamma,
                                         MetricKind metric, double epsilon) {
  return CompressionLaw(alpha, 0.0, gamma, metric, epsilon, Form::DataOnly);
}

CompressionLaw CompressionLaw::with_stats(FitStatistics stats) const {
  CompressionLaw copy = *this;
  copy.stats_ = stats;
  return copy;
}

RuntimeLaw::RuntimeLaw(double c, double beta) : c_(c), beta_(beta) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw InvalidArgument("runtime constant c must be finite and positive");
  }
  require_finite(beta, "beta");
}

RuntimeLaw RuntimeLaw::with_stats(FitStatistics stats) const {
  RuntimeLaw copy = *this;
  copy.stats_ = stats;
  return copy;
}

LogFeatures log_features(double l0, double r, double d, double epsilon) {
  if (!std::isfinite(l0) || l0 <= 0.0) {
    std::ostringstream os;
    os << "base performance l0 must be finite and positive, got " << l0;
    throw DomainError(os.str());
  }
  check_ratio(r);
  if (!std::isfinite(d) || d < 0.0) {
    std::ostringstream os;
    os << "RFT dataset size d must be finite and nonnegative, got " << d;
    throw DomainError(os.str());
  }
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw DomainError("epsilon must be finite and positive");
  }
  return {std::log(l0), std::log1p(r), std::log1p(1.0 / (d + epsilon))};
}

namespace {

double evaluate_log_linear(double alpha, double beta, double gamma,
                           const LogFeatures& f) {
  const double value = std::exp(alpha * f.log_l0 + beta * f.log_ratio +
                                gamma * f.log_data);
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("law evaluation overflowed or underflowed");
  }
  return value;
}

}  // namespace

double evaluate(const CompressionLaw& law, double l0, double r, double d) {
  return evaluate_log_linear(law.alpha(), law.beta(), law.gamma(),
                             log_features(l0, r, d, law.epsilon()));
}

double evaluate_ablation_r(double alpha, double beta, double l0, double r) {
  return evaluate(CompressionLaw::ratio_only(alpha, beta, MetricKind::Loss), l0,
                  r, 0.0);
}

double evaluate_ablation_d(double alpha, double gamma, double epsilon,
                           double l0, double d) {
  return evaluate(
      CompressionLaw::data_only(alpha, gamma, MetricKind::Loss, epsilon), l0,
      0.0, d);
}

double evaluate_runtime(const RuntimeLaw& law, double r) {
  check_ratio(r);
  const double value = law.c() * std::exp(law.beta() * std::log1p(r));
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("runtime evaluation overflowed or underflowed");
  }
  return value;
}

std::string SignViolation::message() const {
  std::ostringstream os;
  os << exponent << " = " << value << " violates expected sign " << exponent
     << ' ' << expected;
  return os.str();
}

std::vector<SignViolation> check_feasibility(const CompressionLaw& law) {
  std::vector<SignViolation> out;
  const bool has_beta = law.form() != Form::DataOnly;
  const bool has_gamma = law.form() != Form::RatioOnly;
  switch (law.metric()) {
    case MetricKind::Accuracy:
      if (has_beta && law.beta() >= 0.0) out.push_back({"beta", law.beta(), "< 0"});
      if (has_gamma && law.gamma() >= 0.0) out.push_back({"gamma", law.gamma(), "< 0"});
      break;
    case MetricKind::Loss:
      if (has_beta && law.beta() <= 0.0) out.push_back({"beta", law.beta(), "> 0"});
      if (has_gamma && law.gamma() <= 0.0) out.push_back({"gamma", law.gamma(), "> 0"});
      break;
    case MetricKind::Runtime:
      if (has_beta && law.beta() >= 0.0) out.push_back({"beta", law.beta(), "< 0"});
      break;
  }
  return out;
}

std::vector<SignViolation> check_feasibility(const RuntimeLaw& law) {
  std::vector<SignViolation> out;
  if (law.beta() >= 0.0) out.push_back({"beta", law.beta(), "< 0"});
  return out;
}

}  // namespace compresslaw
