// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "compresslaw/synth.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "compresslaw/error.hpp"

namespace compresslaw {

PortableNormal::PortableNormal(std::uint64_t seed) : engine_(seed) {}

double PortableNormal::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableNormal::next() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

void check_config(const SyntheticConfig& cfg) {
  if (cfg.l0_values.empty() || cfg.r_values.empty() || cfg.d_values.empty()) {
    throw InvalidArgument("synthetic grid needs at least one l0, r and d value");
  }
  if (!std::isfinite(cfg.noise_std) || cfg.noise_std < 0.0) {
    throw InvalidArgument("noise_std must be finite and nonnegative");
  }
  for (double v : cfg.l0_values) {
    if (!std::isfinite(v) || v <= 0.0) throw InvalidArgument("l0 grid values must be positive");
  }
  for (double v : cfg.r_values) {
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0) {
      throw InvalidArgument("r grid values must lie in [0, 1)");
    }
  }
  for (double v : cfg.d_values) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("d grid values must be nonnegative");
  }
  const std::set<double> r_distinct(cfg.r_values.begin(), cfg.r_values.end());
  const std::set<double> d_distinct(cfg.d_values.begin(), cfg.d_values.end());
  if (r_distinct.size() + d_distinct.size() < 3) {
    throw InvalidArgument(
        "synthetic grid needs at least 3 distinct values among r and d jointly");
  }
}

}  // namespace

std::vector<ExperimentRecord> generate(const SyntheticConfig& cfg) {
  check_config(cfg);
  const auto& law = cfg.truth;
  std::vector<ExperimentRecord> out;
  out.reserve(cfg.l0_values.size() * cfg.r_values.size() * cfg.d_values.size());
  PortableNormal noise(cfg.seed);
  for (double l0 : cfg.l0_values) {
    for (double r : cfg.r_values) {
      for (double d : cfg.d_values) {
        const LogFeatures f = log_features(l0, r, d, law.epsilon());
        double log_l = law.alpha() * f.log_l0 + law.beta() * f.log_ratio +
                       law.gamma() * f.log_data;
        if (cfg.noise_std > 0.0) log_l += cfg.noise_std * noise.next();
        const double l = std::exp(log_l);
        if (!std::isfinite(l) || l <= 0.0) {
          throw DomainError("synthetic observation overflowed");
        }
        out.push_back({cfg.model_id, law.metric(), l0, r, d, l});
      }
    }
  }
  // Rank check on the design the truth's form would be fitted with.
  const Design design = build_design(out, law.epsilon(), law.form());
  if (design.x.rows() > design.x.cols()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design.x);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin > kMaxConditionNumber) {
      throw SingularDesignError(
          "synthetic grid is rank-deficient for the truth law's form");
    }
  }
  return out;
}

}  // namespace compresslaw
