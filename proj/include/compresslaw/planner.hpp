// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Budget-constrained choice of which base model to compress and how hard.
// A candidate with N parameters meets a budget B at ratio r = 1 - B/N.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compresslaw/law.hpp"

namespace compresslaw {

struct CandidateModel {
  std::string model_id;
  double param_count;
  double l0;
  CompressionLaw law;
  std::optional<RuntimeLaw> runtime_law;
};

struct PlanRequest {
  double budget;
  double rft_size = 0.0;
  MetricKind metric = MetricKind::Accuracy;
  double max_ratio = 0.9;
};

/// Largest ratio covered by the experiments the published laws were fitted
/// on; anything above is flagged as extrapolation.
inline constexpr double kObservedMaxRatio = 0.9;

enum class RatioStatus { Compress, NoCompressionNeeded, OverBudgetInfeasible };

struct RatioDecision {
  RatioStatus status;
  double r;  ///< 0 when no compression is needed; the raw ratio when infeasible
};

RatioDecision required_ratio(double param_count, double budget,
                             double max_ratio = 0.9);

struct PlanEntry {
  std::string model_id;
  double required_ratio;
  double predicted_performance;
  std::optional<double> predicted_runtime_factor;  ///< (1+r)^beta_runtime
  std::vector<std::string> notes;
};

struct SkippedCandidate {
  std::string model_id;
  std::string reason;
};

struct PlanResult {
  std::vector<PlanEntry> ranked;
  std::vector<SkippedCandidate> skipped;
};

/// Ranks candidates by predicted performance: descending for accuracy,
/// ascending for loss, ties toward the smaller ratio, then by model id.
PlanResult plan(std::span<const CandidateModel> candidates,
                const PlanRequest& request);

struct SpeedupEstimate {
  double fraction;  ///< 1 - (1+r)^beta, in [0, 1)
  std::optional<std::string> warning;
};

SpeedupEstimate predict_speedup(const RuntimeLaw& runtime_law, double r);

}  // namespace compresslaw
