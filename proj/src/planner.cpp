// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "compresslaw/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compresslaw/error.hpp"

namespace compresslaw {

RatioDecision required_ratio(double param_count, double budget,
                             double max_ratio) {
  if (!std::isfinite(param_count) || param_count <= 0.0) {
    throw InvalidArgument("param_count must be finite and positive");
  }
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw InvalidArgument("budget must be finite and positive");
  }
  if (!std::isfinite(max_ratio) || max_ratio <= 0.0 || max_ratio > 1.0) {
    throw InvalidArgument("max_ratio must lie in (0, 1]");
  }
  if (budget >= param_count) return {RatioStatus::NoCompressionNeeded, 0.0};
  const double r = 1.0 - budget / param_count;
  if (r >= max_ratio) return {RatioStatus::OverBudgetInfeasible, r};
  return {RatioStatus::Compress, r};
}

PlanResult plan(std::span<const CandidateModel> candidates,
                const PlanRequest& request) {
  if (candidates.empty()) throw InvalidArgument("no candidate models to plan over");
  if (request.metric == MetricKind::Runtime) {
    throw InvalidArgument("planning ranks loss or accuracy laws, not runtime");
  }
  if (!std::isfinite(request.rft_size) || request.rft_size < 0.0) {
    throw InvalidArgument("rft_size must be finite and nonnegative");
  }
  for (const auto& c : candidates) {
    if (c.law.metric() != request.metric) {
      throw InvalidArgument("candidate '" + c.model_id + "' has a " +
                            std::string(to_string(c.law.metric())) +
                            " law but the request is for " +
                            std::string(to_string(request.metric)));
    }
  }

  PlanResult result;
  for (const auto& c : candidates) {
    const RatioDecision decision =
        required_ratio(c.param_count, request.budget, request.max_ratio);
    if (decision.status == RatioStatus::OverBudgetInfeasible) {
      std::ostringstream os;
      os << "required ratio " << decision.r << " reaches the cap "
         << request.max_ratio;
      result.skipped.push_back({c.model_id, os.str()});
      continue;
    }
    if (!std::isfinite(c.l0) || c.l0 <= 0.0) {
      result.skipped.push_back({c.model_id, "base performance l0 must be positive"});
      continue;
    }
    PlanEntry entry{c.model_id, decision.r,
                    evaluate(c.law, c.l0, decision.r, request.rft_size),
                    std::nullopt, {}};
    if (decision.status == RatioStatus::NoCompressionNeeded) {
      entry.notes.push_back("no compression needed");
    }
    if (decision.r > kObservedMaxRatio) {
      entry.notes.push_back("ratio beyond the observed range; extrapolated");
    }
    if (c.runtime_law) {
      entry.predicted_runtime_factor = evaluate_runtime(*c.runtime_law, decision.r) /
                                       c.runtime_law->c();
    }
    result.ranked.push_back(std::move(entry));
  }

  const bool higher_is_better = request.metric == MetricKind::Accuracy;
  std::sort(result.ranked.begin(), result.ranked.end(),
            [higher_is_better](const PlanEntry& a, const PlanEntry& b) {
              if (a.predicted_performance != b.predicted_performance) {
                return higher_is_better
                           ? a.predicted_performance > b.predicted_performance
                           : a.predicted_performance < b.predicted_performance;
              }
              if (a.required_ratio != b.required_ratio) {
                return a.required_ratio < b.required_ratio;
              }
              return a.model_id < b.model_id;
            });
  std::sort(result.skipped.begin(), result.skipped.end(),
            [](const SkippedCandidate& a, const SkippedCandidate& b) {
              return a.model_id < b.model_id;
            });
  return result;
}

SpeedupEstimate predict_speedup(const RuntimeLaw& runtime_law, double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    std::ostringstream os;
    os << "compression ratio r must lie in [0, 1), got " << r;
    throw DomainError(os.str());
  }
  if (runtime_law.beta() >= 0.0) {
    return {0.0, "runtime exponent beta >= 0 predicts no speedup"};
  }
  return {-std::expm1(runtime_law.beta() * std::log1p(r)), std::nullopt};
}

}  // namespace compresslaw
