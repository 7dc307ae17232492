// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// Record CSV, versioned JSON documents, the law registry and frontier tables.
//
// CSV schema: model_id,metric,l0,r,d,l   (comma, UTF-8, dot decimals; d is a
// plain number, never "1k"/"25k").
// JSON documents carry "schema": "compresslaw/v1" and a "kind" tag.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compresslaw/law.hpp"
#include "compresslaw/planner.hpp"
#include "compresslaw/regress.hpp"

namespace compresslaw {

inline constexpr std::string_view kSchemaVersion = "compresslaw/v1";

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

// ---- CSV records ------------------------------------------------------------

struct RowError {
  std::size_t row;  ///< 1-based line number, header is row 1
  std::string field;
  std::string message;
};

struct RecordSet {
  std::vector<ExperimentRecord> records;
  std::vector<RowError> errors;  ///< only populated in lenient mode
};

/// Strict mode throws on the first bad row (ParseError for malformed input,
/// DomainError for invariant violations); lenient mode skips and collects.
RecordSet read_records(std::istream& in, bool strict = true);
RecordSet read_records(std::string_view text, bool strict = true);

void write_records(std::ostream& out, std::span<const ExperimentRecord> records);
std::string write_records(std::span<const ExperimentRecord> records);

// ---- JSON laws and reports --------------------------------------------------

std::string write_law(const AnyLaw& law);

/// Accepts a law document or a fit report (its law is returned). Strict mode
/// rejects unknown fields.
AnyLaw read_law(std::string_view json, bool strict = true);

std::string write_report(const FitReport& report);
FitReport read_report(std::string_view json, bool strict = true);

// ---- Law registry -----------------------------------------------------------

struct RegistryEntry {
  std::string model_id;
  std::string method;  ///< free-form tag, e.g. "calibration-free/full"
  std::string source;  ///< e.g. "table2"
  std::string provenance;
  AnyLaw law;
  std::optional<double> param_count;
  std::optional<double> l0;
  std::optional<double> reported_adj_r_squared;
  std::optional<double> reported_f_statistic;

  MetricKind metric() const;
  bool operator==(const RegistryEntry&) const = default;
};

/// Laws keyed by (model_id, metric, method); insertion order is preserved.
class LawRegistry {
 public:
  /// Throws InvalidArgument on a duplicate key.
  void add(RegistryEntry entry);

  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const RegistryEntry* find(std::string_view model_id, MetricKind metric,
                            std::string_view method) const;

  bool operator==(const LawRegistry&) const = default;

 private:
  std::vector<RegistryEntry> entries_;
};

std::string write_registry(const LawRegistry& registry);
LawRegistry read_registry(std::string_view json, bool strict = true);

struct RegistryPlanOptions {
  std::optional<double> default_l0;   ///< used when an entry has no l0
  std::optional<std::string> method;  ///< only entries with this tag
};

/// Turns matching registry entries into candidates and plans over them.
/// Entries lacking param_count or l0 are reported as skipped.
PlanResult plan_registry(const LawRegistry& registry, const PlanRequest& request,
                         const RegistryPlanOptions& options = {});

std::string write_plan(const PlanResult& result, const PlanRequest& request);
void write_plan_csv(std::ostream& out, const PlanResult& result);

// ---- Frontier tables --------------------------------------------------------

struct FrontierRow {
  double l0;
  double r;
  double d;
  double predicted;
};

/// One row per (l0, r, d), lexicographic with d fastest.
std::vector<FrontierRow> emit_frontier_grid(const CompressionLaw& law,
                                            std::span<const double> l0_list,
                                            std::span<const double> r_grid,
                                            std::span<const double> d_grid);

std::string write_frontier(std::span<const FrontierRow> rows);
void write_frontier_csv(std::ostream& out, std::span<const FrontierRow> rows);

}  // namespace compresslaw
