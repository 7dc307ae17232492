// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "compresslaw/error.hpp"
#include "compresslaw/io.hpp"
#include "json.hpp"

namespace compresslaw {

using Json = nlohmann::ordered_json;

namespace {

// Non-finite values travel as the strings "inf", "-inf" and "nan".
Json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

// Field access with unknown-key detection for strict mode.
class ObjectReader {
 public:
  ObjectReader(const Json& obj, std::string context, bool strict)
      : obj_(obj), context_(std::move(context)), strict_(strict) {
    if (!obj_.is_object()) throw ParseError(context_ + ": expected a JSON object");
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const Json& raw(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) {
      throw ParseError(context_ + ": missing field '" + key + "'");
    }
    return *it;
  }

  double number(const char* key) {
    const Json& v = raw(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      if (s == "-inf") return -std::numeric_limits<double>::infinity();
      if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError(context_ + ": field '" + key + "' must be a number");
  }

  std::optional<double> optional_number(const char* key) {
    if (!has(key) || obj_.at(key).is_null()) {
      seen_.insert(key);
      return std::nullopt;
    }
    return number(key);
  }

  std::string string(const char* key) {
    const Json& v = raw(key);
    if (!v.is_string()) throw ParseError(context_ + ": field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::string optional_string(const char* key, std::string fallback = {}) {
    if (!has(key)) return fallback;
    return string(key);
  }

  std::size_t count(const char* key) {
    const Json& v = raw(key);
    if (!v.is_number_unsigned()) {
      throw ParseError(context_ + ": field '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  void expect_string(const char* key, std::string_view expected) {
    const std::string v = string(key);
    if (v != expected) {
      throw ParseError(context_ + ": field '" + key + "' is '" + v + "', expected '" +
                       std::string(expected) + "'");
    }
  }

  void finish() const {
    if (!strict_) return;
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ParseError(context_ + ": unknown field '" + key + "'");
      }
    }
  }

  const std::string& context() const { return context_; }

 private:
  const Json& obj_;
  std::string context_;
  bool strict_;
  std::set<std::string, std::less<>> seen_;
};

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto wrap_invariants(const std::string& context, F&& build) {
  try {
    return build();
  } catch (const InvalidArgument& e) {
    throw ParseError(context + ": " + e.what());
  }
}

Json stats_json(const FitStatistics& s) {
  Json j;
  j["n"] = s.n;
  j["p"] = s.p;
  j["r_squared"] = number_json(s.r_squared);
  j["adj_r_squared"] = number_json(s.adj_r_squared);
  j["f_statistic"] = number_json(s.f_statistic);
  j["residual_std"] = number_json(s.residual_std);
  j["condition_number"] = number_json(s.condition_number);
  return j;
}

FitStatistics stats_from(const Json& j, bool strict) {
  ObjectReader rd(j, "stats", strict);
  FitStatistics s;
  s.n = rd.count("n");
  s.p = rd.count("p");
  s.r_squared = rd.number("r_squared");
  s.adj_r_squared = rd.number("adj_r_squared");
  s.f_statistic = rd.number("f_statistic");
  s.residual_std = rd.number("residual_std");
  s.condition_number = rd.number("condition_number");
  rd.finish();
  return s;
}

// Law body without the schema tag; stats are only emitted when asked.
Json law_body(const AnyLaw& any, bool with_stats) {
  Json j;
  if (const auto* law = std::get_if<CompressionLaw>(&any)) {
    j["kind"] = "compression_law";
    j["metric"] = to_string(law->metric());
    j["form"] = to_string(law->form());
    j["alpha"] = law->alpha();
    j["beta"] = law->beta();
    j["gamma"] = law->gamma();
    j["epsilon"] = law->epsilon();
    if (with_stats && law->stats()) j["stats"] = stats_json(*law->stats());
  } else {
    const auto& rt = std::get<RuntimeLaw>(any);
    j["kind"] = "runtime_law";
    j["metric"] = "runtime";
    j["c"] = rt.c();
    j["beta"] = rt.beta();
    if (with_stats && rt.stats()) j["stats"] = stats_json(*rt.stats());
  }
  return j;
}

AnyLaw law_from(ObjectReader& rd, bool strict) {
  const std::string kind = rd.string("kind");
  std::optional<FitStatistics> stats;
  if (rd.has("stats")) stats = stats_from(rd.raw("stats"), strict);
  if (kind == "compression_law") {
    const MetricKind metric = wrap_invariants(rd.context(), [&] {
      return parse_metric(rd.string("metric"));
    });
    const Form form = wrap_invariants(rd.context(), [&] {
      return parse_form(rd.optional_string("form", "full"));
    });
    const double alpha = rd.number("alpha");
    const double beta = form == Form::DataOnly && !rd.has("beta") ? 0.0 : rd.number("beta");
    const double gamma = form == Form::RatioOnly && !rd.has("gamma") ? 0.0 : rd.number("gamma");
    const double epsilon = rd.has("epsilon") ? rd.number("epsilon") : 1.0;
    rd.finish();
    CompressionLaw law = wrap_invariants(rd.context(), [&] {
      return CompressionLaw(alpha, beta, gamma, metric, epsilon, form);
    });
    return stats ? AnyLaw(law.with_stats(*stats)) : AnyLaw(law);
  }
  if (kind == "runtime_law") {
    if (rd.has("metric")) rd.expect_string("metric", "runtime");
    const double c = rd.number("c");
    const double beta = rd.number("beta");
    rd.finish();
    RuntimeLaw law = wrap_invariants(rd.context(), [&] { return RuntimeLaw(c, beta); });
    return stats ? AnyLaw(law.with_stats(*stats)) : AnyLaw(law);
  }
  throw ParseError(rd.context() + ": unknown law kind '" + kind + "'");
}

void check_schema(ObjectReader& rd) { rd.expect_string("schema", kSchemaVersion); }

Json report_json(const FitReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "fit_report";
  j["form"] = to_string(report.form);
  j["d_unit"] = report.d_unit;
  j["law"] = law_body(report.law, false);
  j["stats"] = stats_json(report.stats);
  j["warnings"] = report.warnings;
  Json res = Json::array();
  for (double r : report.residuals) res.push_back(number_json(r));
  j["residuals"] = std::move(res);
  return j;
}

FitReport report_from(const Json& doc, bool strict) {
  ObjectReader rd(doc, "fit_report", strict);
  check_schema(rd);
  rd.expect_string("kind", "fit_report");
  const Form form = wrap_invariants("fit_report", [&] { return parse_form(rd.string("form")); });
  std::string d_unit = rd.optional_string("d_unit");
  const FitStatistics stats = stats_from(rd.raw("stats"), strict);
  ObjectReader law_rd(rd.raw("law"), "fit_report.law", strict);
  AnyLaw law = std::visit([&](const auto& l) -> AnyLaw { return l.with_stats(stats); },
                          law_from(law_rd, strict));
  FitReport report{form, std::move(law), stats, {}, {}, std::move(d_unit)};
  const Json& warnings = rd.raw("warnings");
  if (!warnings.is_array()) throw ParseError("fit_report: 'warnings' must be an array");
  for (const auto& w : warnings) {
    if (!w.is_string()) throw ParseError("fit_report: warnings must be strings");
    report.warnings.push_back(w.get<std::string>());
  }
  const Json& residuals = rd.raw("residuals");
  if (!residuals.is_array()) throw ParseError("fit_report: 'residuals' must be an array");
  for (const auto& r : residuals) {
    if (!r.is_number()) throw ParseError("fit_report: residuals must be numbers");
    report.residuals.push_back(r.get<double>());
  }
  if (report.residuals.size() != report.stats.n) {
    throw ParseError("fit_report: residual count differs from stats.n");
  }
  rd.finish();
  return report;
}

}  // namespace

std::string write_law(const AnyLaw& law) {
  Json j;
  j["schema"] = kSchemaVersion;
  j.update(law_body(law, true));
  return j.dump(2) + "\n";
}

AnyLaw read_law(std::string_view text, bool strict) {
  const Json doc = parse_document(text);
  if (doc.is_object() && doc.value("kind", "") == "fit_report") {
    return report_from(doc, strict).law;
  }
  ObjectReader rd(doc, "law", strict);
  check_schema(rd);
  return law_from(rd, strict);
}

std::string write_report(const FitReport& report) {
  return report_json(report).dump(2) + "\n";
}

FitReport read_report(std::string_view text, bool strict) {
  return report_from(parse_document(text), strict);
}

// ---- registry ---------------------------------------------------------------

MetricKind RegistryEntry::metric() const {
  if (const auto* law = std::get_if<CompressionLaw>(&this->law)) return law->metric();
  return MetricKind::Runtime;
}

void LawRegistry::add(RegistryEntry entry) {
  if (find(entry.model_id, entry.metric(), entry.method)) {
    throw InvalidArgument("duplicate registry key (" + entry.model_id + ", " +
                          std::string(to_string(entry.metric())) + ", " +
                          entry.method + ")");
  }
  entries_.push_back(std::move(entry));
}

const RegistryEntry* LawRegistry::find(std::string_view model_id, MetricKind metric,
                                       std::string_view method) const {
  for (const auto& e : entries_) {
    if (e.model_id == model_id && e.metric() == metric && e.method == method) return &e;
  }
  return nullptr;
}

std::string write_registry(const LawRegistry& registry) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "law_registry";
  Json entries = Json::array();
  for (const auto& e : registry.entries()) {
    Json je;
    je["model_id"] = e.model_id;
    je["method"] = e.method;
    je["source"] = e.source;
    je["provenance"] = e.provenance;
    if (e.param_count) je["param_count"] = *e.param_count;
    if (e.l0) je["l0"] = *e.l0;
    if (e.reported_adj_r_squared) je["reported_adj_r_squared"] = *e.reported_adj_r_squared;
    if (e.reported_f_statistic) je["reported_f_statistic"] = *e.reported_f_statistic;
    je["law"] = law_body(e.law, true);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

LawRegistry read_registry(std::string_view text, bool strict) {
  const Json doc = parse_document(text);
  ObjectReader rd(doc, "law_registry", strict);
  check_schema(rd);
  rd.expect_string("kind", "law_registry");
  const Json& entries = rd.raw("entries");
  if (!entries.is_array()) throw ParseError("law_registry: 'entries' must be an array");
  rd.finish();
  LawRegistry registry;
  std::size_t i = 0;
  for (const auto& je : entries) {
    const std::string ctx = "law_registry.entries[" + std::to_string(i++) + "]";
    ObjectReader erd(je, ctx, strict);
    std::string model_id = erd.string("model_id");
    std::string method = erd.string("method");
    std::string source = erd.optional_string("source");
    std::string provenance = erd.optional_string("provenance");
    const auto param_count = erd.optional_number("param_count");
    const auto l0 = erd.optional_number("l0");
    const auto adj = erd.optional_number("reported_adj_r_squared");
    const auto f_stat = erd.optional_number("reported_f_statistic");
    ObjectReader lrd(erd.raw("law"), ctx + ".law", strict);
    RegistryEntry e{std::move(model_id), std::move(method), std::move(source),
                    std::move(provenance), law_from(lrd, strict), param_count, l0,
                    adj, f_stat};
    erd.finish();
    if (e.param_count && !(*e.param_count > 0.0)) {
      throw ParseError(ctx + ": param_count must be positive");
    }
    if (e.l0 && !(*e.l0 > 0.0)) throw ParseError(ctx + ": l0 must be positive");
    try {
      registry.add(std::move(e));
    } catch (const InvalidArgument& err) {
      throw ParseError(ctx + ": " + err.what());
    }
  }
  return registry;
}

PlanResult plan_registry(const LawRegistry& registry, const PlanRequest& request,
                         const RegistryPlanOptions& options) {
  std::vector<const RegistryEntry*> selected;
  for (const auto& e : registry.entries()) {
    if (e.metric() != request.metric) continue;
    if (options.method && e.method != *options.method) continue;
    selected.push_back(&e);
  }
  auto label = [&](const RegistryEntry& e) {
    std::size_t same = 0;
    for (const auto* s : selected) same += s->model_id == e.model_id;
    return same > 1 ? e.model_id + " [" + e.method + "]" : e.model_id;
  };

  std::vector<CandidateModel> candidates;
  std::vector<SkippedCandidate> skipped;
  for (const auto* e : selected) {
    const std::string id = label(*e);
    const std::optional<double> l0 = e->l0 ? e->l0 : options.default_l0;
    if (!e->param_count) {
      skipped.push_back({id, "registry entry has no param_count"});
      continue;
    }
    if (!l0) {
      skipped.push_back({id, "registry entry has no l0 and no default was given"});
      continue;
    }
    std::optional<RuntimeLaw> runtime;
    const RegistryEntry* rt = registry.find(e->model_id, MetricKind::Runtime, e->method);
    if (!rt) {
      for (const auto& other : registry.entries()) {
        if (other.model_id == e->model_id && other.metric() == MetricKind::Runtime) {
          rt = &other;
          break;
        }
      }
    }
    if (rt) runtime = std::get<RuntimeLaw>(rt->law);
    candidates.push_back({id, *e->param_count, *l0,
                          std::get<CompressionLaw>(e->law), runtime});
  }

  PlanResult result;
  if (!candidates.empty()) {
    result = plan(candidates, request);
  } else if (skipped.empty()) {
    throw InvalidArgument("registry has no " + std::string(to_string(request.metric)) +
                          " laws matching the request");
  }
  result.skipped.insert(result.skipped.end(), skipped.begin(), skipped.end());
  std::stable_sort(result.skipped.begin(), result.skipped.end(),
                   [](const SkippedCandidate& a, const SkippedCandidate& b) {
                     return a.model_id < b.model_id;
                   });
  return result;
}

std::string write_plan(const PlanResult& result, const PlanRequest& request) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "plan_result";
  Json req;
  req["budget"] = request.budget;
  req["rft_size"] = request.rft_size;
  req["metric"] = to_string(request.metric);
  req["max_ratio"] = request.max_ratio;
  j["request"] = std::move(req);
  Json ranked = Json::array();
  std::size_t rank = 1;
  for (const auto& e : result.ranked) {
    Json je;
    je["rank"] = rank++;
    je["model_id"] = e.model_id;
    je["required_ratio"] = e.required_ratio;
    je["predicted_performance"] = e.predicted_performance;
    if (e.predicted_runtime_factor) {
      je["predicted_runtime_factor"] = *e.predicted_runtime_factor;
      je["predicted_speedup"] = 1.0 - *e.predicted_runtime_factor;
    } else {
      je["predicted_runtime_factor"] = nullptr;
      je["predicted_speedup"] = nullptr;
    }
    je["notes"] = e.notes;
    ranked.push_back(std::move(je));
  }
  j["ranked"] = std::move(ranked);
  Json skipped = Json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back(Json{{"model_id", s.model_id}, {"reason", s.reason}});
  }
  j["skipped"] = std::move(skipped);
  return j.dump(2) + "\n";
}

void write_plan_csv(std::ostream& out, const PlanResult& result) {
  out << "rank,model_id,required_ratio,predicted_performance,predicted_runtime_factor\n";
  std::size_t rank = 1;
  for (const auto& e : result.ranked) {
    out << rank++ << ',' << e.model_id << ',' << format_number(e.required_ratio) << ','
        << format_number(e.predicted_performance) << ','
        << (e.predicted_runtime_factor ? format_number(*e.predicted_runtime_factor) : "")
        << '\n';
  }
}

// ---- frontier ---------------------------------------------------------------

std::vector<FrontierRow> emit_frontier_grid(const CompressionLaw& law,
                                            std::span<const double> l0_list,
                                            std::span<const double> r_grid,
                                            std::span<const double> d_grid) {
  if (l0_list.empty() || r_grid.empty() || d_grid.empty()) {
    throw InvalidArgument("frontier grids must be nonempty");
  }
  std::vector<FrontierRow> rows;
  rows.reserve(l0_list.size() * r_grid.size() * d_grid.size());
  for (double l0 : l0_list) {
    for (double r : r_grid) {
      for (double d : d_grid) rows.push_back({l0, r, d, evaluate(law, l0, r, d)});
    }
  }
  return rows;
}

std::string write_frontier(std::span<const FrontierRow> rows) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "frontier";
  j["columns"] = {"l0", "r", "d", "predicted"};
  Json data = Json::array();
  for (const auto& row : rows) data.push_back({row.l0, row.r, row.d, row.predicted});
  j["rows"] = std::move(data);
  return j.dump(2) + "\n";
}

void write_frontier_csv(std::ostream& out, std::span<const FrontierRow> rows) {
  out << "l0,r,d,predicted\n";
  for (const auto& row : rows) {
    out << format_number(row.l0) << ',' << format_number(row.r) << ','
        << format_number(row.d) << ',' << format_number(row.predicted) << '\n';
  }
}

}  // namespace compresslaw
