// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

// compresslaw-cli: command-line front end over the C API.
//
// Results go to stdout as JSON (or CSV where --format csv applies);
// diagnostics go to stderr. Exit codes: 0 success, 1 validation or domain
// error, 2 I/O error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compresslaw/compresslaw.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;
constexpr const char* kSchema = "compresslaw/v1";

// Raised for any failure; carries the process exit code.
struct Failure {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail_status(cl_status status) {
  throw Failure{status == CL_E_IO ? 2 : 1, cl_status_name(status), cl_last_error()};
}

void check(cl_status status) {
  if (status != CL_OK) fail_status(status);
}

struct StringDeleter {
  void operator()(char* s) const { cl_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct LawDeleter {
  void operator()(cl_law* p) const { cl_law_destroy(p); }
};
struct RecordsDeleter {
  void operator()(cl_records* p) const { cl_records_destroy(p); }
};
struct ReportDeleter {
  void operator()(cl_fit_report* p) const { cl_fit_report_destroy(p); }
};
struct RegistryDeleter {
  void operator()(cl_registry* p) const { cl_registry_destroy(p); }
};
using Law = std::unique_ptr<cl_law, LawDeleter>;
using Records = std::unique_ptr<cl_records, RecordsDeleter>;
using Report = std::unique_ptr<cl_fit_report, ReportDeleter>;
using Registry = std::unique_ptr<cl_registry, RegistryDeleter>;

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    if (std::cin.bad()) throw Failure{2, "io", "failed to read standard input"};
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "io", "cannot open '" + path + "' for reading"};
  buf << in.rdbuf();
  if (in.bad()) throw Failure{2, "io", "failed to read '" + path + "'"};
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{2, "io", "cannot open '" + path + "' for writing"};
  out << text;
  if (!out) throw Failure{2, "io", "failed to write '" + path + "'"};
}

Law load_law(const std::string& path) {
  const std::string text = read_input(path);
  cl_law* law = nullptr;
  check(cl_law_from_json(text.c_str(), 1, &law));
  return Law(law);
}

cl_metric parse_metric(const std::string& s) {
  if (s == "loss") return CL_METRIC_LOSS;
  if (s == "accuracy") return CL_METRIC_ACCURACY;
  if (s == "runtime") return CL_METRIC_RUNTIME;
  throw Failure{1, "invalid_argument", "unknown metric '" + s + "'"};
}

cl_form parse_form(const std::string& s) {
  if (s == "full") return CL_FORM_FULL;
  if (s == "ratio") return CL_FORM_RATIO;
  if (s == "data") return CL_FORM_DATA;
  if (s == "runtime") return CL_FORM_RUNTIME;
  throw Failure{1, "invalid_argument", "unknown form '" + s + "'"};
}

double parse_double(std::string_view text, const std::string& flag) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Failure{1, "invalid_argument",
                  flag + ": '" + std::string(text) + "' is not a number"};
  }
  return v;
}

// "a,b,c" or "start:stop:step" (inclusive stop, up to rounding).
std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto pos = text.find(':', start);
      parts.push_back(parse_double(std::string_view(text).substr(start, pos - start), flag));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw Failure{1, "invalid_argument", flag + ": range must be start:stop:step with step > 0"};
    }
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    if (count > 1000000) throw Failure{1, "invalid_argument", flag + ": range too long"};
    for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    out.push_back(parse_double(std::string_view(text).substr(start, pos - start), flag));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Json nullable(bool present, double value) { return present ? Json(value) : Json(nullptr); }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---- subcommands ------------------------------------------------------------

struct FitOptions {
  std::string input;
  std::string form = "full";
  double epsilon = 1.0;
  bool lenient = false;
  std::string d_unit;
};

void run_fit(const FitOptions& o) {
  const std::string csv = read_input(o.input);
  cl_records* raw = nullptr;
  char* diag = nullptr;
  check(cl_records_from_csv(csv.c_str(), o.lenient ? 0 : 1, &raw, &diag));
  Records records(raw);
  const Json diagnostics = Json::parse(take(diag));
  for (const auto& d : diagnostics) {
    std::cerr << "skipped row " << d["row"].get<std::size_t>() << ": "
              << d["message"].get<std::string>() << "\n";
  }
  cl_fit_report* rep = nullptr;
  check(cl_fit(records.get(), o.epsilon, parse_form(o.form), &rep));
  Report report(rep);
  if (!o.d_unit.empty()) check(cl_fit_report_set_d_unit(report.get(), o.d_unit.c_str()));
  char* out = nullptr;
  check(cl_fit_report_to_json(report.get(), &out));
  const std::string doc = take(out);
  for (const auto& w : Json::parse(doc)["warnings"]) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  std::cout << doc;
}

struct PredictOptions {
  std::string law;
  double l0 = std::nan("");
  double r = 0.0;
  double d = 0.0;
};

void run_predict(const PredictOptions& o) {
  Law law = load_law(o.law);
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "prediction";
  double value = 0.0;
  if (cl_law_is_runtime(law.get())) {
    double beta = 0.0;
    check(cl_law_params(law.get(), nullptr, &beta, nullptr, nullptr, nullptr, nullptr));
    check(cl_law_evaluate(law.get(), 1.0, o.r, 0.0, &value));
    double speedup = 0.0;
    int warned = 0;
    check(cl_predict_speedup(beta, o.r, &speedup, &warned));
    if (warned) std::cerr << "warning: " << cl_last_error() << "\n";
    j["law_kind"] = "runtime_law";
    j["r"] = o.r;
    j["predicted"] = value;
    j["speedup"] = speedup;
  } else {
    if (std::isnan(o.l0)) throw Failure{1, "invalid_argument", "--l0 is required for a compression law"};
    check(cl_law_evaluate(law.get(), o.l0, o.r, o.d, &value));
    j["law_kind"] = "compression_law";
    j["l0"] = o.l0;
    j["r"] = o.r;
    j["d"] = o.d;
    j["predicted"] = value;
  }
  print_json(j);
}

struct CriticalOptions {
  double beta = 0.0;
  double sigma = 0.0;
  std::string metric;
};

void run_critical(const CriticalOptions& o) {
  const cl_metric metric = parse_metric(o.metric);
  cl_regime regime{};
  double boundary = 0.0;
  check(cl_classify_regime(o.beta, o.sigma, metric, &regime, &boundary));
  double r_critical = 0.0;
  const bool conditional = regime == CL_REGIME_CONDITIONAL;
  if (conditional) check(cl_critical_ratio(o.beta, o.sigma, metric, &r_critical));
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "critical_ratio";
  j["metric"] = o.metric;
  j["beta"] = o.beta;
  j["sigma"] = o.sigma;
  j["regime"] = conditional ? "conditionally_recoverable" : "always_recoverable";
  j["boundary"] = boundary;
  j["r_critical"] = nullable(conditional, r_critical);
  print_json(j);
}

struct MinRftOptions {
  std::string law;
  double sigma = 0.0;
  double r = 0.0;
};

void run_min_rft(const MinRftOptions& o) {
  Law law = load_law(o.law);
  if (cl_law_is_runtime(law.get())) {
    throw Failure{1, "invalid_argument", "min-rft needs a compression law, got a runtime law"};
  }
  double beta = 0.0;
  cl_metric metric{};
  check(cl_law_params(law.get(), nullptr, &beta, nullptr, nullptr, &metric, nullptr));
  int recoverable = 0;
  double d_min = 0.0;
  check(cl_min_rft_size(law.get(), o.sigma, o.r, &recoverable, &d_min));
  cl_regime regime{};
  double boundary = 0.0;
  check(cl_classify_regime(beta, o.sigma, metric, &regime, &boundary));
  double r_critical = 0.0;
  const bool conditional = regime == CL_REGIME_CONDITIONAL;
  if (conditional) check(cl_critical_ratio(beta, o.sigma, metric, &r_critical));
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "min_rft";
  j["sigma"] = o.sigma;
  j["r"] = o.r;
  j["regime"] = conditional ? "conditionally_recoverable" : "always_recoverable";
  j["boundary"] = boundary;
  j["r_critical"] = nullable(conditional, r_critical);
  j["status"] = recoverable ? "recoverable" : "unrecoverable";
  j["d_min"] = nullable(recoverable != 0, d_min);
  print_json(j);
}

struct PlanOptions {
  std::string registry;
  double budget = 0.0;
  double d = 0.0;
  std::string metric;
  double max_ratio = 0.9;
  double l0 = std::nan("");
  std::string method;
  std::string format = "json";
};

void run_plan(const PlanOptions& o) {
  const std::string text = read_input(o.registry);
  cl_registry* raw = nullptr;
  check(cl_registry_from_json(text.c_str(), 1, &raw));
  Registry registry(raw);
  char* out = nullptr;
  check(cl_plan(registry.get(), o.budget, o.d, parse_metric(o.metric), o.max_ratio, o.l0,
                o.method.empty() ? nullptr : o.method.c_str(),
                o.format == "csv" ? CL_FORMAT_CSV : CL_FORMAT_JSON, &out));
  std::cout << take(out);
}

struct SynthOptions {
  std::string truth;
  std::string grid;
  double noise_std = 0.05;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string model_id = "synthetic";
};

std::vector<double> grid_axis(const Json& grid, const char* key) {
  if (!grid.contains(key) || !grid[key].is_array()) {
    throw Failure{1, "parse", std::string("grid: '") + key + "' must be an array of numbers"};
  }
  std::vector<double> out;
  for (const auto& v : grid[key]) {
    if (!v.is_number()) {
      throw Failure{1, "parse", std::string("grid: '") + key + "' must be an array of numbers"};
    }
    out.push_back(v.get<double>());
  }
  return out;
}

void run_synth(const SynthOptions& o) {
  Law truth = load_law(o.truth);
  const std::string grid_text = read_input(o.grid);
  Json grid;
  try {
    grid = Json::parse(grid_text);
  } catch (const Json::parse_error& e) {
    throw Failure{1, "parse", std::string("grid: malformed JSON: ") + e.what()};
  }
  if (!grid.is_object()) throw Failure{1, "parse", "grid: expected a JSON object"};
  for (const auto& [key, _] : grid.items()) {
    if (key != "l0" && key != "r" && key != "d") {
      throw Failure{1, "parse", "grid: unknown field '" + key + "'"};
    }
  }
  const auto l0 = grid_axis(grid, "l0");
  const auto r = grid_axis(grid, "r");
  const auto d = grid_axis(grid, "d");
  cl_records* raw = nullptr;
  check(cl_synthesize(truth.get(), l0.data(), l0.size(), r.data(), r.size(), d.data(),
                      d.size(), o.noise_std, o.seed, o.model_id.c_str(), &raw));
  Records records(raw);
  char* csv = nullptr;
  check(cl_records_to_csv(records.get(), &csv));
  write_output(o.out, take(csv));
  if (o.out != "-") {
    std::cerr << "wrote " << cl_records_count(records.get()) << " records to " << o.out << "\n";
  }
}

struct FrontierOptions {
  std::string law;
  std::string l0_list;
  std::string r_grid;
  std::string d_grid = "0";
  std::string format = "json";
};

void run_frontier(const FrontierOptions& o) {
  Law law = load_law(o.law);
  const auto l0 = parse_list(o.l0_list, "--l0-list");
  const auto r = parse_list(o.r_grid, "--r-grid");
  const auto d = parse_list(o.d_grid, "--d-grid");
  char* out = nullptr;
  check(cl_frontier(law.get(), l0.data(), l0.size(), r.data(), r.size(), d.data(), d.size(),
                    o.format == "csv" ? CL_FORMAT_CSV : CL_FORMAT_JSON, &out));
  std::cout << take(out);
}

int report_failure(const Failure& f) {
  Json err;
  err["error"] = {{"kind", f.kind}, {"message", f.message}, {"exit_code", f.exit_code}};
  std::cout << err.dump() << "\n";
  std::cerr << "compresslaw-cli: " << f.message << "\n";
  return f.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit, evaluate and apply LLM compression laws", "compresslaw-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cl_version()));
  const std::vector<std::string> formats = {"json", "csv"};
  const std::vector<std::string> metrics = {"loss", "accuracy", "runtime"};

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a compression law to experiment records (CSV)");
  fit_cmd->add_option("--input", fit.input, "Records CSV path, or - for stdin")->required();
  fit_cmd->add_option("--form", fit.form, "Law form")
      ->check(CLI::IsMember({"full", "ratio", "data", "runtime"}))
      ->capture_default_str();
  fit_cmd->add_option("--epsilon", fit.epsilon, "Smoothing constant added to d")
      ->capture_default_str();
  fit_cmd->add_flag("--lenient", fit.lenient, "Skip invalid rows instead of failing");
  fit_cmd->add_option("--d-unit", fit.d_unit, "Unit label for d, stored as metadata");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Evaluate a law at one point");
  predict_cmd->add_option("--law", predict.law, "Law or fit-report JSON path, or -")->required();
  predict_cmd->add_option("--l0", predict.l0, "Base-model performance (compression laws)");
  predict_cmd->add_option("--r", predict.r, "Compression ratio in [0, 1)")->required();
  predict_cmd->add_option("--d", predict.d, "RFT dataset size")->capture_default_str();

  CriticalOptions critical;
  auto* critical_cmd =
      app.add_subcommand("critical", "Classify the recovery regime and critical ratio");
  critical_cmd->add_option("--beta", critical.beta, "Compression-ratio exponent")->required();
  critical_cmd->add_option("--sigma", critical.sigma, "Recovery threshold")->required();
  critical_cmd->add_option("--metric", critical.metric, "accuracy or loss")
      ->required()
      ->check(CLI::IsMember({"accuracy", "loss"}));

  MinRftOptions min_rft;
  auto* min_rft_cmd = app.add_subcommand("min-rft", "Minimum RFT dataset size for a threshold");
  min_rft_cmd->add_option("--law", min_rft.law, "Law or fit-report JSON path, or -")->required();
  min_rft_cmd->add_option("--sigma", min_rft.sigma, "Recovery threshold")->required();
  min_rft_cmd->add_option("--r", min_rft.r, "Compression ratio in [0, 1)")->required();

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Rank base models for a parameter budget");
  plan_cmd->add_option("--registry", plan.registry, "Law registry JSON path, or -")->required();
  plan_cmd->add_option("--budget", plan.budget, "Target parameter count after compression")
      ->required();
  plan_cmd->add_option("--d", plan.d, "Available RFT dataset size")->capture_default_str();
  plan_cmd->add_option("--metric", plan.metric, "accuracy or loss")
      ->required()
      ->check(CLI::IsMember({"accuracy", "loss"}));
  plan_cmd->add_option("--max-ratio", plan.max_ratio, "Largest admissible compression ratio")
      ->capture_default_str();
  plan_cmd->add_option("--l0", plan.l0, "Base performance for entries without one");
  plan_cmd->add_option("--method", plan.method, "Only use registry entries with this method tag");
  plan_cmd->add_option("--format", plan.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic records from a law");
  synth_cmd->add_option("--truth", synth.truth, "Law JSON path, or -")->required();
  synth_cmd->add_option("--grid", synth.grid, "Grid JSON {\"l0\":[..],\"r\":[..],\"d\":[..]}")
      ->required();
  synth_cmd->add_option("--noise-std", synth.noise_std, "Log-space Gaussian noise std")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Noise seed")->required();
  synth_cmd->add_option("--out", synth.out, "Output CSV path, or - for stdout")
      ->capture_default_str();
  synth_cmd->add_option("--model-id", synth.model_id, "model_id column value")
      ->capture_default_str();

  FrontierOptions frontier;
  auto* frontier_cmd =
      app.add_subcommand("frontier", "Tabulate law predictions over an (l0, r, d) grid");
  frontier_cmd->add_option("--law", frontier.law, "Law or fit-report JSON path, or -")
      ->required();
  frontier_cmd->add_option("--l0-list", frontier.l0_list, "Comma list or start:stop:step")
      ->required();
  frontier_cmd->add_option("--r-grid", frontier.r_grid, "Comma list or start:stop:step")
      ->required();
  frontier_cmd->add_option("--d-grid", frontier.d_grid, "Comma list or start:stop:step")
      ->capture_default_str();
  frontier_cmd->add_option("--format", frontier.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_failure({1, "usage", e.what()});
  }

  try {
    if (*fit_cmd) run_fit(fit);
    else if (*predict_cmd) run_predict(predict);
    else if (*critical_cmd) run_critical(critical);
    else if (*min_rft_cmd) run_min_rft(min_rft);
    else if (*plan_cmd) run_plan(plan);
    else if (*synth_cmd) run_synth(synth);
    else if (*frontier_cmd) run_frontier(frontier);
  } catch (const Failure& f) {
    return report_failure(f);
  } catch (const std::exception& e) {
    return report_failure({1, "internal", e.what()});
  }
  return 0;
}
