// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>

#include "compresslaw/compresslaw.h"
#include "compresslaw/error.hpp"
#include "compresslaw/io.hpp"
#include "compresslaw/planner.hpp"
#include "compresslaw/recovery.hpp"
#include "compresslaw/synth.hpp"
#include "json.hpp"

namespace cl = compresslaw;

struct cl_law {
  cl::AnyLaw law;
};
struct cl_records {
  std::vector<cl::ExperimentRecord> records;
};
struct cl_fit_report {
  cl::FitReport report;
};
struct cl_registry {
  cl::LawRegistry registry;
};

namespace {

thread_local std::string g_last_error;

cl_status fail(cl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

cl_status map_code(cl::ErrorCode code) {
  switch (code) {
    case cl::ErrorCode::InvalidArgument: return CL_E_INVALID_ARGUMENT;
    case cl::ErrorCode::Domain: return CL_E_DOMAIN;
    case cl::ErrorCode::SingularDesign: return CL_E_SINGULAR;
    case cl::ErrorCode::Regime: return CL_E_REGIME;
    case cl::ErrorCode::Parse: return CL_E_PARSE;
    case cl::ErrorCode::Io: return CL_E_IO;
  }
  return CL_E_INTERNAL;
}

template <typename F>
cl_status guarded(F&& body) noexcept {
  try {
    body();
    return CL_OK;
  } catch (const cl::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CL_E_INTERNAL, e.what());
  } catch (...) {
    return fail(CL_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw cl::InvalidArgument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cl::MetricKind to_metric(cl_metric m) {
  switch (m) {
    case CL_METRIC_LOSS: return cl::MetricKind::Loss;
    case CL_METRIC_ACCURACY: return cl::MetricKind::Accuracy;
    case CL_METRIC_RUNTIME: return cl::MetricKind::Runtime;
  }
  throw cl::InvalidArgument("unknown metric value");
}

cl_metric from_metric(cl::MetricKind m) {
  switch (m) {
    case cl::MetricKind::Loss: return CL_METRIC_LOSS;
    case cl::MetricKind::Accuracy: return CL_METRIC_ACCURACY;
    case cl::MetricKind::Runtime: return CL_METRIC_RUNTIME;
  }
  return CL_METRIC_LOSS;
}

cl::Form to_form(cl_form f) {
  switch (f) {
    case CL_FORM_FULL: return cl::Form::Full;
    case CL_FORM_RATIO: return cl::Form::RatioOnly;
    case CL_FORM_DATA: return cl::Form::DataOnly;
    case CL_FORM_RUNTIME: return cl::Form::Runtime;
  }
  throw cl::InvalidArgument("unknown form value");
}

cl_form from_form(cl::Form f) {
  switch (f) {
    case cl::Form::Full: return CL_FORM_FULL;
    case cl::Form::RatioOnly: return CL_FORM_RATIO;
    case cl::Form::DataOnly: return CL_FORM_DATA;
    case cl::Form::Runtime: return CL_FORM_RUNTIME;
  }
  return CL_FORM_FULL;
}

const cl::CompressionLaw& compression_law(const cl_law* law) {
  require(law, "law");
  const auto* c = std::get_if<cl::CompressionLaw>(&law->law);
  if (c == nullptr) throw cl::InvalidArgument("expected a compression law, got a runtime law");
  return *c;
}

std::vector<double> to_vector(const double* values, size_t n, const char* what) {
  if (n > 0) require(values, what);
  return std::vector<double>(values, values + n);
}

}  // namespace

extern "C" {

const char* cl_version(void) { return "1.0.0"; }

const char* cl_last_error(void) { return g_last_error.c_str(); }

const char* cl_status_name(cl_status status) {
  switch (status) {
    case CL_OK: return "ok";
    case CL_E_INVALID_ARGUMENT: return "invalid_argument";
    case CL_E_DOMAIN: return "domain";
    case CL_E_SINGULAR: return "singular_design";
    case CL_E_REGIME: return "regime";
    case CL_E_PARSE: return "parse";
    case CL_E_IO: return "io";
    case CL_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void cl_string_free(char* s) { std::free(s); }

cl_status cl_law_create(double alpha, double beta, double gamma, double epsilon,
                        cl_metric metric, cl_form form, cl_law** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cl_law{cl::CompressionLaw(alpha, beta, gamma, to_metric(metric), epsilon,
                                         to_form(form))};
  });
}

cl_status cl_runtime_law_create(double c, double beta, cl_law** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cl_law{cl::RuntimeLaw(c, beta)};
  });
}

cl_status cl_law_from_json(const char* json, int strict, cl_law** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new cl_law{cl::read_law(json, strict != 0)};
  });
}

void cl_law_destroy(cl_law* law) { delete law; }

int cl_law_is_runtime(const cl_law* law) {
  return law != nullptr && std::holds_alternative<cl::RuntimeLaw>(law->law);
}

cl_status cl_law_params(const cl_law* law, double* alpha_or_c, double* beta,
                        double* gamma, double* epsilon, cl_metric* metric,
                        cl_form* form) {
  return guarded([&] {
    require(law, "law");
    if (const auto* c = std::get_if<cl::CompressionLaw>(&law->law)) {
      if (alpha_or_c) *alpha_or_c = c->alpha();
      if (beta) *beta = c->beta();
      if (gamma) *gamma = c->gamma();
      if (epsilon) *epsilon = c->epsilon();
      if (metric) *metric = from_metric(c->metric());
      if (form) *form = from_form(c->form());
    } else {
      const auto& rt = std::get<cl::RuntimeLaw>(law->law);
      if (alpha_or_c) *alpha_or_c = rt.c();
      if (beta) *beta = rt.beta();
      if (gamma) *gamma = 0.0;
      if (epsilon) *epsilon = 1.0;
      if (metric) *metric = CL_METRIC_RUNTIME;
      if (form) *form = CL_FORM_RUNTIME;
    }
  });
}

cl_status cl_law_to_json(const cl_law* law, char** out) {
  return guarded([&] {
    require(law, "law");
    require(out, "out");
    *out = dup_string(cl::write_law(law->law));
  });
}

cl_status cl_law_evaluate(const cl_law* law, double l0, double r, double d, double* out) {
  return guarded([&] {
    require(law, "law");
    require(out, "out");
    if (const auto* c = std::get_if<cl::CompressionLaw>(&law->law)) {
      *out = cl::evaluate(*c, l0, r, d);
    } else {
      *out = cl::evaluate_runtime(std::get<cl::RuntimeLaw>(law->law), r);
    }
  });
}

cl_status cl_evaluate_ablation_r(double alpha, double beta, double l0, double r,
                                 double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cl::evaluate_ablation_r(alpha, beta, l0, r);
  });
}

cl_status cl_evaluate_ablation_d(double alpha, double gamma, double epsilon, double l0,
                                 double d, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cl::evaluate_ablation_d(alpha, gamma, epsilon, l0, d);
  });
}

cl_status cl_law_check_feasibility(const cl_law* law, char** out_json) {
  return guarded([&] {
    require(law, "law");
    require(out_json, "out_json");
    const auto violations = std::visit(
        [](const auto& l) { return cl::check_feasibility(l); }, law->law);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
      arr.push_back({{"exponent", v.exponent},
                     {"value", v.value},
                     {"expected", v.expected},
                     {"message", v.message()}});
    }
    *out_json = dup_string(arr.dump());
  });
}

cl_status cl_predict_speedup(double runtime_beta, double r, double* out, int* warned) {
  return guarded([&] {
    require(out, "out");
    const auto est = cl::predict_speedup(cl::RuntimeLaw(1.0, runtime_beta), r);
    *out = est.fraction;
    if (warned) *warned = est.warning.has_value() ? 1 : 0;
    if (est.warning) g_last_error = *est.warning;
  });
}

cl_status cl_classify_regime(double beta, double sigma, cl_metric metric,
                             cl_regime* regime, double* boundary) {
  return guarded([&] {
    const auto cls = cl::classify_regime(beta, sigma, to_metric(metric));
    if (regime) {
      *regime = cls.regime == cl::Regime::AlwaysRecoverable ? CL_REGIME_ALWAYS
                                                            : CL_REGIME_CONDITIONAL;
    }
    if (boundary) *boundary = cls.boundary;
  });
}

cl_status cl_critical_ratio(double beta, double sigma, cl_metric metric, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cl::critical_ratio(beta, sigma, to_metric(metric));
  });
}

cl_status cl_min_rft_size(const cl_law* law, double sigma, double r, int* recoverable,
                          double* d_min) {
  return guarded([&] {
    require(recoverable, "recoverable");
    require(d_min, "d_min");
    const auto d = cl::min_rft_size({compression_law(law), sigma, r});
    *recoverable = d.has_value() ? 1 : 0;
    *d_min = d.value_or(std::numeric_limits<double>::quiet_NaN());
  });
}

cl_status cl_recoverable(const cl_law* law, double sigma, double r, double d, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = cl::recoverable(compression_law(law), sigma, r, d) ? 1 : 0;
  });
}

cl_status cl_records_from_csv(const char* csv, int strict, cl_records** out,
                              char** diagnostics) {
  return guarded([&] {
    require(csv, "csv");
    require(out, "out");
    auto set = cl::read_records(std::string_view(csv), strict != 0);
    if (diagnostics) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& e : set.errors) {
        arr.push_back({{"row", e.row}, {"field", e.field}, {"message", e.message}});
      }
      *diagnostics = dup_string(arr.dump());
    }
    *out = new cl_records{std::move(set.records)};
  });
}

size_t cl_records_count(const cl_records* records) {
  return records ? records->records.size() : 0;
}

cl_status cl_records_to_csv(const cl_records* records, char** out) {
  return guarded([&] {
    require(records, "records");
    require(out, "out");
    *out = dup_string(cl::write_records(records->records));
  });
}

void cl_records_destroy(cl_records* records) { delete records; }

cl_status cl_fit(const cl_records* records, double epsilon, cl_form form,
                 cl_fit_report** out) {
  return guarded([&] {
    require(records, "records");
    require(out, "out");
    *out = new cl_fit_report{cl::fit_law(records->records, epsilon, to_form(form))};
  });
}

cl_status cl_fit_report_set_d_unit(cl_fit_report* report, const char* unit) {
  return guarded([&] {
    require(report, "report");
    report->report.d_unit = unit ? unit : "";
  });
}

cl_status cl_fit_report_to_json(const cl_fit_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup_string(cl::write_report(report->report));
  });
}

cl_status cl_fit_report_law(const cl_fit_report* report, cl_law** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = new cl_law{report->report.law};
  });
}

void cl_fit_report_destroy(cl_fit_report* report) { delete report; }

cl_status cl_synthesize(const cl_law* truth, const double* l0_values, size_t n_l0,
                        const double* r_values, size_t n_r, const double* d_values,
                        size_t n_d, double noise_std, uint64_t seed,
                        const char* model_id, cl_records** out) {
  return guarded([&] {
    require(out, "out");
    cl::SyntheticConfig cfg{compression_law(truth),
                            to_vector(l0_values, n_l0, "l0_values"),
                            to_vector(r_values, n_r, "r_values"),
                            to_vector(d_values, n_d, "d_values"),
                            noise_std,
                            seed,
                            model_id ? model_id : "synthetic"};
    *out = new cl_records{cl::generate(cfg)};
  });
}

cl_status cl_frontier(const cl_law* law, const double* l0_values, size_t n_l0,
                      const double* r_values, size_t n_r, const double* d_values,
                      size_t n_d, cl_output_format format, char** out) {
  return guarded([&] {
    require(out, "out");
    const auto l0 = to_vector(l0_values, n_l0, "l0_values");
    const auto r = to_vector(r_values, n_r, "r_values");
    const auto d = to_vector(d_values, n_d, "d_values");
    const auto rows = cl::emit_frontier_grid(compression_law(law), l0, r, d);
    if (format == CL_FORMAT_CSV) {
      std::ostringstream os;
      cl::write_frontier_csv(os, rows);
      *out = dup_string(os.str());
    } else {
      *out = dup_string(cl::write_frontier(rows));
    }
  });
}

cl_status cl_registry_from_json(const char* json, int strict, cl_registry** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new cl_registry{cl::read_registry(json, strict != 0)};
  });
}

size_t cl_registry_size(const cl_registry* registry) {
  return registry ? registry->registry.size() : 0;
}

cl_status cl_registry_to_json(const cl_registry* registry, char** out) {
  return guarded([&] {
    require(registry, "registry");
    require(out, "out");
    *out = dup_string(cl::write_registry(registry->registry));
  });
}

void cl_registry_destroy(cl_registry* registry) { delete registry; }

cl_status cl_plan(const cl_registry* registry, double budget, double rft_size,
                  cl_metric metric, double max_ratio, double default_l0,
                  const char* method, cl_output_format format, char** out) {
  return guarded([&] {
    require(registry, "registry");
    require(out, "out");
    const cl::PlanRequest request{budget, rft_size, to_metric(metric), max_ratio};
    cl::RegistryPlanOptions options;
    if (std::isfinite(default_l0) && default_l0 > 0.0) options.default_l0 = default_l0;
    if (method) options.method = method;
    const auto result = cl::plan_registry(registry->registry, request, options);
    if (format == CL_FORMAT_CSV) {
      std::ostringstream os;
      cl::write_plan_csv(os, result);
      *out = dup_string(os.str());
    } else {
      *out = dup_string(cl::write_plan(result, request));
    }
  });
}

}  // extern "C"
