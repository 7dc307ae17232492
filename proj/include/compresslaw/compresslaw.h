/* Copyright 2026 The compresslaw Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the compresslaw library.
 *
 * Every fallible call returns a cl_status; CL_OK is zero. On failure the
 * message of the most recent error on the calling thread is available from
 * cl_last_error() until the next failing call on that thread.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Strings returned through `char**` are
 * heap-allocated and must be released with cl_string_free(). Handles are
 * immutable after creation and may be shared across threads.
 */
#ifndef COMPRESSLAW_COMPRESSLAW_H
#define COMPRESSLAW_COMPRESSLAW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COMPRESSLAW_BUILDING)
#    define CL_API __declspec(dllexport)
#  else
#    define CL_API __declspec(dllimport)
#  endif
#else
#  define CL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_E_INVALID_ARGUMENT = 1,
  CL_E_DOMAIN = 2,
  CL_E_SINGULAR = 3,
  CL_E_REGIME = 4,
  CL_E_PARSE = 5,
  CL_E_IO = 6,
  CL_E_INTERNAL = 7
} cl_status;

typedef enum cl_metric {
  CL_METRIC_LOSS = 0,
  CL_METRIC_ACCURACY = 1,
  CL_METRIC_RUNTIME = 2
} cl_metric;

typedef enum cl_form {
  CL_FORM_FULL = 0,
  CL_FORM_RATIO = 1,
  CL_FORM_DATA = 2,
  CL_FORM_RUNTIME = 3
} cl_form;

typedef enum cl_regime {
  CL_REGIME_ALWAYS = 0,
  CL_REGIME_CONDITIONAL = 1
} cl_regime;

typedef enum cl_output_format {
  CL_FORMAT_JSON = 0,
  CL_FORMAT_CSV = 1
} cl_output_format;

typedef struct cl_law cl_law;               /* compression or runtime law */
typedef struct cl_records cl_records;       /* experiment records */
typedef struct cl_fit_report cl_fit_report;
typedef struct cl_registry cl_registry;

CL_API const char* cl_version(void);
CL_API const char* cl_last_error(void);
CL_API const char* cl_status_name(cl_status status);
CL_API void cl_string_free(char* s);

/* ---- laws ---------------------------------------------------------------- */

CL_API cl_status cl_law_create(double alpha, double beta, double gamma,
                               double epsilon, cl_metric metric, cl_form form,
                               cl_law** out);
CL_API cl_status cl_runtime_law_create(double c, double beta, cl_law** out);
/* Accepts a law document or a fit report. */
CL_API cl_status cl_law_from_json(const char* json, int strict, cl_law** out);
CL_API void cl_law_destroy(cl_law* law);

CL_API int cl_law_is_runtime(const cl_law* law);
/* Any out pointer may be NULL. Runtime laws report c through `alpha_or_c`. */
CL_API cl_status cl_law_params(const cl_law* law, double* alpha_or_c,
                               double* beta, double* gamma, double* epsilon,
                               cl_metric* metric, cl_form* form);
CL_API cl_status cl_law_to_json(const cl_law* law, char** out);

/* Compression laws use (l0, r, d); runtime laws ignore l0 and d. */
CL_API cl_status cl_law_evaluate(const cl_law* law, double l0, double r,
                                 double d, double* out);
CL_API cl_status cl_evaluate_ablation_r(double alpha, double beta, double l0,
                                        double r, double* out);
CL_API cl_status cl_evaluate_ablation_d(double alpha, double gamma,
                                        double epsilon, double l0, double d,
                                        double* out);
/* JSON array of violated sign conditions; "[]" when feasible. */
CL_API cl_status cl_law_check_feasibility(const cl_law* law, char** out_json);

/* 1 - (1 + r)^beta; *warned is set to 1 when beta >= 0 forced a zero. */
CL_API cl_status cl_predict_speedup(double runtime_beta, double r, double* out,
                                    int* warned);

/* ---- recovery ------------------------------------------------------------ */

CL_API cl_status cl_classify_regime(double beta, double sigma, cl_metric metric,
                                    cl_regime* regime, double* boundary);
CL_API cl_status cl_critical_ratio(double beta, double sigma, cl_metric metric,
                                   double* out);
/* *recoverable is 0 when no RFT size reaches sigma; *d_min is then NaN. */
CL_API cl_status cl_min_rft_size(const cl_law* law, double sigma, double r,
                                 int* recoverable, double* d_min);
CL_API cl_status cl_recoverable(const cl_law* law, double sigma, double r,
                                double d, int* out);

/* ---- records and fitting ------------------------------------------------- */

/* Lenient mode (strict == 0) skips bad rows; their diagnostics are returned
 * as a JSON array through `diagnostics` when it is not NULL. */
CL_API cl_status cl_records_from_csv(const char* csv, int strict,
                                     cl_records** out, char** diagnostics);
CL_API size_t cl_records_count(const cl_records* records);
CL_API cl_status cl_records_to_csv(const cl_records* records, char** out);
CL_API void cl_records_destroy(cl_records* records);

CL_API cl_status cl_fit(const cl_records* records, double epsilon, cl_form form,
                        cl_fit_report** out);
CL_API cl_status cl_fit_report_set_d_unit(cl_fit_report* report,
                                          const char* unit);
CL_API cl_status cl_fit_report_to_json(const cl_fit_report* report, char** out);
CL_API cl_status cl_fit_report_law(const cl_fit_report* report, cl_law** out);
CL_API void cl_fit_report_destroy(cl_fit_report* report);

/* ---- synthetic data ------------------------------------------------------ */

CL_API cl_status cl_synthesize(const cl_law* truth, const double* l0_values,
                               size_t n_l0, const double* r_values, size_t n_r,
                               const double* d_values, size_t n_d,
                               double noise_std, uint64_t seed,
                               const char* model_id, cl_records** out);

/* ---- frontier tables ----------------------------------------------------- */

CL_API cl_status cl_frontier(const cl_law* law, const double* l0_values,
                             size_t n_l0, const double* r_values, size_t n_r,
                             const double* d_values, size_t n_d,
                             cl_output_format format, char** out);

/* ---- registry and planning ----------------------------------------------- */

CL_API cl_status cl_registry_from_json(const char* json, int strict,
                                       cl_registry** out);
CL_API size_t cl_registry_size(const cl_registry* registry);
CL_API cl_status cl_registry_to_json(const cl_registry* registry, char** out);
CL_API void cl_registry_destroy(cl_registry* registry);

/* default_l0 <= 0 or NaN means "none"; method may be NULL for all tags. */
CL_API cl_status cl_plan(const cl_registry* registry, double budget,
                         double rft_size, cl_metric metric, double max_ratio,
                         double default_l0, const char* method,
                         cl_output_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* COMPRESSLAW_COMPRESSLAW_H */
