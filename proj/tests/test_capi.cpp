// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "compresslaw/compresslaw.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cl_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(cl_version(), "1.0.0");
  EXPECT_STREQ(cl_status_name(CL_OK), "ok");
  EXPECT_STREQ(cl_status_name(CL_E_REGIME), "regime");
}

TEST(CApi, LawLifecycle) {
  cl_law* law = nullptr;
  ASSERT_EQ(cl_law_create(0.63, 1.72, 1.16, 1.0, CL_METRIC_LOSS, CL_FORM_FULL, &law), CL_OK);
  double v = 0;
  ASSERT_EQ(cl_law_evaluate(law, 2.0, 0.5, 0.0, &v), CL_OK);
  EXPECT_NEAR(v, 6.945774153276351, 1e-12);
  EXPECT_EQ(cl_law_evaluate(law, 2.0, 1.5, 0.0, &v), CL_E_DOMAIN);
  EXPECT_NE(std::string(cl_last_error()).find("r"), std::string::npos);

  char* json = nullptr;
  ASSERT_EQ(cl_law_to_json(law, &json), CL_OK);
  const std::string doc = take(json);
  cl_law* back = nullptr;
  ASSERT_EQ(cl_law_from_json(doc.c_str(), 1, &back), CL_OK);
  double a, b, g, e;
  cl_metric m;
  cl_form f;
  ASSERT_EQ(cl_law_params(back, &a, &b, &g, &e, &m, &f), CL_OK);
  EXPECT_EQ(a, 0.63);
  EXPECT_EQ(b, 1.72);
  EXPECT_EQ(g, 1.16);
  EXPECT_EQ(m, CL_METRIC_LOSS);
  EXPECT_EQ(f, CL_FORM_FULL);
  EXPECT_EQ(cl_law_is_runtime(back), 0);

  ASSERT_EQ(cl_law_check_feasibility(law, &json), CL_OK);
  EXPECT_EQ(take(json), "[]");
  cl_law_destroy(back);
  cl_law_destroy(law);
  cl_law_destroy(nullptr);
}

TEST(CApi, InvalidArguments) {
  cl_law* law = nullptr;
  EXPECT_EQ(cl_law_create(1, 1, 1, 0.0, CL_METRIC_LOSS, CL_FORM_FULL, &law), CL_E_INVALID_ARGUMENT);
  EXPECT_EQ(law, nullptr);
  EXPECT_EQ(cl_law_create(1, 1, 1, 1.0, CL_METRIC_LOSS, CL_FORM_FULL, nullptr), CL_E_INVALID_ARGUMENT);
  EXPECT_EQ(cl_law_from_json("{", 1, &law), CL_E_PARSE);
  double v;
  EXPECT_EQ(cl_law_evaluate(nullptr, 1, 0, 0, &v), CL_E_INVALID_ARGUMENT);
}

TEST(CApi, Ablations) {
  double v;
  ASSERT_EQ(cl_evaluate_ablation_r(0.74, 2.02, 2.0, 0.3, &v), CL_OK);
  EXPECT_NEAR(v, 2.837447067019679, 1e-12);
  ASSERT_EQ(cl_evaluate_ablation_d(1.30, 1.46, 1.0, 2.0, 0.0, &v), CL_OK);
  EXPECT_NEAR(v, 6.773962498900216, 1e-12);
}

TEST(CApi, RecoveryAndSpeedup) {
  double rc, boundary, speed;
  cl_regime regime;
  ASSERT_EQ(cl_critical_ratio(-1.18, 0.8, CL_METRIC_ACCURACY, &rc), CL_OK);
  EXPECT_NEAR(rc, 0.2081674464332484, 1e-12);
  EXPECT_EQ(cl_critical_ratio(-1.18, 0.3, CL_METRIC_ACCURACY, &rc), CL_E_REGIME);
  ASSERT_EQ(cl_classify_regime(-1.18, 0.4, CL_METRIC_ACCURACY, &regime, &boundary), CL_OK);
  EXPECT_EQ(regime, CL_REGIME_ALWAYS);
  EXPECT_NEAR(boundary, 0.4413514981453274, 1e-12);

  cl_law* law = nullptr;
  ASSERT_EQ(cl_law_create(1.0, -1.18, -0.14, 1.0, CL_METRIC_ACCURACY, CL_FORM_FULL, &law), CL_OK);
  int ok = -1;
  double d = 0;
  ASSERT_EQ(cl_min_rft_size(law, 0.8, 0.19, &ok, &d), CL_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_NEAR(d, 6.341208518, 1e-6);
  ASSERT_EQ(cl_min_rft_size(law, 0.8, 0.25, &ok, &d), CL_OK);
  EXPECT_EQ(ok, 0);
  EXPECT_TRUE(std::isnan(d));
  ASSERT_EQ(cl_recoverable(law, 0.8, 0.19, 10.0, &ok), CL_OK);
  EXPECT_EQ(ok, 1);
  cl_law_destroy(law);

  int warned = -1;
  ASSERT_EQ(cl_predict_speedup(-0.67, 0.5, &speed, &warned), CL_OK);
  EXPECT_NEAR(speed, 0.2378879, 1e-6);
  EXPECT_EQ(warned, 0);
}

TEST(CApi, SynthesizeFitPipeline) {
  cl_law* truth = nullptr;
  ASSERT_EQ(cl_law_create(0.63, 1.72, 1.16, 1.0, CL_METRIC_LOSS, CL_FORM_FULL, &truth), CL_OK);
  const double l0[] = {0.5, 1.0, 2.0}, r[] = {0.1, 0.5, 0.9}, d[] = {0, 4, 40};
  cl_records* recs = nullptr;
  ASSERT_EQ(cl_synthesize(truth, l0, 3, r, 3, d, 3, 0.0, 1, "syn", &recs), CL_OK);
  EXPECT_EQ(cl_records_count(recs), 27u);

  char* csv = nullptr;
  ASSERT_EQ(cl_records_to_csv(recs, &csv), CL_OK);
  cl_records* again = nullptr;
  ASSERT_EQ(cl_records_from_csv(csv, 1, &again, nullptr), CL_OK);
  cl_string_free(csv);
  EXPECT_EQ(cl_records_count(again), 27u);

  cl_fit_report* rep = nullptr;
  ASSERT_EQ(cl_fit(again, 1.0, CL_FORM_FULL, &rep), CL_OK);
  ASSERT_EQ(cl_fit_report_set_d_unit(rep, "samples"), CL_OK);
  char* json = nullptr;
  ASSERT_EQ(cl_fit_report_to_json(rep, &json), CL_OK);
  EXPECT_NE(take(json).find("\"d_unit\": \"samples\""), std::string::npos);
  cl_law* fitted = nullptr;
  ASSERT_EQ(cl_fit_report_law(rep, &fitted), CL_OK);
  double a, b, g;
  ASSERT_EQ(cl_law_params(fitted, &a, &b, &g, nullptr, nullptr, nullptr), CL_OK);
  EXPECT_NEAR(a, 0.63, 1e-8);
  EXPECT_NEAR(b, 1.72, 1e-8);
  EXPECT_NEAR(g, 1.16, 1e-8);

  cl_law_destroy(fitted);
  cl_fit_report_destroy(rep);
  cl_records_destroy(again);
  cl_records_destroy(recs);
  cl_law_destroy(truth);
}

TEST(CApi, LenientCsvDiagnostics) {
  cl_records* recs = nullptr;
  char* diag = nullptr;
  ASSERT_EQ(cl_records_from_csv("model_id,metric,l0,r,d,l\nm,loss,1,0.1,0,1\nm,loss,1,1.2,0,1\n",
                                0, &recs, &diag),
            CL_OK);
  EXPECT_EQ(cl_records_count(recs), 1u);
  EXPECT_NE(take(diag).find("\"row\":3"), std::string::npos);
  cl_records_destroy(recs);
  EXPECT_EQ(cl_records_from_csv("model_id,metric,l0,r,d,l\nm,loss,1,1.2,0,1\n", 1, &recs, nullptr),
            CL_E_DOMAIN);
}

TEST(CApi, SingularFitReportsStatus) {
  cl_records* recs = nullptr;
  ASSERT_EQ(cl_records_from_csv("model_id,metric,l0,r,d,l\n"
                                "m,loss,2,0.1,3,1\nm,loss,2,0.2,3,1.1\n"
                                "m,loss,2,0.3,3,1.2\nm,loss,2,0.4,3,1.3\n",
                                1, &recs, nullptr),
            CL_OK);
  cl_fit_report* rep = nullptr;
  EXPECT_EQ(cl_fit(recs, 1.0, CL_FORM_FULL, &rep), CL_E_SINGULAR);
  EXPECT_NE(std::string(cl_last_error()).find("log_l0"), std::string::npos);
  cl_records_destroy(recs);
}

TEST(CApi, FrontierAndPlan) {
  cl_law* law = nullptr;
  ASSERT_EQ(cl_law_create(0.98, -1.03, -0.14, 1.0, CL_METRIC_ACCURACY, CL_FORM_FULL, &law), CL_OK);
  const double l0[] = {0.6}, r[] = {0.1, 0.2}, d[] = {0.0};
  char* out = nullptr;
  ASSERT_EQ(cl_frontier(law, l0, 1, r, 2, d, 1, CL_FORMAT_CSV, &out), CL_OK);
  const std::string csv = take(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "l0,r,d,predicted");
  cl_law_destroy(law);

  std::ifstream in(COMPRESSLAW_REGISTRY_PATH);
  std::ostringstream os;
  os << in.rdbuf();
  cl_registry* reg = nullptr;
  ASSERT_EQ(cl_registry_from_json(os.str().c_str(), 1, &reg), CL_OK);
  EXPECT_EQ(cl_registry_size(reg), 44u);
  ASSERT_EQ(cl_plan(reg, 1.5e9, 0.0, CL_METRIC_ACCURACY, 0.9, 0.6, "calibration-free",
                    CL_FORMAT_JSON, &out),
            CL_OK);
  const std::string plan = take(out);
  EXPECT_LT(plan.find("Qwen-2.5-3B"), plan.find("Qwen-2.5-7B"));
  EXPECT_EQ(cl_plan(reg, -1.0, 0.0, CL_METRIC_ACCURACY, 0.9, 0.6, nullptr, CL_FORMAT_JSON, &out),
            CL_E_INVALID_ARGUMENT);
  cl_registry_destroy(reg);
}
