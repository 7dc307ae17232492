// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include "compresslaw/regress.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "compresslaw/error.hpp"

namespace compresslaw {

namespace {

std::string row_context(std::size_t index, const ExperimentRecord& rec) {
  std::ostringstream os;
  os << "record " << index;
  if (!rec.model_id.empty()) os << " (" << rec.model_id << ")";
  return os.str();
}

}  // namespace

void validate(const ExperimentRecord& rec) {
  auto fail = [](const char* field, double v, const char* rule) {
    std::ostringstream os;
    os << "field '" << field << "' = " << v << " violates " << rule;
    throw DomainError(os.str());
  };
  if (!std::isfinite(rec.l0) || rec.l0 <= 0.0) fail("l0", rec.l0, "l0 > 0");
  if (!std::isfinite(rec.r) || rec.r < 0.0 || rec.r >= 1.0) fail("r", rec.r, "0 <= r < 1");
  if (!std::isfinite(rec.d) || rec.d < 0.0) fail("d", rec.d, "d >= 0");
  if (!std::isfinite(rec.l) || rec.l <= 0.0) fail("l", rec.l, "l > 0");
}

std::size_t regressor_count(Form form) noexcept {
  return form == Form::Full ? 3 : 2;
}

Design build_design(std::span<const ExperimentRecord> records, double epsilon,
                    Form form) {
  const std::size_t p = regressor_count(form);
  const std::size_t n = records.size();
  if (n < p + 1) {
    std::ostringstream os;
    os << "form '" << to_string(form) << "' needs at least " << p + 1
       << " records, got " << n;
    throw InvalidArgument(os.str());
  }
  const MetricKind metric = records.front().metric;
  for (std::size_t i = 0; i < n; ++i) {
    if (records[i].metric != metric) {
      throw InvalidArgument("mixed metric kinds: " + row_context(i, records[i]) +
                            " is " + std::string(to_string(records[i].metric)) +
                            ", first record is " + std::string(to_string(metric)));
    }
  }
  if (form == Form::Runtime && metric != MetricKind::Runtime) {
    throw InvalidArgument("runtime form requires runtime records");
  }

  Design design;
  design.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  design.y.resize(static_cast<Eigen::Index>(n));
  switch (form) {
    case Form::Full: design.columns = {"log_l0", "log_1p_r", "log_d_factor"}; break;
    case Form::RatioOnly: design.columns = {"log_l0", "log_1p_r"}; break;
    case Form::DataOnly: design.columns = {"log_l0", "log_d_factor"}; break;
    case Form::Runtime: design.columns = {"intercept", "log_1p_r"}; break;
  }
  design.has_intercept = form == Form::Runtime;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& rec = records[i];
    try {
      validate(rec);
    } catch (const DomainError& e) {
      throw DomainError(row_context(i, rec) + ": " + e.what());
    }
    const LogFeatures f = log_features(rec.l0, rec.r, rec.d, epsilon);
    const auto row = static_cast<Eigen::Index>(i);
    switch (form) {
      case Form::Full: design.x.row(row) << f.log_l0, f.log_ratio, f.log_data; break;
      case Form::RatioOnly: design.x.row(row) << f.log_l0, f.log_ratio; break;
      case Form::DataOnly: design.x.row(row) << f.log_l0, f.log_data; break;
      case Form::Runtime: design.x.row(row) << 1.0, f.log_ratio; break;
    }
    design.y(row) = std::log(rec.l);
    if (!design.x.row(row).allFinite() || !std::isfinite(design.y(row))) {
      throw DomainError(row_context(i, rec) + ": non-finite log transform");
    }
  }
  return design;
}

OlsResult ols_fit(const Design& design) {
  const auto& x = design.x;
  const auto& y = design.y;
  const auto n = x.rows();
  const auto p = x.cols();
  if (p == 0 || n <= p) {
    throw InvalidArgument("least squares needs more rows than columns");
  }
  if (y.size() != n) throw InvalidArgument("design and response sizes differ");
  if (!x.allFinite() || !y.allFinite()) {
    throw DomainError("design or response contains non-finite values");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(p - 1);
  const double cond = smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber)) {
    // Columns loading on the weakest singular direction are the collinear set.
    const Eigen::VectorXd weak = svd.matrixV().col(p - 1);
    std::ostringstream os;
    os << "singular design (condition number " << cond << " exceeds "
       << kMaxConditionNumber << "); near-collinear columns:";
    const double peak = weak.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (std::abs(weak(j)) >= 0.1 * peak) {
        os << ' '
           << (static_cast<std::size_t>(j) < design.columns.size()
                   ? design.columns[static_cast<std::size_t>(j)]
                   : "x" + std::to_string(j));
      }
    }
    throw SingularDesignError(os.str());
  }

  OlsResult out;
  out.coefficients = x.colPivHouseholderQr().solve(y);
  out.residuals = y - x * out.coefficients;

  const double ssr = out.residuals.squaredNorm();
  const double dn = static_cast<double>(n);
  const double dp = static_cast<double>(p);
  double total;
  double model_df;
  double adj_scale;
  if (design.has_intercept) {
    total = (y.array() - y.mean()).matrix().squaredNorm();
    model_df = dp - 1.0;
    adj_scale = (dn - 1.0) / (dn - dp);
  } else {
    total = y.squaredNorm();
    model_df = dp;
    adj_scale = dn / (dn - dp);
  }

  FitStatistics& st = out.stats;
  st.n = static_cast<std::size_t>(n);
  st.p = static_cast<std::size_t>(p);
  if (total > 0.0) {
    st.r_squared = std::max(0.0, 1.0 - ssr / total);
  } else {
    st.r_squared = ssr == 0.0 ? 1.0 : 0.0;
  }
  st.adj_r_squared = 1.0 - (1.0 - st.r_squared) * adj_scale;
  const double unexplained = 1.0 - st.r_squared;
  if (model_df <= 0.0) {
    st.f_statistic = 0.0;
  } else if (unexplained <= 0.0) {
    st.f_statistic = std::numeric_limits<double>::infinity();
  } else {
    st.f_statistic = (st.r_squared / model_df) / (unexplained / (dn - dp));
  }
  st.residual_std = std::sqrt(ssr / (dn - dp));
  st.condition_number = cond;
  return out;
}

OlsResult ols_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  bool has_intercept) {
  Design design{x, y, {}, has_intercept};
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    design.columns.push_back("x" + std::to_string(j));
  }
  return ols_fit(design);
}

FitReport fit_law(std::span<const ExperimentRecord> records, double epsilon,
                  Form form) {
  if (records.empty()) throw InvalidArgument("no records to fit");
  const Design design = build_design(records, epsilon, form);
  const OlsResult ols = ols_fit(design);
  const MetricKind metric = records.front().metric;
  const auto& b = ols.coefficients;

  std::vector<SignViolation> violations;
  auto make_law = [&]() -> AnyLaw {
    if (form == Form::Runtime) {
      RuntimeLaw law(std::exp(b(0)), b(1));
      violations = check_feasibility(law);
      return law.with_stats(ols.stats);
    }
    const double alpha = b(0);
    const double beta = form == Form::DataOnly ? 0.0 : b(1);
    const double gamma = form == Form::Full ? b(2) : form == Form::DataOnly ? b(1) : 0.0;
    CompressionLaw law(alpha, beta, gamma, metric, epsilon, form);
    violations = check_feasibility(law);
    return law.with_stats(ols.stats);
  };
  FitReport report{form, make_law(), ols.stats, {}, {}, {}};
  report.residuals.assign(ols.residuals.data(),
                          ols.residuals.data() + ols.residuals.size());
  for (const auto& v : violations) {
    report.warnings.push_back("infeasible sign for " +
                              std::string(to_string(metric)) + ": " + v.message());
  }
  return report;
}

}  // namespace compresslaw
