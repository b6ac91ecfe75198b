// Copyright 2026 The Thermoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "thermoforge/errors.hpp"

namespace thermoforge {

namespace {

void check_lengths(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw InvalidArgument("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  if (a == 0) throw InvalidArgument("metrics of an empty sample");
}

void check_binary(const Eigen::VectorXi& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0 && v(i) != 1) throw InvalidArgument("labels must be 0 or 1");
  }
}

}  // namespace

RegressionMetrics regression_metrics(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
  check_lengths(y_true.size(), y_pred.size());
  RegressionMetrics m;
  m.n = static_cast<long>(y_true.size());
  const Eigen::ArrayXd e = (y_true - y_pred).array();
  const double ss_res = e.square().sum();
  m.mse = ss_res / static_cast<double>(m.n);
  m.mae = e.abs().mean();
  m.rmse = std::sqrt(m.mse);
  const double ss_tot = (y_true.array() - y_true.mean()).square().sum();
  if (ss_tot > 0.0) {
    m.r2 = 1.0 - ss_res / ss_tot;
  } else if (ss_res == 0.0) {
    m.r2 = 0.0;
  } else {
    m.r2 = kR2Undefined;
    m.r2_undefined = true;
  }
  return m;
}

ConfusionMatrix confusion_matrix(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted) {
  check_lengths(truth.size(), predicted.size());
  check_binary(truth);
  check_binary(predicted);
  ConfusionMatrix cm;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth(i) == 0) {
      (predicted(i) == 0 ? cm.tn : cm.fp)++;
    } else {
      (predicted(i) == 0 ? cm.fn : cm.tp)++;
    }
  }
  return cm;
}

F1Score f1_score(const ConfusionMatrix& cm) {
  const long denom = 2 * cm.tp + cm.fp + cm.fn;
  if (denom == 0) return {0.0, true};
  return {2.0 * static_cast<double>(cm.tp) / static_cast<double>(denom), false};
}

double roc_auc(const Eigen::VectorXi& truth, const Eigen::VectorXd& scores) {
  check_lengths(truth.size(), scores.size());
  check_binary(truth);
  double wins = 0.0;
  long pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) (truth(i) == 1 ? pos : neg)++;
  if (pos == 0 || neg == 0) throw InvalidArgument("ROC-AUC is undefined for single-class truth");
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth(i) != 1) continue;
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth(j) != 0) continue;
      if (scores(i) > scores(j)) {
        wins += 1.0;
      } else if (scores(i) == scores(j)) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(pos) * static_cast<double>(neg));
}

std::vector<std::pair<double, double>> roc_points(const Eigen::VectorXi& truth, const Eigen::VectorXd& scores) {
  check_lengths(truth.size(), scores.size());
  check_binary(truth);
  const long pos = truth.sum();
  const long neg = static_cast<long>(truth.size()) - pos;
  if (pos == 0 || neg == 0) throw InvalidArgument("ROC curve is undefined for single-class truth");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(truth.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return scores(a) > scores(b); });
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
  long tp = 0, fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double s = scores(order[k]);
    while (k < order.size() && scores(order[k]) == s) {
      (truth(order[k]) == 1 ? tp : fp)++;
      ++k;
    }
    pts.emplace_back(static_cast<double>(fp) / static_cast<double>(neg), static_cast<double>(tp) / static_cast<double>(pos));
  }
  return pts;
}

double trapezoid_area(const std::vector<std::pair<double, double>>& p) {
  double a = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) a += (p[i].first - p[i - 1].first) * (p[i].second + p[i - 1].second) / 2.0;
  return a;
}

ClassificationMetrics classification_metrics(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted,
                                             const Eigen::VectorXd& scores) {
  check_lengths(truth.size(), scores.size());
  ClassificationMetrics m;
  m.confusion = confusion_matrix(truth, predicted);
  m.accuracy = static_cast<double>(m.confusion.tp + m.confusion.tn) / static_cast<double>(m.confusion.total());
  const F1Score f = f1_score(m.confusion);
  m.f1 = f.value;
  m.f1_zero_denominator = f.zero_denominator;
  const long pos = truth.sum();
  if (pos > 0 && pos < truth.size()) m.roc_auc = roc_auc(truth, scores);
  return m;
}

std::vector<std::pair<double, double>> residual_series(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred) {
  check_lengths(y_true.size(), y_pred.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(y_true.size()));
  for (Eigen::Index i = 0; i < y_true.size(); ++i) out.emplace_back(y_pred(i), y_true(i) - y_pred(i));
  return out;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("inverse normal CDF needs p in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::vector<std::pair<double, double>> qq_points(const Eigen::VectorXd& residuals) {
  const Eigen::Index n = residuals.size();
  if (n < 3) throw InvalidArgument("Q-Q plot needs at least 3 residuals");
  const double mean = residuals.mean();
  const double sd = std::sqrt((residuals.array() - mean).square().mean());
  std::vector<double> z(residuals.data(), residuals.data() + n);
  for (double& v : z) v = sd > 0.0 ? (v - mean) / sd : 0.0;
  std::sort(z.begin(), z.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.emplace_back(inverse_normal_cdf(p), z[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace thermoforge
