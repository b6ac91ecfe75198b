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

// Evaluation metrics and diagnostic series. All functions are pure.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace thermoforge {

struct RegressionMetrics {
  double mse = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  long n = 0;
  /// Set when the truth is constant but the predictions miss it; r2 then
  /// holds the sentinel kR2Undefined instead of minus infinity.
  bool r2_undefined = false;
};

inline constexpr double kR2Undefined = -1e300;

RegressionMetrics regression_metrics(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Cells in (TN, FP, FN, TP) order.
struct ConfusionMatrix {
  long tn = 0, fp = 0, fn = 0, tp = 0;
  long total() const { return tn + fp + fn + tp; }
};

ConfusionMatrix confusion_matrix(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted);

struct F1Score {
  double value = 0.0;
  bool zero_denominator = false;  // no predicted and no actual positives
};

/// F1 of class 1 from the confusion cells: 2TP / (2TP + FP + FN).
F1Score f1_score(const ConfusionMatrix& cm);

/// Mann-Whitney AUC: (wins + ties / 2) / (n_pos n_neg). Throws for single-class truth.
double roc_auc(const Eigen::VectorXi& truth, const Eigen::VectorXd& scores);

/// (FPR, TPR) from (0, 0) to (1, 1), one point per distinct score, descending.
std::vector<std::pair<double, double>> roc_points(const Eigen::VectorXi& truth, const Eigen::VectorXd& scores);
double trapezoid_area(const std::vector<std::pair<double, double>>& points);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  bool f1_zero_denominator = false;
  /// Empty when the truth has a single class.
  std::optional<double> roc_auc;
  ConfusionMatrix confusion;
};

ClassificationMetrics classification_metrics(const Eigen::VectorXi& truth, const Eigen::VectorXi& predicted,
                                             const Eigen::VectorXd& scores);

/// (prediction, y_true - prediction) pairs, in input order.
std::vector<std::pair<double, double>> residual_series(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_pred);

/// Inverse standard normal CDF (Acklam's rational approximation polished by
/// one Halley step against erfc).
double inverse_normal_cdf(double p);

/// (theoretical quantile at (i - 0.5) / n, sorted standardized residual).
std::vector<std::pair<double, double>> qq_points(const Eigen::VectorXd& residuals);

}  // namespace thermoforge
