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

#pragma once

#include <Eigen/Dense>

#include <json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thermoforge {

enum class Task { kRegression, kClassification };

inline const char* task_name(Task t) { return t == Task::kRegression ? "regression" : "classification"; }

struct Tree;

/// Row-major copy of a column-major feature matrix, for per-row prediction.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A trained predictor. Fitted models are immutable; prediction is pure and
/// safe to call from several threads.
class FittedModel {
 public:
  virtual ~FittedModel() = default;

  virtual Task task() const = 0;
  /// Stable identifier of the algorithm, e.g. "random_forest".
  virtual std::string kind() const = 0;
  virtual Eigen::Index n_features() const = 0;

  /// Regression value, or the ranking score used for ROC analysis.
  virtual double predict_one(std::span<const double> x) const = 0;
  /// Class label in {0, 1}. Only meaningful for classifiers.
  virtual int label_one(std::span<const double> x) const;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
  Eigen::VectorXi predict_labels(const Eigen::MatrixXd& x) const;

  /// Trees making up the model, in fit order. Empty for non-tree models.
  virtual std::vector<const Tree*> trees() const { return {}; }
  /// Raw (unnormalized) impurity decrease per feature, tree models only.
  virtual std::optional<Eigen::VectorXd> impurity_importance() const;

  virtual nlohmann::json to_json() const = 0;

 protected:
  void check_width(std::span<const double> x) const;
};

/// Normalized impurity-decrease importances (sum to 1; all zero when the
/// model never split). Throws UnsupportedOperation for non-tree models.
Eigen::VectorXd feature_importance(const FittedModel& model);

nlohmann::json to_json(const Eigen::VectorXd& v);
nlohmann::json to_json(const Eigen::MatrixXd& m);

}  // namespace thermoforge
