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

// Logistic models: full-batch logistic regression and a per-sample SGD
// classifier. Both score with sigma(beta_0 + beta . x).

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "thermoforge/model.hpp"

namespace thermoforge {

/// Logistic sigmoid, evaluated in the branch form that never overflows.
double sigmoid(double z);

/// Mean negative log-likelihood of labels under probabilities sigma(z).
double log_loss_from_logits(const Eigen::VectorXd& z, const Eigen::VectorXi& labels);

struct LogisticParams {
  double learning_rate = 0.1;
  int n_epochs = 500;
  double l2 = 0.0;
  double threshold = 0.5;
};

void validate(const LogisticParams& params);

class LinearLogitModel final : public FittedModel {
 public:
  LinearLogitModel(std::string kind, Eigen::VectorXd coef, double intercept, double threshold,
                   std::vector<double> loss_history, nlohmann::json params);

  Task task() const override { return Task::kClassification; }
  std::string kind() const override { return kind_; }
  Eigen::Index n_features() const override { return coef_.size(); }
  /// sigma(beta_0 + beta . x).
  double predict_one(std::span<const double> x) const override;
  /// 1 iff sigma(z) >= threshold.
  int label_one(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

  const Eigen::VectorXd& coefficients() const { return coef_; }
  double intercept() const { return intercept_; }
  double threshold() const { return threshold_; }
  /// Mean log-loss at initialization (index 0) and after every epoch.
  const std::vector<double>& loss_history() const { return loss_history_; }

 private:
  std::string kind_;
  Eigen::VectorXd coef_;
  double intercept_;
  double threshold_;
  std::vector<double> loss_history_;
  nlohmann::json params_;
};

/// Full-batch gradient descent from zero on mean NLL + (l2/2)|beta|^2
/// (intercept unpenalized).
std::unique_ptr<LinearLogitModel> fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                               const LogisticParams& params = {});

struct SgdParams {
  double learning_rate = 0.1;
  int n_epochs = 500;
  bool fit_intercept = true;
  std::uint64_t seed = 42;
};

/// One logistic-loss step per sample, theta <- theta - lr (sigma(theta.x) - y) x,
/// visiting samples in a fresh permutation from stream (seed, "sgd_epoch", epoch).
std::unique_ptr<LinearLogitModel> fit_sgd_classifier(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                                     const SgdParams& params = {});

}  // namespace thermoforge
