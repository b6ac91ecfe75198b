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

#include <memory>
#include <span>

#include "thermoforge/model.hpp"

namespace thermoforge {

double euclidean_distance(std::span<const double> a, std::span<const double> b);

struct KnnResult {
  int label = 0;
  double score = 0.0;  // fraction of class-1 neighbours
};

/// Majority vote among the k nearest training rows. Equal distances go to the
/// lower training index; a tied vote goes to the class whose neighbours are
/// nearer on average, then to class 0.
KnnResult knn_predict(const Eigen::MatrixXd& train_x, const Eigen::VectorXi& train_labels,
                      std::span<const double> query, int k);

class KnnModel final : public FittedModel {
 public:
  KnnModel(Eigen::MatrixXd train_x, Eigen::VectorXi train_labels, int k);

  Task task() const override { return Task::kClassification; }
  std::string kind() const override { return "knn"; }
  Eigen::Index n_features() const override { return train_x_.cols(); }
  double predict_one(std::span<const double> x) const override;
  int label_one(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

  int k() const { return k_; }

 private:
  Eigen::MatrixXd train_x_;
  Eigen::VectorXi train_labels_;
  int k_;
};

std::unique_ptr<KnnModel> fit_knn(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels, int k = 5);

}  // namespace thermoforge
