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

// Tree ensembles: bagged forests, extremely randomized trees, gradient
// boosting (plain, stochastic, second-order, ordered/oblivious) and AdaBoost.
// Every ensemble is a deterministic function of (data, config, seed): each
// tree or stage draws from its own `(seed, purpose, index)` stream.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <vector>

#include "thermoforge/tree.hpp"

namespace thermoforge {

// Forests -----------------------------------------------------------------------

struct ForestConfig {
  int n_trees = 100;
  int max_depth = 6;
  int min_samples_leaf = 1;
  /// Features tried per split; 0 picks ceil(p/3) for regression and
  /// ceil(sqrt(p)) for classification.
  int feature_subset_size = 0;
  bool bootstrap = true;
  std::uint64_t seed = 42;
};

/// Extra-trees defaults: same as ForestConfig but without bootstrap.
ForestConfig extra_trees_defaults();

int default_feature_subset(Task task, Eigen::Index n_features);

class ForestModel final : public FittedModel {
 public:
  ForestModel(std::vector<Tree> trees, Task task, std::string kind, ForestConfig config);

  Task task() const override { return task_; }
  std::string kind() const override { return kind_; }
  Eigen::Index n_features() const override { return trees_.front().n_features; }
  /// Mean of tree outputs (regression) or fraction of trees voting class 1.
  double predict_one(std::span<const double> x) const override;
  /// Majority vote; an even split goes to class 0.
  int label_one(std::span<const double> x) const override;
  std::vector<const Tree*> trees() const override;
  nlohmann::json to_json() const override;

 private:
  std::vector<Tree> trees_;
  Task task_;
  std::string kind_;
  ForestConfig config_;
};

std::unique_ptr<ForestModel> fit_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                               const ForestConfig& config);
std::unique_ptr<ForestModel> fit_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                               const ForestConfig& config);
std::unique_ptr<ForestModel> fit_extra_trees(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                             const ForestConfig& config = extra_trees_defaults());
std::unique_ptr<ForestModel> fit_extra_trees(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                             const ForestConfig& config = extra_trees_defaults());

// Gradient boosting ------------------------------------------------------------------

struct BoostConfig {
  int n_stages = 100;
  double learning_rate = 0.1;
  int max_depth = 3;
  int min_samples_leaf = 1;
  /// Row fraction drawn without replacement per stage; < 1 is stochastic boosting.
  double subsample_fraction = 1.0;
  double lambda_l2 = 1.0;  // second-order variant only
  double gamma = 0.0;      // second-order variant only
  std::uint64_t seed = 42;
};

/// Additive model F(x) = base + sum_m lr * tree_m(x), optionally passed
/// through the logistic link for classification.
class BoostedModel final : public FittedModel {
 public:
  BoostedModel(double base, double learning_rate, std::vector<Tree> trees, Task task, std::string kind,
               std::vector<double> train_loss, nlohmann::json params);

  Task task() const override { return task_; }
  std::string kind() const override { return kind_; }
  Eigen::Index n_features() const override { return trees_.empty() ? n_features_ : trees_.front().n_features; }
  /// Regression value, or sigma(F) for classification.
  double predict_one(std::span<const double> x) const override;
  /// Raw additive score F(x) before any link.
  double raw_score(std::span<const double> x) const;
  std::vector<const Tree*> trees() const override;
  nlohmann::json to_json() const override;

  double base() const { return base_; }
  /// Training loss before stage 1 (index 0) and after every stage: MSE for
  /// regression, mean log-loss for classification.
  const std::vector<double>& train_loss() const { return train_loss_; }
  void set_n_features(Eigen::Index p) { n_features_ = p; }

 private:
  double base_;
  double learning_rate_;
  std::vector<Tree> trees_;
  Task task_;
  std::string kind_;
  std::vector<double> train_loss_;
  nlohmann::json params_;
  Eigen::Index n_features_ = 0;
};

void validate(const BoostConfig& config);

/// F_0 = mean(y); each stage fits a CART to the current residuals.
std::unique_ptr<BoostedModel> fit_gradient_boosting_regressor(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                              const BoostConfig& config);
/// Binomial deviance boosting; leaves take one Newton step sum(r) / sum(p(1-p)).
std::unique_ptr<BoostedModel> fit_gradient_boosting_classifier(const Eigen::MatrixXd& x,
                                                               const Eigen::VectorXi& labels,
                                                               const BoostConfig& config);
/// Squared loss with g = F - y, h = 1; splits maximize the regularized gain and
/// are rejected when the gain is not positive; leaf weight is -G / (H + lambda).
std::unique_ptr<BoostedModel> fit_second_order_boosting(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                        const BoostConfig& config);

// Ordered boosting on oblivious trees ---------------------------------------------------

/// One (feature, threshold) per level; leaf index bit k (MSB first) is the
/// outcome at level k, 1 meaning "goes right".
struct ObliviousTree {
  std::vector<int> features;
  std::vector<double> thresholds;
  std::vector<double> leaf_values;  // 2^depth entries
  std::vector<double> leaf_samples;
  /// SSE reduction / n of each node, indexed [level][path prefix].
  std::vector<std::vector<double>> node_decrease;
  int n_features = 0;

  int depth() const { return static_cast<int>(features.size()); }
  int leaf_of(std::span<const double> x) const;
  double predict(std::span<const double> x) const { return leaf_values[static_cast<std::size_t>(leaf_of(x))]; }
  /// Equivalent full binary Tree, for export and importance.
  Tree to_tree() const;
};

struct OrderedBoostConfig {
  int n_stages = 100;
  double learning_rate = 0.1;
  int depth = 4;
  int n_permutations = 4;
  /// When false every permutation is the identity (diagnostics only).
  bool shuffle = true;
  std::uint64_t seed = 42;
};

/// Average of `n_permutations` ordered-boosting ensembles. Within each, the
/// tree structure at every stage is chosen on ordered residuals
/// y_i - M_i, where the supporting prediction M_i only ever absorbs leaf
/// means of samples that precede i in that ensemble's permutation.
class OrderedBoostingModel final : public FittedModel {
 public:
  struct Ensemble {
    std::vector<std::size_t> permutation;
    std::vector<ObliviousTree> trees;
    Eigen::VectorXd supporting;  // final M_i per training sample
  };

  OrderedBoostingModel(double base, OrderedBoostConfig config, std::vector<Ensemble> ensembles);

  Task task() const override { return Task::kRegression; }
  std::string kind() const override { return "ordered_boosting"; }
  Eigen::Index n_features() const override { return n_features_; }
  double predict_one(std::span<const double> x) const override;
  std::vector<const Tree*> trees() const override;
  nlohmann::json to_json() const override;

  double base() const { return base_; }
  const std::vector<Ensemble>& ensembles() const { return ensembles_; }

 private:
  double base_;
  OrderedBoostConfig config_;
  std::vector<Ensemble> ensembles_;
  std::vector<Tree> expanded_;
  Eigen::Index n_features_ = 0;
};

std::unique_ptr<OrderedBoostingModel> fit_ordered_boosting(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                           const OrderedBoostConfig& config);

/// Greedy oblivious tree on `residual` over all rows (squared loss, leaf = mean).
ObliviousTree grow_oblivious_tree(const Eigen::MatrixXd& x, const Eigen::VectorXd& residual, int depth);

// AdaBoost ---------------------------------------------------------------------------

struct AdaBoostConfig {
  int n_stages = 50;
  /// Depth of each weak learner; 0 picks 1 (stumps) for classification, 3 for regression.
  int base_depth = 0;
};

/// Discrete AdaBoost (labels mapped to -1/+1) or AdaBoost.R2 with linear loss.
class AdaBoostModel final : public FittedModel {
 public:
  AdaBoostModel(std::vector<Tree> trees, std::vector<double> stage_weights, Task task,
                std::vector<Eigen::VectorXd> weight_history);

  Task task() const override { return task_; }
  std::string kind() const override { return "adaboost"; }
  Eigen::Index n_features() const override { return trees_.front().n_features; }
  /// Classification: weighted vote sum(alpha_m h_m(x)), h in {-1,+1}.
  /// Regression: weighted median of stage predictions.
  double predict_one(std::span<const double> x) const override;
  /// Sign of the weighted vote; a zero vote is class 1.
  int label_one(std::span<const double> x) const override;
  std::vector<const Tree*> trees() const override;
  nlohmann::json to_json() const override;

  const std::vector<double>& stage_weights() const { return stage_weights_; }
  /// Sample weights after each completed stage.
  const std::vector<Eigen::VectorXd>& weight_history() const { return weight_history_; }

 private:
  std::vector<Tree> trees_;
  std::vector<double> stage_weights_;
  Task task_;
  std::vector<Eigen::VectorXd> weight_history_;
};

std::unique_ptr<AdaBoostModel> fit_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                            const AdaBoostConfig& config = {});
std::unique_ptr<AdaBoostModel> fit_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                            const AdaBoostConfig& config = {});

}  // namespace thermoforge
