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

// Binary decision trees and the greedy builder shared by every tree learner.
//
// Routing is `x[feature] <= threshold -> left`. Candidate thresholds are the
// midpoints between consecutive distinct sorted values of the node's samples
// (or a single uniform draw per feature for extremely randomized trees). Ties
// in split quality go to the lower feature index, then the lower threshold.

#pragma once

#include <Eigen/Dense>

#include <json.hpp>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "thermoforge/model.hpp"
#include "thermoforge/random.hpp"

namespace thermoforge {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  /// Leaf output: mean target, class-1 proportion or Newton weight.
  double value = 0.0;
  double n_samples = 0.0;
  double impurity = 0.0;
  /// Weighted impurity decrease (fraction of the root's weight), or the
  /// regularized gain for second-order trees. Zero on leaves.
  double impurity_decrease = 0.0;

  bool is_leaf() const { return feature < 0; }
};

/// Flat pre-order tree; node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;
  int n_features = 0;

  double predict(std::span<const double> x) const;
  /// Index of the leaf reached by `x`.
  int leaf_of(std::span<const double> x) const;
  int depth() const;
  int leaf_count() const;
  /// Adds this tree's per-node decreases into `acc` (length n_features).
  void accumulate_importance(Eigen::VectorXd& acc) const;
};

enum class SplitCriterion {
  kMse,     // weighted variance of targets
  kGini,    // binary Gini impurity, targets in {0, 1}
  kNewton,  // second-order gain on (gradient, hessian)
};

struct TreeParams {
  int max_depth = -1;  // negative: unbounded
  int min_samples_leaf = 1;
  int max_features = 0;  // 0: consider every feature at every node
  bool random_thresholds = false;
  double lambda_l2 = 0.0;  // kNewton only
  double gamma = 0.0;      // kNewton only
};

/// Per-sample inputs to the builder. For kMse/kGini `target` holds y and
/// `weight` the sample weights; for kNewton `target` holds gradients and
/// `weight` hessians.
struct TreeTargets {
  Eigen::VectorXd target;
  Eigen::VectorXd weight;
};

/// Grows one tree on the given rows (duplicates allowed, e.g. bootstrap).
/// `rng` is required when `max_features` restricts the candidates or
/// `random_thresholds` is set.
Tree grow_tree(const Eigen::MatrixXd& x, const TreeTargets& targets, std::span<const std::size_t> rows,
               SplitCriterion criterion, const TreeParams& params, CounterRng* rng = nullptr);

/// Weighted child impurity of splitting `rows` at (feature, threshold), computed
/// directly from the definition. Used by tests as an independent oracle.
double split_child_impurity(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::span<const std::size_t> rows,
                            int feature, double threshold, SplitCriterion criterion);

/// Binary Gini impurity sum_i p_i (1 - p_i).
double gini_impurity(double p_one);

// Export ---------------------------------------------------------------------

/// JSON rendering; see docs/tree_format.md.
nlohmann::json export_tree_json(const Tree& tree, const std::vector<std::string>& feature_names = {});
Tree parse_tree_json(const nlohmann::json& j);
/// Indented text, one node per line, depth-first.
std::string export_tree_text(const Tree& tree, const std::vector<std::string>& feature_names = {});

/// All trees of a tree-based model as a JSON array. Throws UnsupportedOperation otherwise.
nlohmann::json export_tree_structure(const FittedModel& model, const std::vector<std::string>& feature_names = {});

// Single CART models ------------------------------------------------------------

class TreeModel final : public FittedModel {
 public:
  TreeModel(Tree tree, Task task, std::string kind);

  Task task() const override { return task_; }
  std::string kind() const override { return kind_; }
  Eigen::Index n_features() const override { return tree_.n_features; }
  double predict_one(std::span<const double> x) const override;
  /// Majority class; a 50/50 leaf predicts class 0.
  int label_one(std::span<const double> x) const override;
  std::vector<const Tree*> trees() const override { return {&tree_}; }
  nlohmann::json to_json() const override;

  const Tree& tree() const { return tree_; }

 private:
  Tree tree_;
  Task task_;
  std::string kind_;
};

std::unique_ptr<TreeModel> fit_cart_regressor(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int max_depth = -1,
                                              int min_samples_leaf = 1);
/// Labels must be 0 or 1.
std::unique_ptr<TreeModel> fit_cart_classifier(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                               int max_depth = -1, int min_samples_leaf = 1);

/// Throws InvalidArgument unless every label is 0 or 1.
void check_binary_labels(const Eigen::VectorXi& labels);
void check_fit_input(const Eigen::MatrixXd& x, Eigen::Index n_targets);

}  // namespace thermoforge
