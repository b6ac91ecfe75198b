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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thermoforge/ensembles.hpp"
#include "thermoforge/errors.hpp"

namespace thermoforge {

namespace {

std::vector<std::size_t> all_rows(Eigen::Index n) {
  std::vector<std::size_t> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

nlohmann::json trees_json(const std::vector<Tree>& trees) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : trees) arr.push_back(export_tree_json(t));
  return arr;
}

std::unique_ptr<ForestModel> fit_forest(const Eigen::MatrixXd& x, const TreeTargets& targets, Task task,
                                        const ForestConfig& config, bool extra) {
  if (config.n_trees < 1) throw InvalidArgument("forest needs n_trees >= 1");
  const auto p = static_cast<int>(x.cols());
  const int subset = config.feature_subset_size == 0 ? default_feature_subset(task, x.cols()) : config.feature_subset_size;
  if (subset < 1 || subset > p) throw InvalidArgument("feature_subset_size must lie in [1, n_features]");

  TreeParams params;
  params.max_depth = config.max_depth;
  params.min_samples_leaf = config.min_samples_leaf;
  params.max_features = subset;
  params.random_thresholds = extra;
  const auto crit = task == Task::kRegression ? SplitCriterion::kMse : SplitCriterion::kGini;
  const auto n = static_cast<std::size_t>(x.rows());
  const char* tag = extra ? "extra_trees" : "random_forest";

  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(config.n_trees));
  for (int t = 0; t < config.n_trees; ++t) {
    auto rng = CounterRng::stream(config.seed, tag, static_cast<std::uint64_t>(t));
    std::vector<std::size_t> rows;
    if (config.bootstrap) {
      rows.resize(n);
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    } else {
      rows = all_rows(x.rows());
    }
    trees.push_back(grow_tree(x, targets, rows, crit, params, &rng));
  }
  return std::make_unique<ForestModel>(std::move(trees), task, extra ? "extra_trees" : "random_forest", config);
}

}  // namespace

ForestConfig extra_trees_defaults() {
  ForestConfig c;
  c.bootstrap = false;
  return c;
}

int default_feature_subset(Task task, Eigen::Index n_features) {
  const double p = static_cast<double>(n_features);
  const int k = task == Task::kRegression ? static_cast<int>(std::ceil(p / 3.0)) : static_cast<int>(std::ceil(std::sqrt(p)));
  return std::max(1, k);
}

ForestModel::ForestModel(std::vector<Tree> trees, Task task, std::string kind, ForestConfig config)
    : trees_(std::move(trees)), task_(task), kind_(std::move(kind)), config_(config) {}

double ForestModel::predict_one(std::span<const double> x) const {
  check_width(x);
  double acc = 0.0;
  for (const auto& t : trees_) {
    const double v = t.predict(x);
    acc += task_ == Task::kRegression ? v : (v > 0.5 ? 1.0 : 0.0);
  }
  return acc / static_cast<double>(trees_.size());
}

int ForestModel::label_one(std::span<const double> x) const { return predict_one(x) > 0.5 ? 1 : 0; }

std::vector<const Tree*> ForestModel::trees() const {
  std::vector<const Tree*> out;
  for (const auto& t : trees_) out.push_back(&t);
  return out;
}

nlohmann::json ForestModel::to_json() const {
  return {{"kind", kind_},
          {"task", task_name(task_)},
          {"params",
           {{"n_trees", config_.n_trees},
            {"max_depth", config_.max_depth},
            {"min_samples_leaf", config_.min_samples_leaf},
            {"feature_subset_size", config_.feature_subset_size},
            {"bootstrap", config_.bootstrap},
            {"seed", config_.seed}}},
          {"trees", trees_json(trees_)}};
}

std::unique_ptr<ForestModel> fit_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                               const ForestConfig& config) {
  check_fit_input(x, y.size());
  return fit_forest(x, {y, Eigen::VectorXd::Ones(y.size())}, Task::kRegression, config, false);
}

std::unique_ptr<ForestModel> fit_random_forest(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                               const ForestConfig& config) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  return fit_forest(x, {labels.cast<double>(), Eigen::VectorXd::Ones(labels.size())}, Task::kClassification, config,
                    false);
}

std::unique_ptr<ForestModel> fit_extra_trees(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                             const ForestConfig& config) {
  check_fit_input(x, y.size());
  return fit_forest(x, {y, Eigen::VectorXd::Ones(y.size())}, Task::kRegression, config, true);
}

std::unique_ptr<ForestModel> fit_extra_trees(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                             const ForestConfig& config) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  return fit_forest(x, {labels.cast<double>(), Eigen::VectorXd::Ones(labels.size())}, Task::kClassification, config,
                    true);
}

// AdaBoost ---------------------------------------------------------------------------

AdaBoostModel::AdaBoostModel(std::vector<Tree> trees, std::vector<double> stage_weights, Task task,
                             std::vector<Eigen::VectorXd> weight_history)
    : trees_(std::move(trees)),
      stage_weights_(std::move(stage_weights)),
      task_(task),
      weight_history_(std::move(weight_history)) {}

double AdaBoostModel::predict_one(std::span<const double> x) const {
  check_width(x);
  if (task_ == Task::kClassification) {
    double vote = 0.0;
    for (std::size_t m = 0; m < trees_.size(); ++m) {
      vote += stage_weights_[m] * (trees_[m].predict(x) > 0.5 ? 1.0 : -1.0);
    }
    return vote;
  }
  std::vector<std::pair<double, double>> preds;  // (prediction, stage weight)
  double total = 0.0;
  for (std::size_t m = 0; m < trees_.size(); ++m) {
    preds.emplace_back(trees_[m].predict(x), stage_weights_[m]);
    total += stage_weights_[m];
  }
  std::stable_sort(preds.begin(), preds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double cum = 0.0;
  for (const auto& [value, w] : preds) {
    cum += w;
    if (cum >= 0.5 * total) return value;
  }
  return preds.back().first;
}

int AdaBoostModel::label_one(std::span<const double> x) const { return predict_one(x) >= 0.0 ? 1 : 0; }

std::vector<const Tree*> AdaBoostModel::trees() const {
  std::vector<const Tree*> out;
  for (const auto& t : trees_) out.push_back(&t);
  return out;
}

nlohmann::json AdaBoostModel::to_json() const {
  return {{"kind", "adaboost"},
          {"task", task_name(task_)},
          {"variant", task_ == Task::kClassification ? "discrete" : "R2-linear"},
          {"stage_weights", stage_weights_},
          {"trees", trees_json(trees_)}};
}

std::unique_ptr<AdaBoostModel> fit_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                            const AdaBoostConfig& config) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  if (config.n_stages < 1) throw InvalidArgument("adaboost needs n_stages >= 1");
  const Eigen::Index n = x.rows();
  const Eigen::VectorXd y01 = labels.cast<double>();
  const Eigen::VectorXd ypm = 2.0 * y01.array() - 1.0;
  TreeParams params;
  params.max_depth = config.base_depth > 0 ? config.base_depth : 1;
  const auto rows = all_rows(n);
  const RowMatrix xr = x;

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  std::vector<Tree> trees;
  std::vector<double> alphas;
  std::vector<Eigen::VectorXd> history;
  for (int m = 0; m < config.n_stages; ++m) {
    Tree tree = grow_tree(x, {y01, w}, rows, SplitCriterion::kGini, params);
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      h(i) = tree.predict(std::span<const double>(xr.row(i).data(), static_cast<std::size_t>(x.cols()))) > 0.5 ? 1.0 : -1.0;
    }
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (h(i) != ypm(i)) err += w(i);
    }
    if (err <= 0.0) {
      // A perfect weak learner decides alone.
      trees = {std::move(tree)};
      alphas = {1.0};
      history.push_back(w);
      break;
    }
    if (err >= 0.5) {
      if (trees.empty()) {
        trees.push_back(std::move(tree));
        alphas.push_back(1.0);
        history.push_back(w);
      }
      break;
    }
    const double alpha = 0.5 * std::log((1.0 - err) / err);
    for (Eigen::Index i = 0; i < n; ++i) w(i) *= std::exp(-alpha * ypm(i) * h(i));
    w /= w.sum();
    trees.push_back(std::move(tree));
    alphas.push_back(alpha);
    history.push_back(w);
  }
  return std::make_unique<AdaBoostModel>(std::move(trees), std::move(alphas), Task::kClassification,
                                         std::move(history));
}

std::unique_ptr<AdaBoostModel> fit_adaboost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                            const AdaBoostConfig& config) {
  check_fit_input(x, y.size());
  if (config.n_stages < 1) throw InvalidArgument("adaboost needs n_stages >= 1");
  const Eigen::Index n = x.rows();
  TreeParams params;
  params.max_depth = config.base_depth > 0 ? config.base_depth : 3;
  const auto rows = all_rows(n);
  const RowMatrix xr = x;

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  std::vector<Tree> trees;
  std::vector<double> stage_weights;
  std::vector<Eigen::VectorXd> history;
  for (int m = 0; m < config.n_stages; ++m) {
    Tree tree = grow_tree(x, {y, w}, rows, SplitCriterion::kMse, params);
    Eigen::VectorXd abs_err(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      abs_err(i) = std::abs(y(i) - tree.predict(std::span<const double>(xr.row(i).data(), static_cast<std::size_t>(x.cols()))));
    }
    const double max_err = abs_err.maxCoeff();
    if (max_err <= 0.0) {
      trees = {std::move(tree)};
      stage_weights = {1.0};
      history.push_back(w);
      break;
    }
    const Eigen::VectorXd loss = abs_err / max_err;
    const double avg_loss = w.dot(loss);
    if (avg_loss >= 0.5) {
      if (trees.empty()) {
        trees.push_back(std::move(tree));
        stage_weights.push_back(1.0);
        history.push_back(w);
      }
      break;
    }
    const double beta = avg_loss / (1.0 - avg_loss);
    if (beta <= 0.0) {
      trees = {std::move(tree)};
      stage_weights = {1.0};
      history.push_back(w);
      break;
    }
    for (Eigen::Index i = 0; i < n; ++i) w(i) *= std::pow(beta, 1.0 - loss(i));
    w /= w.sum();
    trees.push_back(std::move(tree));
    stage_weights.push_back(std::log(1.0 / beta));
    history.push_back(w);
  }
  return std::make_unique<AdaBoostModel>(std::move(trees), std::move(stage_weights), Task::kRegression,
                                         std::move(history));
}

}  // namespace thermoforge
