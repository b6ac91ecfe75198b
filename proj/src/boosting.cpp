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
#include <limits>
#include <numeric>
#include <tuple>

#include "thermoforge/ensembles.hpp"
#include "thermoforge/errors.hpp"

namespace thermoforge {

namespace {

std::span<const double> row_span(const RowMatrix& xr, Eigen::Index i) {
  return {xr.row(i).data(), static_cast<std::size_t>(xr.cols())};
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double mse(const Eigen::VectorXd& y, const Eigen::VectorXd& f) { return (y - f).squaredNorm() / static_cast<double>(y.size()); }

double log_loss(const Eigen::VectorXd& y, const Eigen::VectorXd& raw) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    // log(1 + e^z) - y z, evaluated without overflow.
    const double z = raw(i);
    const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    acc += softplus - y(i) * z;
  }
  return acc / static_cast<double>(y.size());
}

std::vector<std::size_t> stage_rows(Eigen::Index n, const BoostConfig& config, int stage) {
  if (config.subsample_fraction >= 1.0) {
    std::vector<std::size_t> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
  }
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(config.subsample_fraction * static_cast<double>(n))));
  auto rng = CounterRng::stream(config.seed, "boost_subsample", static_cast<std::uint64_t>(stage));
  auto rows = rng.sample_without_replacement(static_cast<std::size_t>(n), k);
  std::sort(rows.begin(), rows.end());
  return rows;
}

nlohmann::json config_json(const BoostConfig& c) {
  return {{"n_stages", c.n_stages},
          {"learning_rate", c.learning_rate},
          {"max_depth", c.max_depth},
          {"min_samples_leaf", c.min_samples_leaf},
          {"subsample_fraction", c.subsample_fraction},
          {"lambda_l2", c.lambda_l2},
          {"gamma", c.gamma},
          {"seed", c.seed}};
}

TreeParams tree_params(const BoostConfig& c) {
  TreeParams p;
  p.max_depth = c.max_depth;
  p.min_samples_leaf = c.min_samples_leaf;
  p.lambda_l2 = c.lambda_l2;
  p.gamma = c.gamma;
  return p;
}

}  // namespace

void validate(const BoostConfig& c) {
  if (c.n_stages < 1) throw InvalidArgument("boosting needs n_stages >= 1");
  if (!(c.learning_rate > 0.0 && c.learning_rate <= 1.0)) throw InvalidArgument("learning_rate must lie in (0, 1]");
  if (!(c.subsample_fraction > 0.0 && c.subsample_fraction <= 1.0)) {
    throw InvalidArgument("subsample_fraction must lie in (0, 1]");
  }
  if (c.min_samples_leaf < 1) throw InvalidArgument("min_samples_leaf must be >= 1");
  if (!(c.lambda_l2 >= 0.0)) throw InvalidArgument("lambda_l2 must be >= 0");
  if (!(c.gamma >= 0.0)) throw InvalidArgument("gamma must be >= 0");
}

BoostedModel::BoostedModel(double base, double learning_rate, std::vector<Tree> trees, Task task, std::string kind,
                           std::vector<double> train_loss, nlohmann::json params)
    : base_(base),
      learning_rate_(learning_rate),
      trees_(std::move(trees)),
      task_(task),
      kind_(std::move(kind)),
      train_loss_(std::move(train_loss)),
      params_(std::move(params)) {}

double BoostedModel::raw_score(std::span<const double> x) const {
  double f = base_;
  for (const auto& t : trees_) f += learning_rate_ * t.predict(x);
  return f;
}

double BoostedModel::predict_one(std::span<const double> x) const {
  check_width(x);
  const double f = raw_score(x);
  return task_ == Task::kClassification ? sigmoid(f) : f;
}

std::vector<const Tree*> BoostedModel::trees() const {
  std::vector<const Tree*> out;
  for (const auto& t : trees_) out.push_back(&t);
  return out;
}

nlohmann::json BoostedModel::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(export_tree_json(t));
  return {{"kind", kind_},         {"task", task_name(task_)}, {"base", base_},  {"learning_rate", learning_rate_},
          {"params", params_},     {"train_loss", train_loss_}, {"trees", trees}};
}

std::unique_ptr<BoostedModel> fit_gradient_boosting_regressor(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                              const BoostConfig& config) {
  check_fit_input(x, y.size());
  validate(config);
  const Eigen::Index n = x.rows();
  const RowMatrix xr = x;
  const double base = y.mean();
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, base);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  std::vector<Tree> trees;
  std::vector<double> history{mse(y, f)};
  for (int m = 0; m < config.n_stages; ++m) {
    const Eigen::VectorXd residual = y - f;
    const auto rows = stage_rows(n, config, m);
    Tree tree = grow_tree(x, {residual, ones}, rows, SplitCriterion::kMse, tree_params(config));
    for (Eigen::Index i = 0; i < n; ++i) f(i) += config.learning_rate * tree.predict(row_span(xr, i));
    history.push_back(mse(y, f));
    trees.push_back(std::move(tree));
  }
  const char* kind = config.subsample_fraction < 1.0 ? "stochastic_gradient_boosting" : "gradient_boosting";
  auto model = std::make_unique<BoostedModel>(base, config.learning_rate, std::move(trees), Task::kRegression, kind,
                                              std::move(history), config_json(config));
  model->set_n_features(x.cols());
  return model;
}

std::unique_ptr<BoostedModel> fit_gradient_boosting_classifier(const Eigen::MatrixXd& x,
                                                               const Eigen::VectorXi& labels,
                                                               const BoostConfig& config) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  validate(config);
  const Eigen::Index n = x.rows();
  const RowMatrix xr = x;
  const Eigen::VectorXd y = labels.cast<double>();
  const double prior = std::clamp(y.mean(), 1e-12, 1.0 - 1e-12);
  const double base = std::log(prior / (1.0 - prior));
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, base);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  std::vector<Tree> trees;
  std::vector<double> history{log_loss(y, f)};
  for (int m = 0; m < config.n_stages; ++m) {
    Eigen::VectorXd prob(n);
    for (Eigen::Index i = 0; i < n; ++i) prob(i) = sigmoid(f(i));
    const Eigen::VectorXd residual = y - prob;
    const auto rows = stage_rows(n, config, m);
    Tree tree = grow_tree(x, {residual, ones}, rows, SplitCriterion::kMse, tree_params(config));

    std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
    for (auto r : rows) {
      const auto i = static_cast<Eigen::Index>(r);
      const auto leaf = static_cast<std::size_t>(tree.leaf_of(row_span(xr, i)));
      num[leaf] += residual(i);
      den[leaf] += prob(i) * (1.0 - prob(i));
    }
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      if (tree.nodes[k].is_leaf()) tree.nodes[k].value = std::abs(den[k]) < 1e-150 ? 0.0 : num[k] / den[k];
    }
    for (Eigen::Index i = 0; i < n; ++i) f(i) += config.learning_rate * tree.predict(row_span(xr, i));
    history.push_back(log_loss(y, f));
    trees.push_back(std::move(tree));
  }
  const char* kind = config.subsample_fraction < 1.0 ? "stochastic_gradient_boosting" : "gradient_boosting";
  auto model = std::make_unique<BoostedModel>(base, config.learning_rate, std::move(trees), Task::kClassification,
                                              kind, std::move(history), config_json(config));
  model->set_n_features(x.cols());
  return model;
}

std::unique_ptr<BoostedModel> fit_second_order_boosting(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                        const BoostConfig& config) {
  check_fit_input(x, y.size());
  validate(config);
  const Eigen::Index n = x.rows();
  const RowMatrix xr = x;
  const double base = y.mean();
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, base);
  const Eigen::VectorXd hess = Eigen::VectorXd::Ones(n);
  std::vector<Tree> trees;
  std::vector<double> history{mse(y, f)};
  for (int m = 0; m < config.n_stages; ++m) {
    const Eigen::VectorXd grad = f - y;
    const auto rows = stage_rows(n, config, m);
    Tree tree = grow_tree(x, {grad, hess}, rows, SplitCriterion::kNewton, tree_params(config));
    for (Eigen::Index i = 0; i < n; ++i) f(i) += config.learning_rate * tree.predict(row_span(xr, i));
    history.push_back(mse(y, f));
    trees.push_back(std::move(tree));
  }
  auto model = std::make_unique<BoostedModel>(base, config.learning_rate, std::move(trees), Task::kRegression,
                                              "second_order_boosting", std::move(history), config_json(config));
  model->set_n_features(x.cols());
  return model;
}

// Oblivious trees -------------------------------------------------------------------

int ObliviousTree::leaf_of(std::span<const double> x) const {
  int idx = 0;
  for (std::size_t k = 0; k < features.size(); ++k) {
    idx = 2 * idx + (x[static_cast<std::size_t>(features[k])] <= thresholds[k] ? 0 : 1);
  }
  return idx;
}

namespace {

// Per-node bookkeeping for ObliviousTree::to_tree.
struct Expander {
  const ObliviousTree& t;
  const std::vector<std::vector<double>>& node_decrease;
  Tree out;

  // Returns (node id, samples, sample-weighted value sum).
  std::tuple<int, double, double> node(int level, int prefix) {
    const int id = static_cast<int>(out.nodes.size());
    out.nodes.emplace_back();
    if (level == t.depth()) {
      auto& n = out.nodes.back();
      n.value = t.leaf_values[static_cast<std::size_t>(prefix)];
      n.n_samples = t.leaf_samples[static_cast<std::size_t>(prefix)];
      return {id, n.n_samples, n.value * n.n_samples};
    }
    const auto [l, ls, lv] = node(level + 1, 2 * prefix);
    const auto [r, rs, rv] = node(level + 1, 2 * prefix + 1);
    auto& n = out.nodes[static_cast<std::size_t>(id)];
    n.feature = t.features[static_cast<std::size_t>(level)];
    n.threshold = t.thresholds[static_cast<std::size_t>(level)];
    n.left = l;
    n.right = r;
    n.n_samples = ls + rs;
    n.value = n.n_samples > 0 ? (lv + rv) / n.n_samples : 0.0;
    n.impurity_decrease = node_decrease[static_cast<std::size_t>(level)][static_cast<std::size_t>(prefix)];
    return {id, ls + rs, lv + rv};
  }
};

}  // namespace

Tree ObliviousTree::to_tree() const {
  Expander e{*this, node_decrease, {}};
  e.out.n_features = n_features;
  e.node(0, 0);
  return std::move(e.out);
}

ObliviousTree grow_oblivious_tree(const Eigen::MatrixXd& x, const Eigen::VectorXd& residual, int depth) {
  const Eigen::Index n = x.rows();
  const auto p = static_cast<int>(x.cols());
  ObliviousTree tree;
  tree.n_features = p;

  std::vector<std::vector<double>> borders(static_cast<std::size_t>(p));
  for (int f = 0; f < p; ++f) {
    std::vector<double> v(x.col(f).data(), x.col(f).data() + n);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      double thr = v[i] + (v[i + 1] - v[i]) / 2.0;
      if (!(thr < v[i + 1])) thr = v[i];
      borders[static_cast<std::size_t>(f)].push_back(thr);
    }
  }

  std::vector<int> leaf(static_cast<std::size_t>(n), 0);
  // Sum of squared leaf sums over counts; SSE = sum r^2 - this.
  auto explained = [&](const std::vector<int>& assign, int n_leaves) {
    std::vector<double> s(static_cast<std::size_t>(n_leaves), 0.0), c(static_cast<std::size_t>(n_leaves), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      s[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] += residual(i);
      c[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] += 1.0;
    }
    double e = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (c[k] > 0) e += s[k] * s[k] / c[k];
    }
    return e;
  };

  std::vector<int> next(static_cast<std::size_t>(n));
  for (int level = 0; level < depth; ++level) {
    const int n_leaves = 1 << level;
    const double current = explained(leaf, n_leaves);
    double best_score = std::numeric_limits<double>::infinity();
    int best_f = -1;
    double best_thr = 0.0;
    for (int f = 0; f < p; ++f) {
      for (double thr : borders[static_cast<std::size_t>(f)]) {
        for (Eigen::Index i = 0; i < n; ++i) {
          next[static_cast<std::size_t>(i)] = 2 * leaf[static_cast<std::size_t>(i)] + (x(i, f) <= thr ? 0 : 1);
        }
        const double score = -explained(next, 2 * n_leaves);
        const double tol = 1e-12 * std::max(1.0, std::abs(best_score));
        const bool better = best_f < 0 || score < best_score - tol ||
                            (score <= best_score + tol && (f < best_f || (f == best_f && thr < best_thr)));
        if (better) {
          best_score = score;
          best_f = f;
          best_thr = thr;
        }
      }
    }
    const double gain = -best_score - current;
    if (best_f < 0 || !(gain > 1e-12 * std::max(1.0, current))) break;
    tree.features.push_back(best_f);
    tree.thresholds.push_back(best_thr);
    for (Eigen::Index i = 0; i < n; ++i) {
      next[static_cast<std::size_t>(i)] = 2 * leaf[static_cast<std::size_t>(i)] + (x(i, best_f) <= best_thr ? 0 : 1);
    }
    // Per-node SSE reduction (as a fraction of n) for importances.
    std::vector<double> ps(static_cast<std::size_t>(n_leaves), 0.0), pc(ps.size(), 0.0);
    std::vector<double> cs(2 * ps.size(), 0.0), cc(cs.size(), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto a = static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)]);
      const auto b = static_cast<std::size_t>(next[static_cast<std::size_t>(i)]);
      ps[a] += residual(i);
      pc[a] += 1.0;
      cs[b] += residual(i);
      cc[b] += 1.0;
    }
    auto term = [](double s, double c) { return c > 0 ? s * s / c : 0.0; };
    std::vector<double> decrease(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const double d = term(cs[2 * k], cc[2 * k]) + term(cs[2 * k + 1], cc[2 * k + 1]) - term(ps[k], pc[k]);
      decrease[k] = std::max(0.0, d) / static_cast<double>(n);
    }
    tree.node_decrease.push_back(std::move(decrease));
    leaf.swap(next);
  }

  const std::size_t n_leaves = std::size_t{1} << tree.features.size();
  tree.leaf_values.assign(n_leaves, 0.0);
  tree.leaf_samples.assign(n_leaves, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    tree.leaf_values[static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)])] += residual(i);
    tree.leaf_samples[static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)])] += 1.0;
  }
  for (std::size_t k = 0; k < n_leaves; ++k) {
    if (tree.leaf_samples[k] > 0) tree.leaf_values[k] /= tree.leaf_samples[k];
  }
  return tree;
}

// Ordered boosting ---------------------------------------------------------------------

OrderedBoostingModel::OrderedBoostingModel(double base, OrderedBoostConfig config, std::vector<Ensemble> ensembles)
    : base_(base), config_(config), ensembles_(std::move(ensembles)) {
  for (const auto& e : ensembles_) {
    for (const auto& t : e.trees) {
      n_features_ = t.n_features;
      expanded_.push_back(t.to_tree());
    }
  }
}

double OrderedBoostingModel::predict_one(std::span<const double> x) const {
  check_width(x);
  double acc = 0.0;
  for (const auto& e : ensembles_) {
    double f = 0.0;
    for (const auto& t : e.trees) f += config_.learning_rate * t.predict(x);
    acc += f;
  }
  return base_ + acc / static_cast<double>(ensembles_.size());
}

std::vector<const Tree*> OrderedBoostingModel::trees() const {
  std::vector<const Tree*> out;
  for (const auto& t : expanded_) out.push_back(&t);
  return out;
}

nlohmann::json OrderedBoostingModel::to_json() const {
  nlohmann::json perms = nlohmann::json::array();
  for (const auto& e : ensembles_) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : e.trees) {
      trees.push_back({{"features", t.features}, {"thresholds", t.thresholds}, {"leaf_values", t.leaf_values}});
    }
    perms.push_back({{"permutation", e.permutation}, {"trees", std::move(trees)}});
  }
  return {{"kind", "ordered_boosting"},
          {"task", "regression"},
          {"base", base_},
          {"learning_rate", config_.learning_rate},
          {"params",
           {{"n_stages", config_.n_stages},
            {"depth", config_.depth},
            {"n_permutations", config_.n_permutations},
            {"shuffle", config_.shuffle},
            {"seed", config_.seed}}},
          {"ensembles", std::move(perms)}};
}

std::unique_ptr<OrderedBoostingModel> fit_ordered_boosting(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                                           const OrderedBoostConfig& config) {
  check_fit_input(x, y.size());
  if (config.n_stages < 1) throw InvalidArgument("ordered boosting needs n_stages >= 1");
  if (!(config.learning_rate > 0.0 && config.learning_rate <= 1.0)) {
    throw InvalidArgument("learning_rate must lie in (0, 1]");
  }
  if (config.depth < 1) throw InvalidArgument("oblivious tree depth must be >= 1");
  if (config.n_permutations < 1) throw InvalidArgument("n_permutations must be >= 1");

  const Eigen::Index n = x.rows();
  const auto un = static_cast<std::size_t>(n);
  const RowMatrix xr = x;
  const double base = y.mean();
  std::vector<OrderedBoostingModel::Ensemble> ensembles;

  for (int p = 0; p < config.n_permutations; ++p) {
    OrderedBoostingModel::Ensemble e;
    if (config.shuffle) {
      auto rng = CounterRng::stream(config.seed, "ordered_permutation", static_cast<std::uint64_t>(p));
      e.permutation = rng.permutation(un);
    } else {
      e.permutation.resize(un);
      std::iota(e.permutation.begin(), e.permutation.end(), std::size_t{0});
    }
    Eigen::VectorXd supporting = Eigen::VectorXd::Constant(n, base);
    Eigen::VectorXd f = Eigen::VectorXd::Constant(n, base);
    for (int m = 0; m < config.n_stages; ++m) {
      const Eigen::VectorXd ordered_residual = y - supporting;
      ObliviousTree tree = grow_oblivious_tree(x, ordered_residual, config.depth);

      std::vector<int> leaf(un);
      for (Eigen::Index i = 0; i < n; ++i) leaf[static_cast<std::size_t>(i)] = tree.leaf_of(row_span(xr, i));

      // Final leaf values: mean plain residual of the full model.
      const std::size_t n_leaves = tree.leaf_values.size();
      std::vector<double> sum(n_leaves, 0.0), cnt(n_leaves, 0.0);
      for (Eigen::Index i = 0; i < n; ++i) {
        sum[static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)])] += y(i) - f(i);
        cnt[static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)])] += 1.0;
      }
      for (std::size_t k = 0; k < n_leaves; ++k) tree.leaf_values[k] = cnt[k] > 0 ? sum[k] / cnt[k] : 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        f(i) += config.learning_rate * tree.leaf_values[static_cast<std::size_t>(leaf[static_cast<std::size_t>(i)])];
      }

      // Supporting model: each sample sees only its permutation prefix.
      std::fill(sum.begin(), sum.end(), 0.0);
      std::fill(cnt.begin(), cnt.end(), 0.0);
      for (std::size_t pos = 0; pos < un; ++pos) {
        const std::size_t i = e.permutation[pos];
        const auto k = static_cast<std::size_t>(leaf[i]);
        if (cnt[k] > 0) supporting(static_cast<Eigen::Index>(i)) += config.learning_rate * sum[k] / cnt[k];
        sum[k] += ordered_residual(static_cast<Eigen::Index>(i));
        cnt[k] += 1.0;
      }
      e.trees.push_back(std::move(tree));
    }
    e.supporting = supporting;
    ensembles.push_back(std::move(e));
  }
  return std::make_unique<OrderedBoostingModel>(base, config, std::move(ensembles));
}

}  // namespace thermoforge
