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

#include "thermoforge/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "thermoforge/errors.hpp"

namespace thermoforge {

// FittedModel ------------------------------------------------------------------

void FittedModel::check_width(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != n_features()) {
    throw InvalidArgument(kind() + ": expected " + std::to_string(n_features()) + " features, got " +
                          std::to_string(x.size()));
  }
}

int FittedModel::label_one(std::span<const double> x) const { return predict_one(x) >= 0.5 ? 1 : 0; }

Eigen::VectorXd FittedModel::predict(const Eigen::MatrixXd& x) const {
  const RowMatrix rows = x;
  Eigen::VectorXd out(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out(i) = predict_one(std::span<const double>(rows.row(i).data(), static_cast<std::size_t>(rows.cols())));
  }
  return out;
}

Eigen::VectorXi FittedModel::predict_labels(const Eigen::MatrixXd& x) const {
  const RowMatrix rows = x;
  Eigen::VectorXi out(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out(i) = label_one(std::span<const double>(rows.row(i).data(), static_cast<std::size_t>(rows.cols())));
  }
  return out;
}

std::optional<Eigen::VectorXd> FittedModel::impurity_importance() const {
  const auto ts = trees();
  if (ts.empty()) return std::nullopt;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n_features());
  for (const Tree* t : ts) t->accumulate_importance(acc);
  return acc;
}

Eigen::VectorXd feature_importance(const FittedModel& model) {
  auto raw = model.impurity_importance();
  if (!raw) throw UnsupportedOperation("feature importance is only defined for tree-based models, not " + model.kind());
  const double total = raw->sum();
  if (total > 0.0) *raw /= total;
  return *raw;
}

nlohmann::json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

nlohmann::json to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(r);
  }
  return rows;
}

// Tree -----------------------------------------------------------------------------

int Tree::leaf_of(std::span<const double> x) const {
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const auto& n = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return id;
}

double Tree::predict(std::span<const double> x) const { return nodes[static_cast<std::size_t>(leaf_of(x))].value; }

int Tree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return best;
}

int Tree::leaf_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

void Tree::accumulate_importance(Eigen::VectorXd& acc) const {
  for (const auto& n : nodes) {
    if (!n.is_leaf()) acc(n.feature) += n.impurity_decrease;
  }
}

double gini_impurity(double p_one) { return 2.0 * p_one * (1.0 - p_one); }

void check_binary_labels(const Eigen::VectorXi& labels) {
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 0 && labels(i) != 1) {
      throw InvalidArgument("labels must be 0 or 1; sample " + std::to_string(i) + " has " +
                            std::to_string(labels(i)));
    }
  }
}

void check_fit_input(const Eigen::MatrixXd& x, Eigen::Index n_targets) {
  if (x.rows() == 0 || x.cols() == 0) throw InvalidArgument("empty training input");
  if (x.rows() != n_targets) throw InvalidArgument("feature rows and target length differ");
  if (!x.allFinite()) throw InvalidArgument("training features contain non-finite values");
}

namespace {

struct Candidate {
  double score = std::numeric_limits<double>::infinity();  // lower is better
  int feature = -1;
  double threshold = 0.0;

  bool valid() const { return feature >= 0; }

  // Order on (score, feature, threshold) with a relative tolerance on score.
  bool improves_on(const Candidate& best) const {
    if (!best.valid()) return true;
    const double tol = 1e-12 * std::max(1.0, std::abs(best.score));
    if (score < best.score - tol) return true;
    if (score > best.score + tol) return false;
    if (feature != best.feature) return feature < best.feature;
    return threshold < best.threshold;
  }
};

struct Sums {
  double w = 0.0;   // total weight (hessian for Newton)
  double s1 = 0.0;  // sum of w * centered target (gradient for Newton)
  double s2 = 0.0;  // sum of w * centered target^2
  std::size_t count = 0;

  void add(double wi, double di) {
    w += wi;
    s1 += wi * di;
    s2 += wi * di * di;
    ++count;
  }
  Sums minus(const Sums& o) const { return {w - o.w, s1 - o.s1, s2 - o.s2, count - o.count}; }
};

class Builder {
 public:
  Builder(const Eigen::MatrixXd& x, const TreeTargets& t, SplitCriterion criterion, const TreeParams& params,
          CounterRng* rng)
      : x_(x), t_(t), criterion_(criterion), params_(params), rng_(rng) {}

  Tree run(std::vector<std::size_t> rows) {
    tree_.n_features = static_cast<int>(x_.cols());
    root_weight_ = 0.0;
    for (auto r : rows) root_weight_ += weight(r);
    if (root_weight_ <= 0.0) root_weight_ = 1.0;
    build(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  double weight(std::size_t r) const { return t_.weight(static_cast<Eigen::Index>(r)); }
  double target(std::size_t r) const { return t_.target(static_cast<Eigen::Index>(r)); }
  double feat(std::size_t r, int f) const { return x_(static_cast<Eigen::Index>(r), f); }

  // Centering offset for numerically stable variance sums; 0 for Newton/Gini.
  double center_of(const std::vector<std::size_t>& rows) const {
    if (criterion_ != SplitCriterion::kMse) return 0.0;
    double w = 0.0, s = 0.0;
    for (auto r : rows) {
      w += weight(r);
      s += weight(r) * target(r);
    }
    return w > 0.0 ? s / w : 0.0;
  }

  double impurity(const Sums& s) const {
    switch (criterion_) {
      case SplitCriterion::kMse:
        return s.w > 0.0 ? std::max(0.0, (s.s2 - s.s1 * s.s1 / s.w) / s.w) : 0.0;
      case SplitCriterion::kGini:
        return s.w > 0.0 ? gini_impurity(s.s1 / s.w) : 0.0;
      case SplitCriterion::kNewton:
        return 0.0;
    }
    return 0.0;
  }

  double newton_score(const Sums& s) const { return s.s1 * s.s1 / (s.w + params_.lambda_l2); }

  // Quantity to minimize for a (left, right) partition of a node with totals `all`.
  double split_score(const Sums& left, const Sums& right, const Sums& all) const {
    if (criterion_ == SplitCriterion::kNewton) {
      const double gain =
          0.5 * (newton_score(left) + newton_score(right) - newton_score(all)) - params_.gamma;
      return -gain;
    }
    return (left.w * impurity(left) + right.w * impurity(right)) / all.w;
  }

  bool leaf_sizes_ok(std::size_t nl, std::size_t nr) const {
    const auto m = static_cast<std::size_t>(std::max(1, params_.min_samples_leaf));
    return nl >= m && nr >= m;
  }

  void scan_exhaustive(const std::vector<std::size_t>& rows, int f, double center, const Sums& all,
                       Candidate& best) const {
    std::vector<std::size_t> order = rows;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return feat(a, f) < feat(b, f); });
    Sums left;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const std::size_t r = order[i];
      left.add(weight(r), target(r) - center);
      const double lo = feat(r, f);
      const double hi = feat(order[i + 1], f);
      if (!(lo < hi)) continue;
      if (!leaf_sizes_ok(i + 1, order.size() - i - 1)) continue;
      double thr = lo + (hi - lo) / 2.0;
      if (!(thr < hi)) thr = lo;
      Candidate c{split_score(left, all.minus(left), all), f, thr};
      if (c.improves_on(best)) best = c;
    }
  }

  void scan_random(const std::vector<std::size_t>& rows, int f, double lo, double hi, double center, const Sums& all,
                   Candidate& best) const {
    double thr = lo + rng_->uniform_open() * (hi - lo);
    if (!(thr < hi)) thr = lo;
    Sums left;
    for (auto r : rows) {
      if (feat(r, f) <= thr) left.add(weight(r), target(r) - center);
    }
    const Sums right = all.minus(left);
    if (!leaf_sizes_ok(left.count, right.count)) return;
    Candidate c{split_score(left, right, all), f, thr};
    if (c.improves_on(best)) best = c;
  }

  int build(std::vector<std::size_t> rows, int depth) {
    const double center = center_of(rows);
    Sums all;
    for (auto r : rows) all.add(weight(r), target(r) - center);

    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    {
      TreeNode& node = tree_.nodes.back();
      node.n_samples = static_cast<double>(rows.size());
      node.impurity = impurity(all);
      switch (criterion_) {
        case SplitCriterion::kMse:
          node.value = center;
          break;
        case SplitCriterion::kGini:
          node.value = all.w > 0.0 ? all.s1 / all.w : 0.0;
          break;
        case SplitCriterion::kNewton:
          node.value = -all.s1 / (all.w + params_.lambda_l2);
          break;
      }
    }

    const bool depth_left = params_.max_depth < 0 || depth < params_.max_depth;
    if (!depth_left || rows.size() < 2 || pure(rows)) return id;

    const int p = static_cast<int>(x_.cols());
    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    const bool subset = params_.max_features > 0 && params_.max_features < p;
    if (subset || params_.random_thresholds) {
      if (rng_ == nullptr) throw InvalidArgument("randomized tree growth needs a random stream");
    }
    if (subset) {
      const auto perm = rng_->permutation(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(perm[static_cast<std::size_t>(i)]);
    }

    Candidate best;
    int visited = 0;
    for (int f : order) {
      if (subset && visited >= params_.max_features) break;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (auto r : rows) {
        lo = std::min(lo, feat(r, f));
        hi = std::max(hi, feat(r, f));
      }
      if (!(lo < hi)) continue;  // constant here: no valid threshold
      ++visited;
      if (params_.random_thresholds) {
        scan_random(rows, f, lo, hi, center, all, best);
      } else {
        scan_exhaustive(rows, f, center, all, best);
      }
    }
    if (!best.valid()) return id;

    double decrease = 0.0;
    if (criterion_ == SplitCriterion::kNewton) {
      const double gain = -best.score;
      if (!(gain > 0.0)) return id;
      decrease = gain;
    } else {
      decrease = std::max(0.0, all.w * (impurity(all) - best.score) / root_weight_);
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows) (feat(r, best.feature) <= best.threshold ? left_rows : right_rows).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    tree_.nodes[static_cast<std::size_t>(id)].feature = best.feature;
    tree_.nodes[static_cast<std::size_t>(id)].threshold = best.threshold;
    tree_.nodes[static_cast<std::size_t>(id)].impurity_decrease = decrease;
    const int l = build(std::move(left_rows), depth + 1);
    const int r = build(std::move(right_rows), depth + 1);
    tree_.nodes[static_cast<std::size_t>(id)].left = l;
    tree_.nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  bool pure(const std::vector<std::size_t>& rows) const {
    if (criterion_ == SplitCriterion::kNewton) return false;
    const double first = target(rows.front());
    return std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return target(r) == first; });
  }

  const Eigen::MatrixXd& x_;
  const TreeTargets& t_;
  SplitCriterion criterion_;
  TreeParams params_;
  CounterRng* rng_;
  Tree tree_;
  double root_weight_ = 1.0;
};

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string name_of(int f, const std::vector<std::string>& names) {
  if (f >= 0 && static_cast<std::size_t>(f) < names.size()) return names[static_cast<std::size_t>(f)];
  return "x[" + std::to_string(f) + "]";
}

}  // namespace

Tree grow_tree(const Eigen::MatrixXd& x, const TreeTargets& targets, std::span<const std::size_t> rows,
               SplitCriterion criterion, const TreeParams& params, CounterRng* rng) {
  if (rows.empty()) throw InvalidArgument("cannot grow a tree on zero rows");
  if (targets.target.size() != x.rows() || targets.weight.size() != x.rows()) {
    throw InvalidArgument("tree targets must have one entry per row");
  }
  Builder b(x, targets, criterion, params, rng);
  return b.run(std::vector<std::size_t>(rows.begin(), rows.end()));
}

double split_child_impurity(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::span<const std::size_t> rows,
                            int feature, double threshold, SplitCriterion criterion) {
  std::vector<double> left, right;
  for (auto r : rows) {
    const auto i = static_cast<Eigen::Index>(r);
    (x(i, feature) <= threshold ? left : right).push_back(y(i));
  }
  auto imp = [&](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    if (criterion == SplitCriterion::kGini) return gini_impurity(mean);
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    return ss / n;
  };
  const double n = static_cast<double>(rows.size());
  return (static_cast<double>(left.size()) * imp(left) + static_cast<double>(right.size()) * imp(right)) / n;
}

// Export ------------------------------------------------------------------------

nlohmann::json export_tree_json(const Tree& tree, const std::vector<std::string>& feature_names) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    nlohmann::json j;
    j["id"] = i;
    j["samples"] = n.n_samples;
    j["value"] = n.value;
    j["impurity"] = n.impurity;
    if (n.is_leaf()) {
      j["leaf"] = true;
    } else {
      j["leaf"] = false;
      j["feature"] = n.feature;
      j["feature_name"] = name_of(n.feature, feature_names);
      j["threshold"] = n.threshold;
      j["left"] = n.left;
      j["right"] = n.right;
      j["impurity_decrease"] = n.impurity_decrease;
    }
    nodes.push_back(std::move(j));
  }
  return {{"format", "thermoforge-tree/1"}, {"n_features", tree.n_features}, {"nodes", std::move(nodes)}};
}

Tree parse_tree_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "thermoforge-tree/1") throw InvalidArgument("unknown tree format");
    Tree t;
    t.n_features = j.at("n_features").get<int>();
    const auto& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& nj = nodes[i];
      if (nj.at("id").get<std::size_t>() != i) throw InvalidArgument("tree nodes must be listed in id order");
      TreeNode n;
      n.n_samples = nj.at("samples").get<double>();
      n.value = nj.at("value").get<double>();
      n.impurity = nj.at("impurity").get<double>();
      if (!nj.at("leaf").get<bool>()) {
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
        n.impurity_decrease = nj.at("impurity_decrease").get<double>();
        const auto count = static_cast<int>(nodes.size());
        if (n.left <= static_cast<int>(i) || n.right <= static_cast<int>(i) || n.left >= count || n.right >= count ||
            n.feature < 0 || n.feature >= t.n_features) {
          throw InvalidArgument("tree node " + std::to_string(i) + " has invalid links");
        }
      }
      t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw InvalidArgument("tree has no nodes");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed tree JSON: ") + e.what());
  }
}

std::string export_tree_text(const Tree& tree, const std::vector<std::string>& feature_names) {
  std::ostringstream out;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const auto& n = tree.nodes[static_cast<std::size_t>(id)];
    out << std::string(static_cast<std::size_t>(2 * depth), ' ');
    if (n.is_leaf()) {
      out << "leaf: value=" << fmt_num(n.value) << " samples=" << fmt_num(n.n_samples) << '\n';
    } else {
      out << name_of(n.feature, feature_names) << " <= " << fmt_num(n.threshold) << " (samples=" << fmt_num(n.n_samples)
          << ", value=" << fmt_num(n.value) << ")\n";
      stack.emplace_back(n.right, depth + 1);
      stack.emplace_back(n.left, depth + 1);
    }
  }
  return out.str();
}

nlohmann::json export_tree_structure(const FittedModel& model, const std::vector<std::string>& feature_names) {
  const auto ts = model.trees();
  if (ts.empty()) throw UnsupportedOperation("tree export is only defined for tree-based models, not " + model.kind());
  nlohmann::json arr = nlohmann::json::array();
  for (const Tree* t : ts) arr.push_back(export_tree_json(*t, feature_names));
  return arr;
}

// Single CART models -----------------------------------------------------------------

TreeModel::TreeModel(Tree tree, Task task, std::string kind)
    : tree_(std::move(tree)), task_(task), kind_(std::move(kind)) {}

double TreeModel::predict_one(std::span<const double> x) const {
  check_width(x);
  return tree_.predict(x);
}

int TreeModel::label_one(std::span<const double> x) const { return predict_one(x) > 0.5 ? 1 : 0; }

nlohmann::json TreeModel::to_json() const {
  return {{"kind", kind_}, {"task", task_name(task_)}, {"trees", nlohmann::json::array({export_tree_json(tree_)})}};
}

std::unique_ptr<TreeModel> fit_cart_regressor(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int max_depth,
                                              int min_samples_leaf) {
  check_fit_input(x, y.size());
  TreeTargets t{y, Eigen::VectorXd::Ones(y.size())};
  std::vector<std::size_t> rows(static_cast<std::size_t>(x.rows()));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  TreeParams params;
  params.max_depth = max_depth;
  params.min_samples_leaf = min_samples_leaf;
  return std::make_unique<TreeModel>(grow_tree(x, t, rows, SplitCriterion::kMse, params), Task::kRegression,
                                     "decision_tree");
}

std::unique_ptr<TreeModel> fit_cart_classifier(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels, int max_depth,
                                               int min_samples_leaf) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  TreeTargets t{labels.cast<double>(), Eigen::VectorXd::Ones(labels.size())};
  std::vector<std::size_t> rows(static_cast<std::size_t>(x.rows()));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  TreeParams params;
  params.max_depth = max_depth;
  params.min_samples_leaf = min_samples_leaf;
  return std::make_unique<TreeModel>(grow_tree(x, t, rows, SplitCriterion::kGini, params), Task::kClassification,
                                     "decision_tree");
}

}  // namespace thermoforge
