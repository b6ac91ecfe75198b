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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "thermoforge/ensembles.hpp"
#include "thermoforge/errors.hpp"
#include "thermoforge/tree.hpp"

namespace tf = thermoforge;

namespace {

Eigen::MatrixXd col(std::initializer_list<double> v) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i++) = x;
  return m;
}

Eigen::VectorXi ivec(std::initializer_list<int> v) {
  Eigen::VectorXi m(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (int x : v) m(i++) = x;
  return m;
}

double train_mse(const tf::FittedModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  return (m.predict(x) - y).squaredNorm() / static_cast<double>(y.size());
}

// Step data: x in {0..9}, y = 0 below 5, 10 from 5 up.
struct Step {
  Eigen::MatrixXd x = Eigen::MatrixXd(10, 1);
  Eigen::VectorXd y = Eigen::VectorXd(10);
  Step() {
    for (int i = 0; i < 10; ++i) {
      x(i, 0) = i;
      y(i) = i < 5 ? 0.0 : 10.0;
    }
  }
};

}  // namespace

TEST(Cart, ConstantTargetSingleLeaf) {
  const auto m = tf::fit_cart_regressor(col({1, 2, 3, 4}), vec({7, 7, 7, 7}));
  EXPECT_EQ(m->tree().nodes.size(), 1u);
  const double q[] = {100.0};
  EXPECT_EQ(m->predict_one(q), 7.0);
}

TEST(Cart, FourPointStumpSplitsAtFivePointFive) {
  const auto m = tf::fit_cart_regressor(col({1, 2, 9, 10}), vec({0, 0, 10, 10}), 1);
  const auto& root = m->tree().nodes[0];
  ASSERT_FALSE(root.is_leaf());
  EXPECT_EQ(root.threshold, 5.5);
  EXPECT_EQ(m->tree().nodes[static_cast<std::size_t>(root.left)].value, 0.0);
  EXPECT_EQ(m->tree().nodes[static_cast<std::size_t>(root.right)].value, 10.0);
}

TEST(Cart, DepthZeroIsMeanPredictor) {
  const auto m = tf::fit_cart_regressor(col({1, 2, 3}), vec({1, 2, 6}), 0);
  EXPECT_EQ(m->tree().nodes.size(), 1u);
  const double q[] = {2.0};
  EXPECT_DOUBLE_EQ(m->predict_one(q), 3.0);
}

TEST(Cart, EmptyInputThrows) {
  EXPECT_THROW(tf::fit_cart_regressor(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0)), tf::InvalidArgument);
}

TEST(Cart, GiniValues) {
  EXPECT_EQ(tf::gini_impurity(1.0), 0.0);
  EXPECT_EQ(tf::gini_impurity(0.5), 0.5);
}

TEST(Cart, ClassifierSeparableStump) {
  const auto x = col({0, 1, 10, 11});
  const auto y = ivec({0, 0, 1, 1});
  const auto m = tf::fit_cart_classifier(x, y, 1);
  EXPECT_EQ(m->predict_labels(x), y);
  EXPECT_EQ(m->tree().nodes[0].impurity, 0.5);
}

TEST(Cart, ClassifierRejectsNonBinaryLabels) {
  EXPECT_THROW(tf::fit_cart_classifier(col({0, 1}), ivec({0, 2})), tf::InvalidArgument);
}

TEST(Cart, InternalNodesRouteLeftOnLessEqual) {
  const auto m = tf::fit_cart_regressor(col({1, 2, 9, 10}), vec({0, 0, 10, 10}), 1);
  const double at[] = {5.5};
  EXPECT_EQ(m->predict_one(at), 0.0);
}

TEST(CartProperty, RootSplitMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "cart_oracle");
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(11));
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(rng.below(3));
    Eigen::MatrixXd x(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) x(i, j) = std::round(rng.uniform(0, 10));
      y(i) = rng.uniform(-5, 5);
    }
    const auto oracle = tfo::brute_force_root_split(x, y);
    const auto m = tf::fit_cart_regressor(x, y, 1);
    const auto& root = m->tree().nodes[0];
    if (!oracle.found) {
      EXPECT_TRUE(root.is_leaf()) << "seed " << seed;
      continue;
    }
    ASSERT_FALSE(root.is_leaf()) << "seed " << seed;
    EXPECT_EQ(root.feature, oracle.feature) << "seed " << seed;
    EXPECT_EQ(root.threshold, oracle.threshold) << "seed " << seed;
  }
}

TEST(CartProperty, ImpurityDecreaseNonNegative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "cart_decrease");
    const Eigen::MatrixXd x = tftest::random_matrix(rng, 30, 3);
    const Eigen::VectorXd y = tftest::random_vector(rng, 30);
    const auto m = tf::fit_cart_regressor(x, y);
    for (const auto& node : m->tree().nodes) {
      EXPECT_GE(node.impurity_decrease, 0.0);
      if (!node.is_leaf()) {
        EXPECT_GE(node.left, 0);
        EXPECT_GE(node.right, 0);
      }
    }
  }
}

TEST(TreeExport, SingleLeafOneLine) {
  const auto m = tf::fit_cart_regressor(col({1, 2}), vec({3, 3}));
  const std::string text = tf::export_tree_text(m->tree());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
}

TEST(TreeExport, StumpThreeNodesWithRoutingRule) {
  const auto m = tf::fit_cart_regressor(col({1, 2, 9, 10}), vec({0, 0, 10, 10}), 1);
  const std::string text = tf::export_tree_text(m->tree(), {"Rotational Rate (RPM)"});
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("Rotational Rate (RPM) <= 5.5"), std::string::npos);
  EXPECT_EQ(tf::export_tree_json(m->tree())["nodes"].size(), 3u);
}

TEST(TreeExport, JsonRoundTripPreservesPredictions) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "tree_roundtrip");
    const Eigen::MatrixXd x = tftest::random_matrix(rng, 25, 3);
    const Eigen::VectorXd y = tftest::random_vector(rng, 25);
    const auto m = tf::fit_cart_regressor(x, y, 4);
    const auto text = tf::export_tree_json(m->tree()).dump();
    const tf::Tree back = tf::parse_tree_json(nlohmann::json::parse(text));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Eigen::RowVectorXd row = x.row(i);
      EXPECT_EQ(back.predict(std::span<const double>(row.data(), 3)), m->tree().predict({row.data(), 3}));
    }
  }
}

TEST(TreeExport, NonTreeModelUnsupported) {
  struct Constant final : tf::FittedModel {
    tf::Task task() const override { return tf::Task::kRegression; }
    std::string kind() const override { return "constant"; }
    Eigen::Index n_features() const override { return 1; }
    double predict_one(std::span<const double>) const override { return 0; }
    nlohmann::json to_json() const override { return {}; }
  } c;
  EXPECT_THROW(tf::export_tree_structure(c), tf::UnsupportedOperation);
  EXPECT_THROW(tf::feature_importance(c), tf::UnsupportedOperation);
}

TEST(Forest, SingleTreeNoBootstrapEqualsCart) {
  auto rng = tf::CounterRng::stream(1, "forest_cart");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 30, 3);
  const Eigen::VectorXd y = tftest::random_vector(rng, 30);
  tf::ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  cfg.feature_subset_size = 3;
  cfg.max_depth = 5;
  const auto f = tf::fit_random_forest(x, y, cfg);
  const auto c = tf::fit_cart_regressor(x, y, 5);
  EXPECT_EQ(f->predict(x), c->predict(x));
}

TEST(Forest, DeterministicForFixedSeed) {
  auto rng = tf::CounterRng::stream(2, "forest_det");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 3);
  const Eigen::VectorXd y = tftest::random_vector(rng, 40);
  const auto a = tf::fit_random_forest(x, y, {});
  const auto b = tf::fit_random_forest(x, y, {});
  EXPECT_EQ(a->to_json().dump(), b->to_json().dump());
}

TEST(Forest, StepPredictionCloserToLowSide) {
  const Step s;
  tf::ForestConfig cfg;
  cfg.n_trees = 50;
  const auto f = tf::fit_random_forest(s.x, s.y, cfg);
  const double q[] = {1.5};
  const double v = f->predict_one(q);
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 10.0);
  EXPECT_LT(v, 5.0);
}

TEST(Forest, ZeroTreesRejected) {
  tf::ForestConfig cfg;
  cfg.n_trees = 0;
  const Step s;
  EXPECT_THROW(tf::fit_random_forest(s.x, s.y, cfg), tf::InvalidArgument);
}

TEST(Forest, ClassificationScoreIsVoteFraction) {
  const Eigen::MatrixXd x = col({0, 1, 2, 10, 11, 12});
  const Eigen::VectorXi y = ivec({0, 0, 0, 1, 1, 1});
  tf::ForestConfig cfg;
  cfg.n_trees = 9;
  const auto f = tf::fit_random_forest(x, y, cfg);
  const Eigen::VectorXd s = f->predict(x);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(s(i) * 9, std::round(s(i) * 9), 1e-12);
  }
  EXPECT_EQ(f->predict_labels(x), y);
}

TEST(ExtraTrees, ConstantFeatureNeverUsed) {
  auto rng = tf::CounterRng::stream(3, "extra_const");
  Eigen::MatrixXd x = tftest::random_matrix(rng, 30, 2);
  x.col(1).setConstant(4.0);
  const Eigen::VectorXd y = tftest::random_vector(rng, 30);
  const auto f = tf::fit_extra_trees(x, y);
  for (const tf::Tree* t : f->trees()) {
    for (const auto& node : t->nodes) EXPECT_NE(node.feature, 1);
  }
  EXPECT_EQ(tf::feature_importance(*f)(1), 0.0);
}

TEST(ExtraTrees, DeterministicAndAveragingHelps) {
  const Step s;
  tf::ForestConfig one = tf::extra_trees_defaults();
  one.n_trees = 1;
  one.max_depth = 1;
  tf::ForestConfig many = one;
  many.n_trees = 100;
  const auto a = tf::fit_extra_trees(s.x, s.y, many);
  const auto b = tf::fit_extra_trees(s.x, s.y, many);
  EXPECT_EQ(a->predict(s.x), b->predict(s.x));
  EXPECT_LE(train_mse(*a, s.x, s.y), train_mse(*tf::fit_extra_trees(s.x, s.y, one), s.x, s.y));
}

TEST(Boosting, ZeroLearningRateRejected) {
  tf::BoostConfig cfg;
  cfg.learning_rate = 0.0;
  const Step s;
  EXPECT_THROW(tf::fit_gradient_boosting_regressor(s.x, s.y, cfg), tf::InvalidArgument);
  cfg.learning_rate = 1.5;
  EXPECT_THROW(tf::fit_gradient_boosting_regressor(s.x, s.y, cfg), tf::InvalidArgument);
}

TEST(Boosting, OneStageFullDepthMemorizes) {
  auto rng = tf::CounterRng::stream(4, "gb_memorize");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 20, 1);
  const Eigen::VectorXd y = tftest::random_vector(rng, 20);
  tf::BoostConfig cfg;
  cfg.n_stages = 1;
  cfg.learning_rate = 1.0;
  cfg.max_depth = -1;
  const auto m = tf::fit_gradient_boosting_regressor(x, y, cfg);
  EXPECT_LT(train_mse(*m, x, y), 1e-24);
  EXPECT_EQ(m->base(), y.mean());
}

TEST(BoostingProperty, TrainingMseNonIncreasing) {
  for (double lr : {0.1, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto rng = tf::CounterRng::stream(seed, "gb_monotone");
      const Eigen::MatrixXd x = tftest::random_matrix(rng, 30, 3);
      const Eigen::VectorXd y = tftest::random_vector(rng, 30, -10, 10);
      tf::BoostConfig cfg;
      cfg.n_stages = 50;
      cfg.learning_rate = lr;
      const auto m = tf::fit_gradient_boosting_regressor(x, y, cfg);
      const auto& h = m->train_loss();
      ASSERT_EQ(h.size(), 51u);
      for (std::size_t k = 1; k < h.size(); ++k) EXPECT_LE(h[k], h[k - 1] + 1e-12) << "lr " << lr << " stage " << k;
    }
  }
}

TEST(Boosting, StochasticVariantDiffersAndIsDeterministic) {
  auto rng = tf::CounterRng::stream(5, "gb_stochastic");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 2);
  const Eigen::VectorXd y = tftest::random_vector(rng, 40);
  tf::BoostConfig plain;
  tf::BoostConfig sto = plain;
  sto.subsample_fraction = 0.5;
  const auto a = tf::fit_gradient_boosting_regressor(x, y, sto);
  const auto b = tf::fit_gradient_boosting_regressor(x, y, sto);
  EXPECT_EQ(a->predict(x), b->predict(x));
  EXPECT_NE(a->predict(x), tf::fit_gradient_boosting_regressor(x, y, plain)->predict(x));
}

TEST(Boosting, ClassifierSeparates) {
  const Eigen::MatrixXd x = col({0, 1, 2, 10, 11, 12});
  const Eigen::VectorXi y = ivec({0, 0, 0, 1, 1, 1});
  const auto m = tf::fit_gradient_boosting_classifier(x, y, {});
  EXPECT_EQ(m->predict_labels(x), y);
  const Eigen::VectorXd p = m->predict(x);
  EXPECT_TRUE((p.array() > 0).all() && (p.array() < 1).all());
}

TEST(SecondOrder, LambdaZeroMatchesPlainBoosting) {
  auto rng = tf::CounterRng::stream(6, "xgb_plain");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 25, 1);
  const Eigen::VectorXd y = tftest::random_vector(rng, 25);
  tf::BoostConfig cfg;
  cfg.n_stages = 1;
  cfg.max_depth = 2;
  cfg.lambda_l2 = 0.0;
  cfg.gamma = 0.0;
  const auto a = tf::fit_second_order_boosting(x, y, cfg);
  const auto b = tf::fit_gradient_boosting_regressor(x, y, cfg);
  EXPECT_LT((a->predict(x) - b->predict(x)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SecondOrder, LeafWeightHandValue) {
  // Residuals [2, 4] from F = 0: g = [-2, -4], h = [1, 1], lambda = 2.
  tf::TreeTargets t{vec({-2, -4}), vec({1, 1})};
  const std::vector<std::size_t> rows = {0, 1};
  tf::TreeParams params;
  params.max_depth = 0;
  params.lambda_l2 = 2.0;
  const tf::Tree tree = tf::grow_tree(col({0, 1}), t, rows, tf::SplitCriterion::kNewton, params);
  EXPECT_EQ(tree.nodes.size(), 1u);
  EXPECT_DOUBLE_EQ(tree.nodes[0].value, 1.5);
}

TEST(SecondOrder, HugeGammaBlocksSplits) {
  auto rng = tf::CounterRng::stream(7, "xgb_gamma");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 20, 2);
  const Eigen::VectorXd y = tftest::random_vector(rng, 20);
  tf::BoostConfig cfg;
  cfg.gamma = 1e9;
  cfg.n_stages = 5;
  const auto m = tf::fit_second_order_boosting(x, y, cfg);
  for (const tf::Tree* t : m->trees()) EXPECT_EQ(t->nodes.size(), 1u);
  const Eigen::VectorXd p = m->predict(x);
  EXPECT_LT(p.maxCoeff() - p.minCoeff(), 1e-12);
}

TEST(SecondOrder, NegativeRegularizationRejected) {
  const Step s;
  tf::BoostConfig cfg;
  cfg.lambda_l2 = -1;
  EXPECT_THROW(tf::fit_second_order_boosting(s.x, s.y, cfg), tf::InvalidArgument);
  cfg.lambda_l2 = 1;
  cfg.gamma = -1;
  EXPECT_THROW(tf::fit_second_order_boosting(s.x, s.y, cfg), tf::InvalidArgument);
}

TEST(Ordered, DepthOneObliviousEqualsStump) {
  auto rng = tf::CounterRng::stream(8, "oblivious_stump");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 20, 3);
  const Eigen::VectorXd y = tftest::random_vector(rng, 20);
  const tf::ObliviousTree ot = tf::grow_oblivious_tree(x, y, 1);
  const auto stump = tf::fit_cart_regressor(x, y, 1);
  const auto& root = stump->tree().nodes[0];
  ASSERT_EQ(ot.depth(), 1);
  EXPECT_EQ(ot.features[0], root.feature);
  EXPECT_EQ(ot.thresholds[0], root.threshold);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const Eigen::RowVectorXd r = x.row(i);
    EXPECT_NEAR(ot.predict({r.data(), 3}), stump->tree().predict({r.data(), 3}), 1e-12);
  }
}

TEST(Ordered, ObliviousStructureOnEveryTree) {
  auto rng = tf::CounterRng::stream(9, "oblivious_structure");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 3);
  const Eigen::VectorXd y = tftest::random_vector(rng, 40);
  tf::OrderedBoostConfig cfg;
  cfg.n_stages = 20;
  const auto m = tf::fit_ordered_boosting(x, y, cfg);
  ASSERT_EQ(m->ensembles().size(), 4u);
  for (const auto& e : m->ensembles()) {
    for (const auto& t : e.trees) {
      EXPECT_EQ(static_cast<int>(t.features.size()), t.depth());
      EXPECT_EQ(t.leaf_values.size(), std::size_t{1} << t.depth());
      // The expanded binary tree repeats each level's split across the level.
      const tf::Tree full = t.to_tree();
      std::vector<std::pair<int, int>> stack{{0, 0}};
      while (!stack.empty()) {
        const auto [id, level] = stack.back();
        stack.pop_back();
        const auto& node = full.nodes[static_cast<std::size_t>(id)];
        if (node.is_leaf()) continue;
        EXPECT_EQ(node.feature, t.features[static_cast<std::size_t>(level)]);
        EXPECT_EQ(node.threshold, t.thresholds[static_cast<std::size_t>(level)]);
        stack.emplace_back(node.left, level + 1);
        stack.emplace_back(node.right, level + 1);
      }
    }
  }
}

TEST(Ordered, FirstSampleOnlySeesPrior) {
  auto rng = tf::CounterRng::stream(10, "ordered_prefix");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 15, 2);
  const Eigen::VectorXd y = tftest::random_vector(rng, 15);
  tf::OrderedBoostConfig cfg;
  cfg.n_permutations = 1;
  cfg.shuffle = false;
  cfg.n_stages = 10;
  const auto m = tf::fit_ordered_boosting(x, y, cfg);
  const auto& e = m->ensembles().front();
  for (std::size_t i = 0; i < e.permutation.size(); ++i) EXPECT_EQ(e.permutation[i], i);
  EXPECT_EQ(e.supporting(0), m->base());
  EXPECT_NE(e.supporting(14), m->base());
}

TEST(Ordered, Deterministic) {
  auto rng = tf::CounterRng::stream(11, "ordered_det");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 30, 3);
  const Eigen::VectorXd y = tftest::random_vector(rng, 30);
  const auto a = tf::fit_ordered_boosting(x, y, {});
  const auto b = tf::fit_ordered_boosting(x, y, {});
  EXPECT_EQ(a->to_json().dump(), b->to_json().dump());
}

TEST(AdaBoost, SeparableStumpsConvergeFast) {
  const Eigen::MatrixXd x = col({0, 1, 2, 3, 10, 11, 12, 13});
  const Eigen::VectorXi y = ivec({0, 0, 0, 0, 1, 1, 1, 1});
  tf::AdaBoostConfig cfg;
  cfg.n_stages = 10;
  const auto m = tf::fit_adaboost(x, y, cfg);
  EXPECT_EQ(m->predict_labels(x), y);
  EXPECT_LE(m->stage_weights().size(), 10u);
}

TEST(AdaBoost, PerfectStageStopsTraining) {
  const Eigen::MatrixXd x = col({0, 1, 10, 11});
  const auto m = tf::fit_adaboost(x, ivec({0, 0, 1, 1}), {});
  EXPECT_EQ(m->stage_weights().size(), 1u);
}

TEST(AdaBoost, WeightsStayNormalized) {
  auto rng = tf::CounterRng::stream(12, "ada_weights");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 2);
  Eigen::VectorXi y(40);
  for (Eigen::Index i = 0; i < 40; ++i) y(i) = x(i, 0) + 0.3 * x(i, 1) > 0 ? 1 : 0;
  const auto m = tf::fit_adaboost(x, y, {});
  ASSERT_FALSE(m->weight_history().empty());
  for (const auto& w : m->weight_history()) EXPECT_NEAR(w.sum(), 1.0, 1e-12);
  const Eigen::VectorXd yr = x.col(0).array().sin();
  const auto r = tf::fit_adaboost(x, yr, {});
  for (const auto& w : r->weight_history()) EXPECT_NEAR(w.sum(), 1.0, 1e-12);
}

TEST(AdaBoost, ZeroStagesRejected) {
  tf::AdaBoostConfig cfg;
  cfg.n_stages = 0;
  EXPECT_THROW(tf::fit_adaboost(col({0, 1}), ivec({0, 1}), cfg), tf::InvalidArgument);
}

TEST(AdaBoost, RegressionPredictsWithinTargetRange) {
  const Step s;
  const auto m = tf::fit_adaboost(s.x, s.y, {});
  const Eigen::VectorXd p = m->predict(s.x);
  EXPECT_GE(p.minCoeff(), 0.0);
  EXPECT_LE(p.maxCoeff(), 10.0);
  EXPECT_LT(train_mse(*m, s.x, s.y), 1.0);
}

TEST(Importance, InformativeFeatureDominates) {
  auto rng = tf::CounterRng::stream(13, "importance");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 60, 2);
  Eigen::VectorXd y(60);
  for (Eigen::Index i = 0; i < 60; ++i) y(i) = x(i, 0) > 0 ? 1.0 : 0.0;
  const auto m = tf::fit_random_forest(x, y, {});
  const Eigen::VectorXd imp = tf::feature_importance(*m);
  EXPECT_GT(imp(0), 0.9);
  EXPECT_NEAR(imp.sum(), 1.0, 1e-12);
}

TEST(Importance, SumsToOneAcrossModels) {
  auto rng = tf::CounterRng::stream(14, "importance_sum");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 3);
  const Eigen::VectorXd y = (x.col(0).array() * 2 + x.col(1).array().square()).matrix();
  std::vector<std::unique_ptr<tf::FittedModel>> models;
  models.push_back(tf::fit_cart_regressor(x, y, 4));
  models.push_back(tf::fit_extra_trees(x, y));
  models.push_back(tf::fit_gradient_boosting_regressor(x, y, {}));
  models.push_back(tf::fit_second_order_boosting(x, y, {}));
  models.push_back(tf::fit_ordered_boosting(x, y, {}));
  models.push_back(tf::fit_adaboost(x, y, {}));
  for (const auto& m : models) {
    const Eigen::VectorXd imp = tf::feature_importance(*m);
    EXPECT_NEAR(imp.sum(), 1.0, 1e-12) << m->kind();
    EXPECT_GE(imp.minCoeff(), 0.0) << m->kind();
  }
}
