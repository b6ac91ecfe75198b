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
#include "thermoforge/dataset.hpp"
#include "thermoforge/errors.hpp"
#include "thermoforge/metrics.hpp"

namespace tf = thermoforge;

namespace {

Eigen::VectorXi ints(std::initializer_list<int> v) {
  Eigen::VectorXi out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (int x : v) out(i++) = x;
  return out;
}

Eigen::VectorXd reals(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Random two-class labels with coarse scores so ties occur.
void random_scored(std::uint64_t seed, Eigen::VectorXi& truth, Eigen::VectorXd& scores) {
  auto rng = tf::CounterRng::stream(seed, "auc_vectors");
  const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(40));
  truth.resize(n);
  scores.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    truth(i) = static_cast<int>(rng.below(2));
    scores(i) = static_cast<double>(rng.below(8)) / 8.0;
  }
  truth(0) = 0;
  truth(1) = 1;
}

}  // namespace

TEST(RegressionMetrics, PerfectFit) {
  const Eigen::VectorXd y = reals({1, 2, 3});
  const auto m = tf::regression_metrics(y, y);
  EXPECT_EQ(m.mse, 0.0);
  EXPECT_EQ(m.mae, 0.0);
  EXPECT_EQ(m.r2, 1.0);
}

TEST(RegressionMetrics, MeanPredictorHasZeroR2) {
  const Eigen::VectorXd y = reals({1, 2, 6});
  EXPECT_NEAR(tf::regression_metrics(y, Eigen::VectorXd::Constant(3, 3.0)).r2, 0.0, 1e-15);
}

TEST(RegressionMetrics, HandValues) {
  const auto m = tf::regression_metrics(reals({1, 1}), reals({3, 5}));
  EXPECT_EQ(m.mse, 10.0);
  EXPECT_EQ(m.mae, 3.0);
  EXPECT_EQ(m.rmse, std::sqrt(10.0));
  EXPECT_TRUE(m.r2_undefined);
  EXPECT_EQ(m.r2, tf::kR2Undefined);
}

TEST(RegressionMetrics, ConstantTruthExactlyMatchedIsZero) {
  const auto m = tf::regression_metrics(reals({2, 2}), reals({2, 2}));
  EXPECT_EQ(m.r2, 0.0);
  EXPECT_FALSE(m.r2_undefined);
}

TEST(RegressionMetrics, Errors) {
  EXPECT_THROW(tf::regression_metrics(reals({1, 2}), reals({1})), tf::InvalidArgument);
  EXPECT_THROW(tf::regression_metrics(Eigen::VectorXd(0), Eigen::VectorXd(0)), tf::InvalidArgument);
}

TEST(Confusion, HandCount) {
  const auto cm = tf::confusion_matrix(ints({0, 1, 1, 0}), ints({0, 1, 0, 0}));
  EXPECT_EQ(cm.tn, 2);
  EXPECT_EQ(cm.fp, 0);
  EXPECT_EQ(cm.fn, 1);
  EXPECT_EQ(cm.tp, 1);
}

TEST(Confusion, AllCorrectAndAllFlipped) {
  const Eigen::VectorXi t = ints({0, 1, 1, 0, 1});
  const auto ok = tf::confusion_matrix(t, t);
  EXPECT_EQ(ok.fp + ok.fn, 0);
  const auto bad = tf::confusion_matrix(t, (1 - t.array()).matrix());
  EXPECT_EQ(bad.tp + bad.tn, 0);
  EXPECT_EQ(bad.total(), 5);
}

TEST(F1, ZeroDenominatorFlagged) {
  const auto f = tf::f1_score(tf::confusion_matrix(ints({0, 0}), ints({0, 0})));
  EXPECT_EQ(f.value, 0.0);
  EXPECT_TRUE(f.zero_denominator);
  EXPECT_DOUBLE_EQ(tf::f1_score({2, 0, 1, 1}).value, 2.0 / 3.0);
}

TEST(Auc, Examples) {
  const Eigen::VectorXi t = ints({0, 0, 1, 1});
  EXPECT_EQ(tf::roc_auc(t, reals({0.1, 0.2, 0.8, 0.9})), 1.0);
  EXPECT_EQ(tf::roc_auc(t, reals({0.9, 0.8, 0.2, 0.1})), 0.0);
  EXPECT_EQ(tf::roc_auc(t, reals({0.1, 0.6, 0.4, 0.9})), 0.75);
  EXPECT_EQ(tfo::pairwise_auc(t, reals({0.1, 0.6, 0.4, 0.9})), 0.75);
  EXPECT_EQ(tf::roc_auc(t, reals({0.5, 0.5, 0.5, 0.5})), 0.5);
}

TEST(Auc, SingleClassIsError) {
  EXPECT_THROW(tf::roc_auc(ints({1, 1}), reals({0.2, 0.3})), tf::InvalidArgument);
  const auto m = tf::classification_metrics(ints({1, 1}), ints({1, 0}), reals({0.9, 0.1}));
  EXPECT_FALSE(m.roc_auc.has_value());
  EXPECT_EQ(m.accuracy, 0.5);
}

TEST(Roc, Examples) {
  const auto p = tf::roc_points(ints({0, 1}), reals({0.2, 0.7}));
  const std::vector<std::pair<double, double>> expected = {{0, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(p, expected);
  const auto q = tf::roc_points(ints({0, 0, 1, 1}), reals({0.1, 0.6, 0.4, 0.9}));
  EXPECT_DOUBLE_EQ(tf::trapezoid_area(q), 0.75);
}

TEST(AucProperty, PairwiseEqualsTrapezoidAndOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Eigen::VectorXi t;
    Eigen::VectorXd s;
    random_scored(seed, t, s);
    const double auc = tf::roc_auc(t, s);
    const auto pts = tf::roc_points(t, s);
    EXPECT_NEAR(auc, tfo::pairwise_auc(t, s), 1e-12) << "seed " << seed;
    EXPECT_NEAR(auc, tf::trapezoid_area(pts), 1e-12) << "seed " << seed;
    EXPECT_NEAR(tfo::trapezoid(pts), tf::trapezoid_area(pts), 1e-12);
    EXPECT_EQ(pts.front(), std::make_pair(0.0, 0.0));
    EXPECT_EQ(pts.back(), std::make_pair(1.0, 1.0));
  }
}

TEST(AucProperty, InvariantUnderMonotoneTransformAndPermutation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Eigen::VectorXi t;
    Eigen::VectorXd s;
    random_scored(seed, t, s);
    const double auc = tf::roc_auc(t, s);
    EXPECT_EQ(tf::roc_auc(t, s.unaryExpr([](double v) { return std::exp(3.0 * v + 1.0); })), auc);
    auto rng = tf::CounterRng::stream(seed, "auc_perm");
    const auto perm = rng.permutation(static_cast<std::size_t>(t.size()));
    Eigen::VectorXi tp(t.size());
    Eigen::VectorXd sp(s.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      tp(i) = t(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
      sp(i) = s(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]));
    }
    EXPECT_EQ(tf::roc_auc(tp, sp), auc);
    EXPECT_NEAR(tf::roc_auc((1 - t.array()).matrix(), s), 1.0 - auc, 1e-15);
  }
}

TEST(Residuals, PerfectFitAndOrder) {
  const auto r = tf::residual_series(reals({1, 5, 2}), reals({1, 4, 3}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], std::make_pair(1.0, 0.0));
  EXPECT_EQ(r[1], std::make_pair(4.0, 1.0));
  EXPECT_EQ(r[2], std::make_pair(3.0, -1.0));
}

TEST(Residuals, LeastSquaresWithInterceptHasZeroMean) {
  auto rng = tf::CounterRng::stream(3, "ols_fixture");
  const Eigen::MatrixXd x = tftest::random_matrix(rng, 40, 3, -5, 5);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) y(i) = 2 * x(i, 0) - x(i, 2) + 7 + rng.normal();
  Eigen::MatrixXd a(40, 4);
  a << Eigen::VectorXd::Ones(40), x;
  const Eigen::VectorXd beta = a.colPivHouseholderQr().solve(y);
  double mean = 0.0;
  for (const auto& [pred, res] : tf::residual_series(y, a * beta)) mean += res / 40.0;
  EXPECT_LT(std::abs(mean), 1e-9);
}

TEST(Qq, SymmetricResiduals) {
  const auto q = tf::qq_points(reals({1, -1, 0}));
  ASSERT_EQ(q.size(), 3u);
  EXPECT_NEAR(q[1].first, 0.0, 1e-12);
  EXPECT_LT(q[0].first, q[1].first);
  EXPECT_LT(q[0].second, q[2].second);
  EXPECT_NEAR(q[2].second, std::sqrt(1.5), 1e-12);
}

TEST(InverseNormal, SpotValues) {
  EXPECT_NEAR(tf::inverse_normal_cdf(0.5), 0.0, 1e-15);
  EXPECT_NEAR(tf::inverse_normal_cdf(0.975), 1.959963984540054, 1e-9);
  EXPECT_THROW(tf::inverse_normal_cdf(0.0), tf::InvalidArgument);
  EXPECT_THROW(tf::inverse_normal_cdf(1.0), tf::InvalidArgument);
}

TEST(InverseNormalProperty, MatchesBisectionOracle) {
  for (int i = 1; i < 2000; ++i) {
    const double p = i / 2000.0;
    EXPECT_LT(std::abs(tf::inverse_normal_cdf(p) - tfo::normal_quantile(p)), 1e-7) << "p = " << p;
  }
  for (double p : {1e-10, 1e-6, 0.02425, 0.97575, 1 - 1e-6}) {
    EXPECT_LT(std::abs(tf::inverse_normal_cdf(p) - tfo::normal_quantile(p)), 1e-7) << "p = " << p;
  }
}

TEST(QqProperty, SortedInBothCoordinates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "qq");
    const auto q = tf::qq_points(tftest::random_vector(rng, 3 + static_cast<Eigen::Index>(rng.below(30))));
    for (std::size_t i = 1; i < q.size(); ++i) {
      EXPECT_LT(q[i - 1].first, q[i].first);
      EXPECT_LE(q[i - 1].second, q[i].second);
    }
  }
}
