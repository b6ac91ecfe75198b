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

// Independent reference implementations. None of these call into the
// library; they are written from the definitions, favouring clarity over speed.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

namespace tfo {

struct RootSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // weighted child variance
};

inline double variance_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

/// Every (feature, midpoint) candidate scored by weighted child variance.
/// Ties within 1e-12 (relative) go to the lower feature, then lower threshold.
inline RootSplit brute_force_root_split(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  RootSplit best;
  const double n = static_cast<double>(y.size());
  if (y.maxCoeff() == y.minCoeff()) return best;
  for (int f = 0; f < x.cols(); ++f) {
    std::set<double> distinct;
    for (Eigen::Index i = 0; i < x.rows(); ++i) distinct.insert(x(i, f));
    std::vector<double> values(distinct.begin(), distinct.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double thr = values[k] + (values[k + 1] - values[k]) / 2.0;
      std::vector<double> left, right;
      for (Eigen::Index i = 0; i < x.rows(); ++i) (x(i, f) <= thr ? left : right).push_back(y(i));
      const double score = (static_cast<double>(left.size()) * variance_of(left) +
                            static_cast<double>(right.size()) * variance_of(right)) /
                           n;
      bool take = !best.found;
      if (best.found) {
        const double tol = 1e-12 * std::max(1.0, std::abs(best.score));
        take = score < best.score - tol;
      }
      if (take) best = {true, f, thr, score};
    }
  }
  return best;
}

/// Mann-Whitney AUC by enumerating every positive/negative pair.
inline double pairwise_auc(const Eigen::VectorXi& truth, const Eigen::VectorXd& scores) {
  double wins = 0.0, pairs = 0.0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    if (truth(i) != 1) continue;
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth(j) != 0) continue;
      pairs += 1.0;
      if (scores(i) > scores(j)) wins += 1.0;
      if (scores(i) == scores(j)) wins += 0.5;
    }
  }
  return wins / pairs;
}

inline double trapezoid(const std::vector<std::pair<double, double>>& pts) {
  double a = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    a += (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second) / 2.0;
  }
  return a;
}

/// Standard normal quantile by bisection on the exact CDF.
inline double normal_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tfo
