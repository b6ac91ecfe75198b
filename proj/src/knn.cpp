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

#include "thermoforge/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "thermoforge/errors.hpp"
#include "thermoforge/tree.hpp"

namespace thermoforge {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("distance between points of different dimension");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

KnnResult knn_predict(const Eigen::MatrixXd& train_x, const Eigen::VectorXi& train_labels,
                      std::span<const double> query, int k) {
  const Eigen::Index n = train_x.rows();
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (k > n) throw InvalidArgument("k = " + std::to_string(k) + " exceeds training size " + std::to_string(n));
  if (static_cast<Eigen::Index>(query.size()) != train_x.cols()) {
    throw InvalidArgument("query has " + std::to_string(query.size()) + " features, expected " +
                          std::to_string(train_x.cols()));
  }
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<double> row(static_cast<std::size_t>(train_x.cols()));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < train_x.cols(); ++j) row[static_cast<std::size_t>(j)] = train_x(i, j);
    dist[static_cast<std::size_t>(i)] = euclidean_distance(row, query);
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  int votes[2] = {0, 0};
  double dsum[2] = {0.0, 0.0};
  for (int r = 0; r < k; ++r) {
    const std::size_t i = order[static_cast<std::size_t>(r)];
    const int c = train_labels(static_cast<Eigen::Index>(i));
    ++votes[c];
    dsum[c] += dist[i];
  }
  KnnResult out;
  out.score = static_cast<double>(votes[1]) / k;
  if (votes[1] != votes[0]) {
    out.label = votes[1] > votes[0] ? 1 : 0;
  } else {
    out.label = dsum[1] / votes[1] < dsum[0] / votes[0] ? 1 : 0;
  }
  return out;
}

KnnModel::KnnModel(Eigen::MatrixXd train_x, Eigen::VectorXi train_labels, int k)
    : train_x_(std::move(train_x)), train_labels_(std::move(train_labels)), k_(k) {}

double KnnModel::predict_one(std::span<const double> x) const {
  return knn_predict(train_x_, train_labels_, x, k_).score;
}

int KnnModel::label_one(std::span<const double> x) const { return knn_predict(train_x_, train_labels_, x, k_).label; }

nlohmann::json KnnModel::to_json() const {
  return {{"kind", "knn"},
          {"task", "classification"},
          {"params", {{"k", k_}, {"metric", "euclidean"}}},
          {"n_train", train_x_.rows()},
          {"train_x", thermoforge::to_json(train_x_)},
          {"train_labels", std::vector<int>(train_labels_.data(), train_labels_.data() + train_labels_.size())}};
}

std::unique_ptr<KnnModel> fit_knn(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels, int k) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (k > x.rows()) throw InvalidArgument("k = " + std::to_string(k) + " exceeds training size " +
                                          std::to_string(x.rows()));
  return std::make_unique<KnnModel>(x, labels, k);
}

}  // namespace thermoforge
