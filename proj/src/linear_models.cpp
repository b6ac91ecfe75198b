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

#include "thermoforge/linear_models.hpp"

#include <cmath>

#include "thermoforge/errors.hpp"
#include "thermoforge/random.hpp"
#include "thermoforge/tree.hpp"

namespace thermoforge {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// -log sigma(z) without overflow.
double softplus_neg(double z) { return z >= 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z)); }

}  // namespace

double log_loss_from_logits(const Eigen::VectorXd& z, const Eigen::VectorXi& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    total += labels(i) == 1 ? softplus_neg(z(i)) : softplus_neg(-z(i));
  }
  return total / static_cast<double>(z.size());
}

void validate(const LogisticParams& p) {
  if (!(p.learning_rate > 0.0)) throw InvalidArgument("learning_rate must be > 0");
  if (p.n_epochs < 0) throw InvalidArgument("n_epochs must be >= 0");
  if (!(p.l2 >= 0.0)) throw InvalidArgument("l2 must be >= 0");
  if (!(p.threshold > 0.0 && p.threshold < 1.0)) throw InvalidArgument("threshold must lie in (0, 1)");
}

LinearLogitModel::LinearLogitModel(std::string kind, Eigen::VectorXd coef, double intercept, double threshold,
                                   std::vector<double> loss_history, nlohmann::json params)
    : kind_(std::move(kind)),
      coef_(std::move(coef)),
      intercept_(intercept),
      threshold_(threshold),
      loss_history_(std::move(loss_history)),
      params_(std::move(params)) {}

double LinearLogitModel::predict_one(std::span<const double> x) const {
  check_width(x);
  double z = intercept_;
  for (Eigen::Index j = 0; j < coef_.size(); ++j) z += coef_(j) * x[static_cast<std::size_t>(j)];
  return sigmoid(z);
}

int LinearLogitModel::label_one(std::span<const double> x) const { return predict_one(x) >= threshold_ ? 1 : 0; }

nlohmann::json LinearLogitModel::to_json() const {
  return {{"kind", kind_},
          {"task", "classification"},
          {"params", params_},
          {"coefficients", thermoforge::to_json(coef_)},
          {"intercept", intercept_},
          {"threshold", threshold_},
          {"final_loss", loss_history_.empty() ? 0.0 : loss_history_.back()}};
}

std::unique_ptr<LinearLogitModel> fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                               const LogisticParams& params) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  validate(params);
  const double n = static_cast<double>(x.rows());
  const Eigen::VectorXd y = labels.cast<double>();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  double beta0 = 0.0;

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(params.n_epochs) + 1);
  auto loss = [&](const Eigen::VectorXd& z) {
    return log_loss_from_logits(z, labels) + 0.5 * params.l2 * beta.squaredNorm();
  };
  Eigen::VectorXd z = (x * beta).array() + beta0;
  history.push_back(loss(z));
  for (int epoch = 0; epoch < params.n_epochs; ++epoch) {
    Eigen::VectorXd r(x.rows());
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = sigmoid(z(i)) - y(i);
    const Eigen::VectorXd grad = x.transpose() * r / n + params.l2 * beta;
    beta -= params.learning_rate * grad;
    beta0 -= params.learning_rate * r.mean();
    z = (x * beta).array() + beta0;
    history.push_back(loss(z));
  }
  if (!beta.allFinite() || !std::isfinite(beta0)) throw DivergenceError(params.n_epochs, "logistic regression diverged");

  nlohmann::json pj = {{"learning_rate", params.learning_rate},
                       {"n_epochs", params.n_epochs},
                       {"l2", params.l2},
                       {"threshold", params.threshold}};
  return std::make_unique<LinearLogitModel>("logistic_regression", std::move(beta), beta0, params.threshold,
                                            std::move(history), std::move(pj));
}

std::unique_ptr<LinearLogitModel> fit_sgd_classifier(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                                     const SgdParams& params) {
  if (!(params.learning_rate > 0.0)) throw InvalidArgument("SGD learning rate must be > 0");
  if (params.n_epochs < 1) throw InvalidArgument("SGD needs n_epochs >= 1");
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  const std::size_t n = static_cast<std::size_t>(x.rows());
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(x.cols());
  double b = 0.0;
  std::vector<double> history;
  auto epoch_loss = [&] {
    const Eigen::VectorXd z = (x * theta).array() + b;
    return log_loss_from_logits(z, labels);
  };
  history.push_back(epoch_loss());
  for (int epoch = 0; epoch < params.n_epochs; ++epoch) {
    auto rng = CounterRng::stream(params.seed, "sgd_epoch", static_cast<std::uint64_t>(epoch));
    for (std::size_t i : rng.permutation(n)) {
      const auto row = static_cast<Eigen::Index>(i);
      const double err = sigmoid(x.row(row).dot(theta) + b) - static_cast<double>(labels(row));
      theta -= params.learning_rate * err * x.row(row).transpose();
      if (params.fit_intercept) b -= params.learning_rate * err;
    }
    history.push_back(epoch_loss());
  }
  if (!theta.allFinite() || !std::isfinite(b)) throw DivergenceError(params.n_epochs, "SGD classifier diverged");

  nlohmann::json pj = {{"learning_rate", params.learning_rate},
                       {"n_epochs", params.n_epochs},
                       {"fit_intercept", params.fit_intercept},
                       {"seed", params.seed}};
  return std::make_unique<LinearLogitModel>("sgd_classifier", std::move(theta), b, 0.5, std::move(history),
                                            std::move(pj));
}

}  // namespace thermoforge
