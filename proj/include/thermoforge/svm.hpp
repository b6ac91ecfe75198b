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

// Support vector regression and classification on a shared SMO core.
//
// Both problems are cast in the form
//
//   min_a  1/2 a'Qa + p'a   s.t.  y'a = 0,  0 <= a_t <= C
//
// with y_t in {-1, +1}. Classification uses Q_ts = y_t y_s K(x_t, x_s) and
// p = -1. Epsilon-SVR doubles the variables: a = [alpha; alpha*],
// y = [+1..; -1..], p = [eps - z; eps + z]. Each iteration optimizes one
// pair chosen by second-order working-set selection, so the dual objective
// -(1/2 a'Qa + p'a) never decreases.

#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "thermoforge/model.hpp"

namespace thermoforge {

enum class KernelType { kLinear, kRbf };

struct Kernel {
  KernelType type = KernelType::kRbf;
  double gamma = 0.0;

  double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b) const;
  Eigen::MatrixXd gram(const Eigen::MatrixXd& x) const;
};

struct SvmParams {
  double C = 1.0;
  double epsilon = 0.1;  // SVR tube half-width
  KernelType kernel = KernelType::kRbf;
  /// RBF width; 0 selects 1 / (n_features * var(X)) at fit time.
  double gamma = 0.0;
  /// Stop once the maximal KKT violation falls below this.
  double tolerance = 1e-3;
  /// Iteration cap; the model is flagged (not rejected) when reached.
  long max_passes = 100000;
};

void validate(const SvmParams& params);

struct SmoProblem {
  Eigen::MatrixXd q;  // full l x l matrix (signs folded in)
  Eigen::VectorXd p;
  Eigen::VectorXd y;  // +-1
  double c = 1.0;
};

struct SmoResult {
  Eigen::VectorXd alpha;
  double rho = 0.0;  // decision function is sum(y_t a_t K) - rho
  long iterations = 0;
  bool converged = false;
  /// -(1/2 a'Qa + p'a), before the first and after every iteration.
  std::vector<double> dual_objective;
};

SmoResult solve_smo(const SmoProblem& problem, double tolerance, long max_iterations);

class SvmModel final : public FittedModel {
 public:
  SvmModel(Task task, Kernel kernel, SvmParams params, Eigen::MatrixXd support_vectors, Eigen::VectorXd dual_coef,
           double bias, SmoResult solve, std::vector<std::string> warnings);

  Task task() const override { return task_; }
  std::string kind() const override { return task_ == Task::kRegression ? "svr" : "svc"; }
  Eigen::Index n_features() const override { return support_vectors_.cols(); }
  /// sum_i coef_i K(sv_i, x) + b: the regression value or the raw decision score.
  double predict_one(std::span<const double> x) const override;
  /// Class 1 iff the decision score is >= 0.
  int label_one(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

  double bias() const { return bias_; }
  Eigen::Index n_support() const { return support_vectors_.rows(); }
  bool converged() const { return solve_.converged; }
  const SmoResult& solve_info() const { return solve_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const Kernel& kernel() const { return kernel_; }

 private:
  Task task_;
  Kernel kernel_;
  SvmParams params_;
  Eigen::MatrixXd support_vectors_;
  Eigen::VectorXd dual_coef_;
  double bias_;
  SmoResult solve_;
  std::vector<std::string> warnings_;
};

/// Resolves the automatic RBF width for `x`.
Kernel make_kernel(const SvmParams& params, const Eigen::MatrixXd& x);

std::unique_ptr<SvmModel> fit_svr(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const SvmParams& params = {});
/// Labels in {0, 1} are mapped to {-1, +1}. Needs both classes present.
std::unique_ptr<SvmModel> fit_svc(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels,
                                  const SvmParams& params = {});

}  // namespace thermoforge
