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

#include "thermoforge/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoforge/errors.hpp"
#include "thermoforge/tree.hpp"

namespace thermoforge {

namespace {

constexpr double kTau = 1e-12;

double objective(const SmoProblem& pr, const Eigen::VectorXd& alpha, const Eigen::VectorXd& grad) {
  // 1/2 a'Qa + p'a = 1/2 a'(G + p) with G = Qa + p.
  return -0.5 * alpha.dot(grad + pr.p);
}

std::vector<std::string> standardization_warnings(const Eigen::MatrixXd& x) {
  std::vector<std::string> out;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double sd = std::sqrt((x.col(j).array() - mean).square().mean());
    if (std::abs(mean) > 0.5 || (sd > 0.0 && (sd < 0.25 || sd > 4.0))) {
      out.push_back("feature " + std::to_string(j) + " does not look standardized (mean " + std::to_string(mean) +
                    ", std " + std::to_string(sd) + ")");
    }
  }
  return out;
}

}  // namespace

double Kernel::operator()(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                          const Eigen::Ref<const Eigen::RowVectorXd>& b) const {
  if (type == KernelType::kLinear) return a.dot(b);
  return std::exp(-gamma * (a - b).squaredNorm());
}

Eigen::MatrixXd Kernel::gram(const Eigen::MatrixXd& x) const {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      k(i, j) = k(j, i) = (*this)(x.row(i), x.row(j));
    }
  }
  return k;
}

void validate(const SvmParams& p) {
  if (!(p.C > 0.0)) throw InvalidArgument("SVM C must be > 0");
  if (!(p.epsilon >= 0.0)) throw InvalidArgument("SVR epsilon must be >= 0");
  if (p.kernel == KernelType::kRbf && p.gamma < 0.0) throw InvalidArgument("RBF gamma must be > 0 (or 0 for auto)");
  if (!(p.tolerance > 0.0)) throw InvalidArgument("SMO tolerance must be > 0");
  if (p.max_passes < 0) throw InvalidArgument("max_passes must be >= 0");
}

Kernel make_kernel(const SvmParams& params, const Eigen::MatrixXd& x) {
  Kernel k{params.kernel, params.gamma};
  if (k.type == KernelType::kRbf && k.gamma == 0.0) {
    const double mean = x.mean();
    const double var = (x.array() - mean).square().mean();
    k.gamma = var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
  }
  return k;
}

SmoResult solve_smo(const SmoProblem& pr, double tolerance, long max_iterations) {
  const Eigen::Index l = pr.p.size();
  const double c = pr.c;
  SmoResult res;
  res.alpha = Eigen::VectorXd::Zero(l);
  Eigen::VectorXd grad = pr.p;
  auto& a = res.alpha;
  const auto& y = pr.y;
  const auto& q = pr.q;

  auto is_up = [&](Eigen::Index t) { return (y(t) > 0 && a(t) < c) || (y(t) < 0 && a(t) > 0); };
  auto is_low = [&](Eigen::Index t) { return (y(t) > 0 && a(t) > 0) || (y(t) < 0 && a(t) < c); };

  res.dual_objective.push_back(objective(pr, a, grad));
  while (res.iterations < max_iterations) {
    // i: maximal violator in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < l; ++t) {
      if (is_up(t) && -y(t) * grad(t) >= gmax) {
        if (-y(t) * grad(t) > gmax || i < 0) {
          gmax = -y(t) * grad(t);
          i = t;
        }
      }
    }
    // j: second-order selection in I_low.
    double gmin = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < l; ++t) {
      if (!is_low(t)) continue;
      const double v = -y(t) * grad(t);
      gmin = std::min(gmin, v);
      if (i < 0) continue;
      const double b = gmax - v;
      if (b > 0) {
        double aa = q(i, i) + q(t, t) - 2.0 * y(i) * y(t) * q(i, t);
        if (aa <= 0) aa = kTau;
        const double score = -(b * b) / aa;
        if (score < best) {
          best = score;
          j = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax - gmin < tolerance) {
      res.converged = true;
      break;
    }

    const double old_ai = a(i), old_aj = a(j);
    if (y(i) != y(j)) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = a(i) - a(j);
      a(i) += delta;
      a(j) += delta;
      if (diff > 0) {
        if (a(j) < 0) {
          a(j) = 0;
          a(i) = diff;
        }
      } else if (a(i) < 0) {
        a(i) = 0;
        a(j) = -diff;
      }
      if (diff > 0) {
        if (a(i) > c) {
          a(i) = c;
          a(j) = c - diff;
        }
      } else if (a(j) > c) {
        a(j) = c;
        a(i) = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = a(i) + a(j);
      a(i) -= delta;
      a(j) += delta;
      if (sum > c) {
        if (a(i) > c) {
          a(i) = c;
          a(j) = sum - c;
        }
      } else if (a(j) < 0) {
        a(j) = 0;
        a(i) = sum;
      }
      if (sum > c) {
        if (a(j) > c) {
          a(j) = c;
          a(i) = sum - c;
        }
      } else if (a(i) < 0) {
        a(i) = 0;
        a(j) = sum;
      }
    }
    // Q here already carries y_t y_s, so the gradient update is direct.
    const double dai = a(i) - old_ai, daj = a(j) - old_aj;
    grad += q.col(i) * dai + q.col(j) * daj;
    ++res.iterations;
    res.dual_objective.push_back(objective(pr, a, grad));
  }

  if (res.iterations == 0 && max_iterations == 0) {
    res.rho = 0.0;  // untrained: f(x) = 0
    return res;
  }
  double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum = 0.0;
  long free_count = 0;
  for (Eigen::Index t = 0; t < l; ++t) {
    const double yg = y(t) * grad(t);
    if (a(t) >= c) {
      if (y(t) < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a(t) <= 0) {
      if (y(t) > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      sum += yg;
    }
  }
  res.rho = free_count > 0 ? sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  return res;
}

SvmModel::SvmModel(Task task, Kernel kernel, SvmParams params, Eigen::MatrixXd support_vectors,
                   Eigen::VectorXd dual_coef, double bias, SmoResult solve, std::vector<std::string> warnings)
    : task_(task),
      kernel_(kernel),
      params_(params),
      support_vectors_(std::move(support_vectors)),
      dual_coef_(std::move(dual_coef)),
      bias_(bias),
      solve_(std::move(solve)),
      warnings_(std::move(warnings)) {}

double SvmModel::predict_one(std::span<const double> x) const {
  check_width(x);
  const Eigen::Map<const Eigen::RowVectorXd> row(x.data(), static_cast<Eigen::Index>(x.size()));
  double f = bias_;
  for (Eigen::Index s = 0; s < support_vectors_.rows(); ++s) f += dual_coef_(s) * kernel_(support_vectors_.row(s), row);
  return f;
}

int SvmModel::label_one(std::span<const double> x) const { return predict_one(x) >= 0.0 ? 1 : 0; }

nlohmann::json SvmModel::to_json() const {
  return {{"kind", kind()},
          {"task", task_name(task_)},
          {"params",
           {{"C", params_.C},
            {"epsilon", params_.epsilon},
            {"kernel", kernel_.type == KernelType::kRbf ? "rbf" : "linear"},
            {"gamma", kernel_.gamma},
            {"tolerance", params_.tolerance},
            {"max_passes", params_.max_passes}}},
          {"bias", bias_},
          {"n_support", support_vectors_.rows()},
          {"support_vectors", thermoforge::to_json(support_vectors_)},
          {"dual_coef", thermoforge::to_json(dual_coef_)},
          {"iterations", solve_.iterations},
          {"converged", solve_.converged}};
}

namespace {

std::unique_ptr<SvmModel> build_model(Task task, const Eigen::MatrixXd& x, const Kernel& kernel,
                                      const SvmParams& params, const Eigen::VectorXd& coef, SmoResult res) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < coef.size(); ++i) {
    if (coef(i) != 0.0) keep.push_back(i);
  }
  Eigen::MatrixXd sv(static_cast<Eigen::Index>(keep.size()), x.cols());
  Eigen::VectorXd dc(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t s = 0; s < keep.size(); ++s) {
    sv.row(static_cast<Eigen::Index>(s)) = x.row(keep[s]);
    dc(static_cast<Eigen::Index>(s)) = coef(keep[s]);
  }
  auto warnings = standardization_warnings(x);
  if (!res.converged) {
    warnings.push_back("SMO stopped at max_passes=" + std::to_string(params.max_passes) + " before convergence");
  }
  const double bias = -res.rho;
  auto model = std::make_unique<SvmModel>(task, kernel, params, std::move(sv), std::move(dc), bias, std::move(res),
                                          std::move(warnings));
  return model;
}

}  // namespace

std::unique_ptr<SvmModel> fit_svr(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const SvmParams& params) {
  check_fit_input(x, y.size());
  validate(params);
  if (x.rows() < 2) throw InvalidArgument("SVR needs at least 2 samples");
  const Eigen::Index n = x.rows();
  const Kernel kernel = make_kernel(params, x);
  const Eigen::MatrixXd k = kernel.gram(x);

  SmoProblem pr;
  pr.c = params.C;
  pr.q.resize(2 * n, 2 * n);
  pr.q << k, -k, -k, k;
  pr.p.resize(2 * n);
  pr.p << (params.epsilon - y.array()).matrix(), (params.epsilon + y.array()).matrix();
  pr.y.resize(2 * n);
  pr.y << Eigen::VectorXd::Ones(n), -Eigen::VectorXd::Ones(n);

  SmoResult res = solve_smo(pr, params.tolerance, params.max_passes);
  const Eigen::VectorXd coef = res.alpha.head(n) - res.alpha.tail(n);
  return build_model(Task::kRegression, x, kernel, params, coef, std::move(res));
}

std::unique_ptr<SvmModel> fit_svc(const Eigen::MatrixXd& x, const Eigen::VectorXi& labels, const SvmParams& params) {
  check_fit_input(x, labels.size());
  check_binary_labels(labels);
  validate(params);
  const Eigen::Index n = x.rows();
  const Eigen::Index ones = labels.sum();
  if (ones == 0 || ones == n) throw InvalidArgument("SVC needs both classes in the training data");
  const Kernel kernel = make_kernel(params, x);
  const Eigen::MatrixXd k = kernel.gram(x);
  const Eigen::VectorXd ypm = 2.0 * labels.cast<double>().array() - 1.0;

  SmoProblem pr;
  pr.c = params.C;
  pr.q = (ypm * ypm.transpose()).cwiseProduct(k);
  pr.p = -Eigen::VectorXd::Ones(n);
  pr.y = ypm;

  SmoResult res = solve_smo(pr, params.tolerance, params.max_passes);
  const Eigen::VectorXd coef = res.alpha.cwiseProduct(ypm);
  return build_model(Task::kClassification, x, kernel, params, coef, std::move(res));
}

}  // namespace thermoforge
