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

#include "thermoforge/physics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "thermoforge/errors.hpp"

namespace thermoforge {

const char* equation_name(Equation e) {
  switch (e) {
    case Equation::kTransport: return "transport";
    case Equation::kWave: return "wave";
    case Equation::kHeat: return "heat";
    case Equation::kSchrodinger: return "schrodinger";
  }
  return "?";
}

Equation parse_equation(const std::string& name) {
  for (Equation e : {Equation::kTransport, Equation::kWave, Equation::kHeat, Equation::kSchrodinger}) {
    if (name == equation_name(e)) return e;
  }
  throw InvalidArgument("unknown equation '" + name + "'");
}

void PhysicsSpec::validate() const {
  if ((equation == Equation::kTransport || equation == Equation::kWave) && c == 0.0) {
    throw InvalidArgument("c must be nonzero for the transport and wave equations");
  }
  if (!std::isfinite(c)) throw InvalidArgument("c must be finite");
  if (!(k > 0.0)) throw InvalidArgument("k must be > 0");
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be > 0");
  if (!(mass > 0.0)) throw InvalidArgument("mass must be > 0");
  if (t_feature == x_feature) throw InvalidArgument("t and x must map to distinct features");
  if (collocation == Collocation::kGrid && grid_size < 2) throw InvalidArgument("collocation grid needs m >= 2");
}

void PinnTrainConfig::validate() const {
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be > 0");
  if (!(physics_weight >= 0.0)) throw InvalidArgument("physics_weight must be >= 0");
  for (int h : hidden_layers) {
    if (h < 1) throw InvalidArgument("hidden layer sizes must be >= 1");
  }
  if (inputs.size() < 2) throw InvalidArgument("a PINN needs at least the two coordinate inputs");
}

std::vector<FieldJets<double>> network_jets(const Mlp& net, std::span<const double> point, JetDirections dirs) {
  const Eigen::Map<const Eigen::RowVectorXd> row(point.data(), static_cast<Eigen::Index>(point.size()));
  const BatchJets j = forward_jets(net, row, dirs);
  std::vector<FieldJets<double>> out(static_cast<std::size_t>(net.output_width()));
  for (Eigen::Index c = 0; c < net.output_width(); ++c) {
    out[static_cast<std::size_t>(c)] = {j.u(c, 0), j.u_t(c, 0), j.u_x(c, 0), j.u_tt(c, 0), j.u_xx(c, 0)};
  }
  return out;
}

namespace {

std::vector<FieldJets<double>> checked_jets(const Mlp& net, std::span<const double> point, JetDirections dirs,
                                            int width) {
  if (net.output_width() != width) {
    throw InvalidArgument("residual needs a network with " + std::to_string(width) + " output channel(s), got " +
                          std::to_string(net.output_width()));
  }
  if (dirs.t < 0 || dirs.x < 0) throw InvalidArgument("residual needs both t and x input indices");
  auto j = network_jets(net, point, dirs);
  for (const auto& c : j) {
    if (!std::isfinite(c.u) || !std::isfinite(c.u_t) || !std::isfinite(c.u_x) || !std::isfinite(c.u_tt) ||
        !std::isfinite(c.u_xx)) {
      throw DivergenceError(0, "non-finite network derivative");
    }
  }
  return j;
}

}  // namespace

double transport_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec,
                          JetDirections dirs) {
  return transport_residual(checked_jets(net, point, dirs, 1)[0], spec);
}

double wave_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec, JetDirections dirs) {
  return wave_residual(checked_jets(net, point, dirs, 1)[0], spec);
}

double heat_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec, JetDirections dirs) {
  return heat_residual(checked_jets(net, point, dirs, 1)[0], spec);
}

std::complex<double> schrodinger_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec,
                                          JetDirections dirs) {
  const auto j = checked_jets(net, point, dirs, 2);
  const auto r = schrodinger_residual(j[0], j[1], spec);
  return {r[0], r[1]};
}

double data_loss(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
  if (predictions.size() != targets.size()) throw InvalidArgument("prediction and target lengths differ");
  if (predictions.size() == 0) throw InvalidArgument("data loss of an empty batch");
  return (predictions - targets).squaredNorm() / static_cast<double>(predictions.size());
}

double data_loss(const Mlp& net, const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets) {
  return data_loss(Eigen::VectorXd(forward_batch(net, inputs).col(0)), targets);
}

namespace {

// Rows of the stacked evaluation batch: data rows first, then collocation rows
// (which are the data rows themselves when no separate set is given).
struct Stacked {
  Eigen::MatrixXd inputs;
  Eigen::Index n_data = 0;
  Eigen::Index col_begin = 0;
  Eigen::Index n_col = 0;
};

Stacked stack(const PinnBatch& b) {
  Stacked s;
  s.n_data = b.inputs.rows();
  if (b.targets.size() != s.n_data) throw InvalidArgument("PINN batch has mismatched inputs and targets");
  if (s.n_data == 0) throw InvalidArgument("PINN batch is empty");
  if (b.collocation.size() == 0) {
    s.inputs = b.inputs;
    s.col_begin = 0;
    s.n_col = s.n_data;
  } else {
    if (b.collocation.cols() != b.inputs.cols()) throw InvalidArgument("collocation width differs from inputs");
    s.inputs.resize(s.n_data + b.collocation.rows(), b.inputs.cols());
    s.inputs << b.inputs, b.collocation;
    s.col_begin = s.n_data;
    s.n_col = b.collocation.rows();
  }
  return s;
}

template <class S, class Get>
std::array<S, 2> loss_parts(const Stacked& s, const Eigen::VectorXd& targets, const PhysicsSpec& spec, int width,
                            Get&& jets_of) {
  S physics(0.0);
  std::vector<FieldJets<S>> ch(static_cast<std::size_t>(width));
  for (Eigen::Index r = s.col_begin; r < s.col_begin + s.n_col; ++r) {
    for (int c = 0; c < width; ++c) ch[static_cast<std::size_t>(c)] = jets_of(c, r);
    physics = physics + squared_residual<S>(std::span<const FieldJets<S>>(ch), spec);
  }
  physics = physics / S(static_cast<double>(s.n_col));
  S data(0.0);
  for (Eigen::Index r = 0; r < s.n_data; ++r) {
    const S e = jets_of(0, r).u - S(targets(r));
    data = data + e * e;
  }
  data = data / S(static_cast<double>(s.n_data));
  return {physics, data};
}

}  // namespace

LossComponents total_loss(const Mlp& net, const PinnBatch& batch, const PhysicsSpec& spec, double physics_weight) {
  const Stacked s = stack(batch);
  const BatchJets j = forward_jets(net, s.inputs, batch.dirs);
  const auto parts = loss_parts<double>(s, batch.targets, spec, net.output_width(), [&](int c, Eigen::Index r) {
    return FieldJets<double>{j.u(c, r), j.u_t(c, r), j.u_x(c, r), j.u_tt(c, r), j.u_xx(c, r)};
  });
  return {parts[0], parts[1], physics_weight * parts[0] + parts[1]};
}

LossGradient total_loss_gradient(const Mlp& net, const PinnBatch& batch, const PhysicsSpec& spec,
                                 double physics_weight, long epoch) {
  const Stacked s = stack(batch);
  const int width = net.output_width();
  auto loss = [&](const JetVars& v) {
    const auto parts = loss_parts<Var>(s, batch.targets, spec, width, [&](int c, Eigen::Index r) {
      const auto ci = static_cast<std::size_t>(c);
      const auto ri = static_cast<std::size_t>(r);
      return FieldJets<Var>{v.u[ci][ri], v.u_t[ci][ri], v.u_x[ci][ri], v.u_tt[ci][ri], v.u_xx[ci][ri]};
    });
    return Var(physics_weight) * parts[0] + parts[1];
  };
  return parameter_gradient(net, s.inputs, loss, batch.dirs, epoch);
}

Eigen::MatrixXd PinnScaling::normalize(const Eigen::MatrixXd& raw) const {
  if (raw.cols() != input_min.size()) {
    throw InvalidArgument("expected " + std::to_string(input_min.size()) + " PINN inputs, got " +
                          std::to_string(raw.cols()));
  }
  Eigen::MatrixXd z(raw.rows(), raw.cols());
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    const double range = input_max(c) - input_min(c);
    if (range > 0.0) {
      z.col(c) = (raw.col(c).array() - input_min(c)) / range;
    } else {
      z.col(c).setConstant(0.5);
    }
  }
  return z;
}

Eigen::VectorXd PinnScaling::to_celsius(const Eigen::VectorXd& standardized) const {
  return (standardized.array() * target_std + target_mean).matrix();
}

Eigen::VectorXd PinnResult::predict(const Eigen::MatrixXd& raw) const {
  return scaling.to_celsius(forward_batch(net, scaling.normalize(raw)).col(0));
}

double smoothed_final_loss(const std::vector<PinnHistoryRow>& history, int window) {
  if (history.empty()) return 0.0;
  const std::size_t w = std::min(history.size(), static_cast<std::size_t>(std::max(window, 1)));
  double s = 0.0;
  for (std::size_t i = history.size() - w; i < history.size(); ++i) s += history[i].total;
  return s / static_cast<double>(w);
}

namespace {

double median(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  const Eigen::Index n = v.size();
  return n % 2 == 1 ? v(n / 2) : 0.5 * (v(n / 2 - 1) + v(n / 2));
}

Eigen::MatrixXd grid_inputs(const PinnScaling& sc, int m) {
  const Eigen::Index width = sc.input_min.size();
  Eigen::MatrixXd g(static_cast<Eigen::Index>(m) * m, width);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Eigen::Index r = static_cast<Eigen::Index>(i) * m + j;
      g.row(r) = sc.input_median.transpose();
      g(r, sc.dirs.x) = static_cast<double>(i) / (m - 1);
      g(r, sc.dirs.t) = static_cast<double>(j) / (m - 1);
    }
  }
  return g;
}

double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

}  // namespace

PinnResult train_pinn(const Eigen::MatrixXd& train_x, const Eigen::VectorXd& train_y, const Eigen::MatrixXd& test_x,
                      const Eigen::VectorXd& test_y, const PhysicsSpec& spec, const PinnTrainConfig& cfg) {
  spec.validate();
  cfg.validate();
  const auto width = static_cast<Eigen::Index>(cfg.inputs.size());
  if (train_x.cols() != width || test_x.cols() != width) {
    throw InvalidArgument("PINN input matrices must have " + std::to_string(width) + " columns");
  }
  if (train_x.rows() != train_y.size() || test_x.rows() != test_y.size()) {
    throw InvalidArgument("PINN inputs and targets have different lengths");
  }
  if (train_x.rows() < 2) throw InvalidArgument("PINN training needs at least 2 samples");
  if (!train_x.allFinite() || !train_y.allFinite()) throw InvalidArgument("PINN training data must be finite");
  auto index_of = [&](const std::string& name) {
    const auto it = std::find(cfg.inputs.begin(), cfg.inputs.end(), name);
    if (it == cfg.inputs.end()) throw InvalidArgument("coordinate feature '" + name + "' is not a PINN input");
    return static_cast<int>(it - cfg.inputs.begin());
  };

  PinnResult res;
  res.spec = spec;
  res.config = cfg;
  PinnScaling& sc = res.scaling;
  sc.input_names = cfg.inputs;
  sc.dirs = {index_of(spec.t_feature), index_of(spec.x_feature)};
  sc.input_min = train_x.colwise().minCoeff().transpose();
  sc.input_max = train_x.colwise().maxCoeff().transpose();
  sc.target_mean = train_y.mean();
  const double sd = std::sqrt((train_y.array() - sc.target_mean).square().mean());
  sc.target_std = sd > 0.0 ? sd : 1.0;

  PinnBatch batch;
  batch.inputs = sc.normalize(train_x);
  batch.targets = ((train_y.array() - sc.target_mean) / sc.target_std).matrix();
  batch.dirs = sc.dirs;
  sc.input_median.resize(width);
  for (Eigen::Index c = 0; c < width; ++c) sc.input_median(c) = median(batch.inputs.col(c));
  if (spec.collocation == Collocation::kGrid) batch.collocation = grid_inputs(sc, spec.grid_size);

  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(width));
  sizes.insert(sizes.end(), cfg.hidden_layers.begin(), cfg.hidden_layers.end());
  sizes.push_back(spec.output_width());
  res.net = init_weights(sizes, cfg.seed);

  const auto start = std::chrono::steady_clock::now();
  AdamConfig ac;
  ac.learning_rate = cfg.learning_rate;
  AdamState adam({res.net.n_params()}, ac);
  std::vector<Eigen::VectorXd> params{res.net.parameters()};
  res.history.reserve(static_cast<std::size_t>(cfg.epochs));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const LossComponents parts = total_loss(res.net, batch, spec, cfg.physics_weight);
    if (!std::isfinite(parts.total)) {
      throw DivergenceError(epoch, "PINN loss became non-finite at epoch " + std::to_string(epoch));
    }
    res.history.push_back({epoch, parts.physics, parts.data, parts.total});
    const LossGradient g = total_loss_gradient(res.net, batch, spec, cfg.physics_weight, epoch);
    adam_step(adam, params, {g.gradient});
    res.net.set_parameters(params[0]);
    ++res.net.step;
  }
  res.final_loss = total_loss(res.net, batch, spec, cfg.physics_weight);
  if (!std::isfinite(res.final_loss.total)) {
    throw DivergenceError(cfg.epochs, "PINN loss became non-finite after training");
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (test_x.rows() > 0) {
    res.test_predictions = res.predict(test_x);
    res.test_rmse = rmse(res.test_predictions, test_y);
    res.test_mae = (res.test_predictions - test_y).cwiseAbs().mean();
  }
  return res;
}

PinnResult train_pinn(const data::Dataset& train, const data::Dataset& test, const PhysicsSpec& spec,
                      const PinnTrainConfig& cfg) {
  return train_pinn(train.select(cfg.inputs), train.temperature, test.select(cfg.inputs), test.temperature, spec,
                    cfg);
}

double grid_roughness(const Eigen::MatrixXd& v) {
  double total = 0.0;
  long count = 0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 1; j + 1 < v.cols(); ++j) {
      total += std::abs(v(i, j + 1) - 2.0 * v(i, j) + v(i, j - 1));
      ++count;
    }
  }
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 1; i + 1 < v.rows(); ++i) {
      total += std::abs(v(i + 1, j) - 2.0 * v(i, j) + v(i - 1, j));
      ++count;
    }
  }
  return count > 0 ? total / static_cast<double>(count) : 0.0;
}

ResponseSurface response_surface(const Mlp& net, const PinnScaling& scaling, int m) {
  if (m < 2) throw InvalidArgument("response surface needs m >= 2");
  if (scaling.dirs.t < 0 || scaling.dirs.x < 0) throw InvalidArgument("scaling has no coordinate mapping");
  const Eigen::MatrixXd g = grid_inputs(scaling, m);
  const Eigen::VectorXd pred = scaling.to_celsius(forward_batch(net, g).col(0));
  ResponseSurface s;
  s.x_name = scaling.input_names[static_cast<std::size_t>(scaling.dirs.x)];
  s.t_name = scaling.input_names[static_cast<std::size_t>(scaling.dirs.t)];
  s.x_axis.resize(m);
  s.t_axis.resize(m);
  s.values.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const double f = static_cast<double>(i) / (m - 1);
    s.x_axis(i) = scaling.input_min(scaling.dirs.x) + f * (scaling.input_max(scaling.dirs.x) - scaling.input_min(scaling.dirs.x));
    s.t_axis(i) = scaling.input_min(scaling.dirs.t) + f * (scaling.input_max(scaling.dirs.t) - scaling.input_min(scaling.dirs.t));
    for (int j = 0; j < m; ++j) s.values(i, j) = pred(static_cast<Eigen::Index>(i) * m + j);
  }
  s.roughness = grid_roughness(s.values);
  return s;
}

}  // namespace thermoforge
