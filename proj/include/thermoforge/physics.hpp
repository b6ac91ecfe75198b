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

// Physics-informed regression: PDE residual losses on an MLP u(t, x, ...).
//
// The process inputs are min-max normalized to [0, 1]; Rotational Rate plays
// x and Travel Speed plays t, the flow rate is an extra network input that no
// residual sees. The target is z-scored for training and mapped back to
// degrees Celsius for reporting.
//
//   transport    c u_t + u_x
//   wave         c^2 u_tt - u_xx     (u_tt - c^2 u_xx with textbook_wave)
//   heat         u_t - k u_xx
//   schrodinger  H psi - i hbar psi_t,  H = -(hbar^2 / 2m) d2/dx2,  psi = a + i b

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thermoforge/autodiff.hpp"
#include "thermoforge/dataset.hpp"
#include "thermoforge/mlp.hpp"

namespace thermoforge {

enum class Equation { kTransport, kWave, kHeat, kSchrodinger };

const char* equation_name(Equation e);
/// Accepts "transport", "wave", "heat" and "schrodinger".
Equation parse_equation(const std::string& name);

enum class Collocation { kTrainingPoints, kGrid };

struct PhysicsSpec {
  Equation equation = Equation::kTransport;
  double c = 1.0;
  double k = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
  std::string t_feature = std::string(data::kTravelSpeed);
  std::string x_feature = std::string(data::kRotationalRate);
  bool textbook_wave = false;
  Collocation collocation = Collocation::kTrainingPoints;
  int grid_size = 10;  // m for an m x m collocation grid

  void validate() const;
  int output_width() const { return equation == Equation::kSchrodinger ? 2 : 1; }
};

/// Value and derivatives of one output channel at one point.
template <class S>
struct FieldJets {
  S u{}, u_t{}, u_x{}, u_tt{}, u_xx{};
};

template <class S>
S transport_residual(const FieldJets<S>& j, const PhysicsSpec& s) {
  return S(s.c) * j.u_t + j.u_x;
}

template <class S>
S wave_residual(const FieldJets<S>& j, const PhysicsSpec& s) {
  const S c2(s.c * s.c);
  return s.textbook_wave ? j.u_tt - c2 * j.u_xx : c2 * j.u_tt - j.u_xx;
}

template <class S>
S heat_residual(const FieldJets<S>& j, const PhysicsSpec& s) {
  return j.u_t - S(s.k) * j.u_xx;
}

/// (real, imaginary) parts for psi = re + i im.
template <class S>
std::array<S, 2> schrodinger_residual(const FieldJets<S>& re, const FieldJets<S>& im, const PhysicsSpec& s) {
  const S kin(s.hbar * s.hbar / (2.0 * s.mass));
  const S hb(s.hbar);
  return {S(0.0) - kin * re.u_xx + hb * im.u_t, S(0.0) - kin * im.u_xx - hb * re.u_t};
}

/// Squared residual (squared modulus for the Schrodinger pair).
template <class S>
S squared_residual(std::span<const FieldJets<S>> channels, const PhysicsSpec& s) {
  switch (s.equation) {
    case Equation::kTransport: {
      const S r = transport_residual(channels[0], s);
      return r * r;
    }
    case Equation::kWave: {
      const S r = wave_residual(channels[0], s);
      return r * r;
    }
    case Equation::kHeat: {
      const S r = heat_residual(channels[0], s);
      return r * r;
    }
    case Equation::kSchrodinger: {
      const auto r = schrodinger_residual(channels[0], channels[1], s);
      return r[0] * r[0] + r[1] * r[1];
    }
  }
  return S(0.0);
}

/// Derivatives of a closed-form field f(t, x) -> std::array<Jet2, C>, using
/// the same jet arithmetic as the networks.
template <std::size_t C, class F>
std::array<FieldJets<double>, C> field_jets(F&& f, double t, double x) {
  const std::array<Jet2, C> along_t = f(Jet2::variable(t), Jet2(x));
  const std::array<Jet2, C> along_x = f(Jet2(t), Jet2::variable(x));
  std::array<FieldJets<double>, C> out;
  for (std::size_t c = 0; c < C; ++c) {
    out[c] = {along_t[c].v, along_t[c].d1, along_x[c].d1, along_t[c].d2, along_x[c].d2};
  }
  return out;
}

/// Jets of every output channel of `net` at one network input.
std::vector<FieldJets<double>> network_jets(const Mlp& net, std::span<const double> point, JetDirections dirs);

double transport_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec,
                          JetDirections dirs);
double wave_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec, JetDirections dirs);
double heat_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec, JetDirections dirs);
/// Requires a two-channel network (Re psi, Im psi).
std::complex<double> schrodinger_residual(const Mlp& net, std::span<const double> point, const PhysicsSpec& spec,
                                          JetDirections dirs);

/// (1/n) sum (u_i - y_i)^2.
double data_loss(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets);
/// Data loss of output channel 0 of `net`.
double data_loss(const Mlp& net, const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets);

struct LossComponents {
  double physics = 0.0;  // mean squared residual over collocation points
  double data = 0.0;
  double total = 0.0;    // weight * physics + data
};

struct PinnBatch {
  Eigen::MatrixXd inputs;       // normalized network inputs, one row per sample
  Eigen::VectorXd targets;      // standardized
  Eigen::MatrixXd collocation;  // empty: use `inputs`
  JetDirections dirs;
};

LossComponents total_loss(const Mlp& net, const PinnBatch& batch, const PhysicsSpec& spec, double physics_weight);
/// Loss and exact parameter gradient; DivergenceError(epoch) on a non-finite loss.
LossGradient total_loss_gradient(const Mlp& net, const PinnBatch& batch, const PhysicsSpec& spec,
                                 double physics_weight, long epoch);

struct PinnTrainConfig {
  int epochs = 2000;
  double learning_rate = 1e-3;
  double physics_weight = 1.0;
  std::uint64_t seed = 42;
  std::vector<int> hidden_layers = {32, 32};
  std::vector<std::string> inputs = {std::string(data::kRotationalRate), std::string(data::kTravelSpeed),
                                     std::string(data::kFlowRate)};

  void validate() const;
};

/// Maps raw process inputs to network inputs and network outputs to degrees C.
struct PinnScaling {
  std::vector<std::string> input_names;
  Eigen::VectorXd input_min, input_max;
  Eigen::VectorXd input_median;  // normalized training medians
  double target_mean = 0.0;
  double target_std = 1.0;
  JetDirections dirs;

  Eigen::MatrixXd normalize(const Eigen::MatrixXd& raw) const;
  Eigen::VectorXd to_celsius(const Eigen::VectorXd& standardized) const;
};

struct PinnHistoryRow {
  int epoch = 0;
  double physics = 0.0;
  double data = 0.0;
  double total = 0.0;
};

struct PinnResult {
  Mlp net;
  PinnScaling scaling;
  PhysicsSpec spec;
  PinnTrainConfig config;
  /// Loss at the parameters used for each epoch's update (row count = epochs).
  std::vector<PinnHistoryRow> history;
  LossComponents final_loss;  // after the last update
  Eigen::VectorXd test_predictions;  // degrees C
  double test_rmse = 0.0;
  double test_mae = 0.0;
  double seconds = 0.0;

  /// Predictions in degrees C for raw inputs (columns = scaling.input_names).
  Eigen::VectorXd predict(const Eigen::MatrixXd& raw) const;
};

/// Mean of the last `window` history totals (all of them if fewer).
double smoothed_final_loss(const std::vector<PinnHistoryRow>& history, int window = 10);

/// Full-batch Adam on the combined loss. Columns of the raw matrices follow
/// `cfg.inputs`; spec.t_feature and spec.x_feature must be among them.
PinnResult train_pinn(const Eigen::MatrixXd& train_x, const Eigen::VectorXd& train_y, const Eigen::MatrixXd& test_x,
                      const Eigen::VectorXd& test_y, const PhysicsSpec& spec, const PinnTrainConfig& cfg);
PinnResult train_pinn(const data::Dataset& train, const data::Dataset& test, const PhysicsSpec& spec,
                      const PinnTrainConfig& cfg);

struct ResponseSurface {
  std::string x_name, t_name;
  Eigen::VectorXd x_axis, t_axis;  // raw units
  Eigen::MatrixXd values;          // values(i, j) at (x_axis(i), t_axis(j)), degrees C
  double roughness = 0.0;          // mean |second difference| along both axes
};

/// m x m grid over the normalized (x, t) box, other inputs at their medians.
ResponseSurface response_surface(const Mlp& net, const PinnScaling& scaling, int m);

double grid_roughness(const Eigen::MatrixXd& values);

}  // namespace thermoforge
