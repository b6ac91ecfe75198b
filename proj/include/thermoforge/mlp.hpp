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

// Fully connected network with exact input derivatives and parameter
// gradients.
//
// A batch is pushed forward together with its first and second derivatives
// along up to two input coordinates (called t and x). A scalar loss of those
// outputs is recorded on a Tape; its output adjoints are then propagated back
// through the derivative-carrying forward pass by hand-derived rules, which
// gives the exact gradient of losses that contain u_t, u_xx and so on.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <span>
#include <vector>

#include "thermoforge/autodiff.hpp"
#include "thermoforge/errors.hpp"

namespace thermoforge {

enum class Activation { kTanh, kIdentity };

/// Parameters of an MLP. Hidden layers use `hidden`; the output layer is
/// always the identity.
struct Mlp {
  std::vector<int> layer_sizes;
  std::vector<Eigen::MatrixXd> weights;  // weights[l] is sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;
  Activation hidden = Activation::kTanh;
  std::uint64_t seed = 0;
  long step = 0;  // optimizer steps taken

  int input_width() const { return layer_sizes.front(); }
  int output_width() const { return layer_sizes.back(); }
  std::size_t n_layers() const { return weights.size(); }
  Eigen::Index n_params() const;
  /// Flat parameters: for each layer, W in column-major order, then b.
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& flat);
  /// Throws InvalidArgument when shapes disagree with layer_sizes.
  void validate() const;
};

/// Xavier-uniform weights from stream (seed, "xavier", layer); zero biases.
Mlp init_weights(const std::vector<int>& layer_sizes, std::uint64_t seed, Activation hidden = Activation::kTanh);
/// All weights and biases zero.
Mlp zero_network(const std::vector<int>& layer_sizes, Activation hidden = Activation::kTanh);

template <class T>
T activate(Activation a, const T& z) {
  using std::tanh;
  return a == Activation::kTanh ? tanh(z) : z;
}

/// Forward pass over any scalar type (double, Jet2, Var), summing each
/// neuron's inputs in index order starting from the bias.
template <class T>
std::vector<T> forward_generic(const Mlp& net, std::span<const T> input) {
  if (static_cast<int>(input.size()) != net.input_width()) {
    throw InvalidArgument("network expects " + std::to_string(net.input_width()) + " inputs, got " +
                          std::to_string(input.size()));
  }
  std::vector<T> a(input.begin(), input.end());
  for (std::size_t l = 0; l < net.n_layers(); ++l) {
    const Eigen::MatrixXd& w = net.weights[l];
    const bool last = l + 1 == net.n_layers();
    std::vector<T> z(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      T s = T(net.biases[l](r));
      for (Eigen::Index c = 0; c < w.cols(); ++c) s = s + T(w(r, c)) * a[static_cast<std::size_t>(c)];
      z[static_cast<std::size_t>(r)] = last ? s : activate(net.hidden, s);
    }
    a = std::move(z);
  }
  return a;
}

Eigen::VectorXd forward(const Mlp& net, std::span<const double> input);
/// Row-wise forward of a batch (rows = samples); returns batch x output_width.
Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs);

struct InputDerivatives {
  Eigen::VectorXd value;   // per output channel
  Eigen::VectorXd first;   // du/dx_i
  Eigen::VectorXd second;  // d2u/dx_i2 (empty when order == 1)
};

/// Exact derivatives of every output channel along input `wrt`.
InputDerivatives input_derivatives(const Mlp& net, std::span<const double> input, int wrt, int order = 2);

/// Input indices of the two derivative coordinates; -1 disables one.
struct JetDirections {
  int t = -1;
  int x = -1;
};

/// Network outputs and their derivatives over a batch, each output_width x batch.
struct BatchJets {
  Eigen::MatrixXd u, u_t, u_x, u_tt, u_xx;
};

BatchJets forward_jets(const Mlp& net, const Eigen::MatrixXd& inputs, JetDirections dirs);

/// Tape variables for a BatchJets, indexed [channel][sample].
struct JetVars {
  std::vector<std::vector<Var>> u, u_t, u_x, u_tt, u_xx;
  Eigen::Index batch_size() const { return u.empty() ? 0 : static_cast<Eigen::Index>(u.front().size()); }
};

/// Scalar loss of the batch outputs, built from Var arithmetic.
using LossFunction = std::function<Var(const JetVars&)>;

struct LossGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;  // same layout as Mlp::parameters()
};

/// Exact gradient of `loss` with respect to every network parameter.
/// Throws DivergenceError(batch_index) when the loss is not finite.
LossGradient parameter_gradient(const Mlp& net, const Eigen::MatrixXd& inputs, const LossFunction& loss,
                                JetDirections dirs = {}, long batch_index = 0);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-tensor first and second moments.
struct AdamState {
  AdamConfig config;
  long step = 0;
  std::vector<Eigen::VectorXd> m;
  std::vector<Eigen::VectorXd> v;

  AdamState() = default;
  explicit AdamState(const std::vector<Eigen::Index>& tensor_sizes, AdamConfig cfg = {});
};

/// One bias-corrected Adam update of every tensor.
void adam_step(AdamState& state, std::vector<Eigen::VectorXd>& params, const std::vector<Eigen::VectorXd>& grads);

nlohmann::json mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const nlohmann::json& j);

}  // namespace thermoforge
