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

#include "thermoforge/mlp.hpp"

#include <cmath>
#include <string>

#include "thermoforge/random.hpp"

namespace thermoforge {

Eigen::Index Mlp::n_params() const {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
  return n;
}

Eigen::VectorXd Mlp::parameters() const {
  Eigen::VectorXd flat(n_params());
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    flat.segment(k, weights[l].size()) = weights[l].reshaped();
    k += weights[l].size();
    flat.segment(k, biases[l].size()) = biases[l];
    k += biases[l].size();
  }
  return flat;
}

void Mlp::set_parameters(const Eigen::VectorXd& flat) {
  if (flat.size() != n_params()) {
    throw InvalidArgument("expected " + std::to_string(n_params()) + " parameters, got " +
                          std::to_string(flat.size()));
  }
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l].reshaped() = flat.segment(k, weights[l].size());
    k += weights[l].size();
    biases[l] = flat.segment(k, biases[l].size());
    k += biases[l].size();
  }
}

void Mlp::validate() const {
  if (layer_sizes.size() < 2) throw InvalidArgument("an MLP needs at least input and output layer sizes");
  for (int s : layer_sizes) {
    if (s < 1) throw InvalidArgument("layer sizes must be >= 1");
  }
  if (weights.size() + 1 != layer_sizes.size() || biases.size() != weights.size()) {
    throw InvalidArgument("parameter count does not match layer_sizes");
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() != layer_sizes[l + 1] || weights[l].cols() != layer_sizes[l] ||
        biases[l].size() != layer_sizes[l + 1]) {
      throw InvalidArgument("layer " + std::to_string(l) + " has inconsistent shape");
    }
  }
}

Mlp zero_network(const std::vector<int>& layer_sizes, Activation hidden) {
  if (layer_sizes.empty()) throw InvalidArgument("layer_sizes is empty");
  Mlp net;
  net.layer_sizes = layer_sizes;
  net.hidden = hidden;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    net.weights.push_back(Eigen::MatrixXd::Zero(layer_sizes[l + 1], layer_sizes[l]));
    net.biases.push_back(Eigen::VectorXd::Zero(layer_sizes[l + 1]));
  }
  net.validate();
  return net;
}

Mlp init_weights(const std::vector<int>& layer_sizes, std::uint64_t seed, Activation hidden) {
  Mlp net = zero_network(layer_sizes, hidden);
  net.seed = seed;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    auto rng = CounterRng::stream(seed, "xavier", l);
    const double limit = std::sqrt(6.0 / static_cast<double>(layer_sizes[l] + layer_sizes[l + 1]));
    auto& w = net.weights[l];
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = rng.uniform(-limit, limit);
    }
  }
  return net;
}

Eigen::VectorXd forward(const Mlp& net, std::span<const double> input) {
  const std::vector<double> out = forward_generic<double>(net, input);
  return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != net.input_width()) {
    throw InvalidArgument("network expects " + std::to_string(net.input_width()) + " inputs, got " +
                          std::to_string(inputs.cols()));
  }
  Eigen::MatrixXd a = inputs.transpose();
  for (std::size_t l = 0; l < net.n_layers(); ++l) {
    Eigen::MatrixXd z = net.weights[l] * a;
    z.colwise() += net.biases[l];
    if (l + 1 < net.n_layers() && net.hidden == Activation::kTanh) z = z.array().tanh().matrix();
    a = std::move(z);
  }
  return a.transpose();
}

InputDerivatives input_derivatives(const Mlp& net, std::span<const double> input, int wrt, int order) {
  if (order != 1 && order != 2) throw InvalidArgument("derivative order must be 1 or 2");
  if (wrt < 0 || wrt >= net.input_width()) {
    throw InvalidArgument("input index " + std::to_string(wrt) + " out of range");
  }
  std::vector<Jet2> x(input.begin(), input.end());
  if (static_cast<int>(x.size()) != net.input_width()) {
    throw InvalidArgument("network expects " + std::to_string(net.input_width()) + " inputs, got " +
                          std::to_string(x.size()));
  }
  x[static_cast<std::size_t>(wrt)] = Jet2::variable(input[static_cast<std::size_t>(wrt)]);
  const std::vector<Jet2> out = forward_generic<Jet2>(net, x);
  InputDerivatives d;
  const auto n = static_cast<Eigen::Index>(out.size());
  d.value.resize(n);
  d.first.resize(n);
  if (order == 2) d.second.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    d.value(c) = out[static_cast<std::size_t>(c)].v;
    d.first(c) = out[static_cast<std::size_t>(c)].d1;
    if (order == 2) d.second(c) = out[static_cast<std::size_t>(c)].d2;
  }
  return d;
}

namespace {

// A layer's activations (or pre-activations) with their directional derivatives.
struct Pack {
  Eigen::MatrixXd v, t, x, tt, xx;
};

struct LayerCache {
  Pack input;  // activations entering the layer
  Pack z;      // pre-activations
  Eigen::MatrixXd act, d1, d2;  // sigma(z), sigma', sigma'' (hidden tanh layers only)
};

struct JetForward {
  std::vector<LayerCache> layers;
  Pack out;
};

Pack linear(const Eigen::MatrixXd& w, const Eigen::VectorXd& b, const Pack& a, const JetDirections& d) {
  Pack z;
  z.v = w * a.v;
  z.v.colwise() += b;
  if (d.t >= 0) {
    z.t = w * a.t;
    z.tt = w * a.tt;
  }
  if (d.x >= 0) {
    z.x = w * a.x;
    z.xx = w * a.xx;
  }
  return z;
}

JetForward run_forward(const Mlp& net, const Eigen::MatrixXd& inputs, JetDirections d) {
  net.validate();
  if (inputs.cols() != net.input_width()) {
    throw InvalidArgument("network expects " + std::to_string(net.input_width()) + " inputs, got " +
                          std::to_string(inputs.cols()));
  }
  for (int idx : {d.t, d.x}) {
    if (idx >= net.input_width()) throw InvalidArgument("derivative input index " + std::to_string(idx) + " out of range");
  }
  if (d.t >= 0 && d.t == d.x) throw InvalidArgument("t and x must be distinct inputs");
  const Eigen::Index batch = inputs.rows();
  const Eigen::Index in = inputs.cols();
  Pack a;
  a.v = inputs.transpose();
  if (d.t >= 0) {
    a.t = Eigen::MatrixXd::Zero(in, batch);
    a.t.row(d.t).setOnes();
    a.tt = Eigen::MatrixXd::Zero(in, batch);
  }
  if (d.x >= 0) {
    a.x = Eigen::MatrixXd::Zero(in, batch);
    a.x.row(d.x).setOnes();
    a.xx = Eigen::MatrixXd::Zero(in, batch);
  }
  JetForward f;
  for (std::size_t l = 0; l < net.n_layers(); ++l) {
    LayerCache c;
    c.input = std::move(a);
    c.z = linear(net.weights[l], net.biases[l], c.input, d);
    const bool squash = l + 1 < net.n_layers() && net.hidden == Activation::kTanh;
    if (squash) {
      c.act = c.z.v.array().tanh().matrix();
      c.d1 = (1.0 - c.act.array().square()).matrix();
      c.d2 = (-2.0 * c.act.array() * c.d1.array()).matrix();
      a.v = c.act;
      if (d.t >= 0) {
        a.t = c.d1.cwiseProduct(c.z.t);
        a.tt = c.d2.cwiseProduct(c.z.t.cwiseAbs2()) + c.d1.cwiseProduct(c.z.tt);
      }
      if (d.x >= 0) {
        a.x = c.d1.cwiseProduct(c.z.x);
        a.xx = c.d2.cwiseProduct(c.z.x.cwiseAbs2()) + c.d1.cwiseProduct(c.z.xx);
      }
    } else {
      a = c.z;
    }
    f.layers.push_back(std::move(c));
  }
  f.out = std::move(a);
  return f;
}

}  // namespace

BatchJets forward_jets(const Mlp& net, const Eigen::MatrixXd& inputs, JetDirections dirs) {
  JetForward f = run_forward(net, inputs, dirs);
  const Eigen::Index out = net.output_width(), batch = inputs.rows();
  BatchJets j;
  j.u = std::move(f.out.v);
  j.u_t = dirs.t >= 0 ? std::move(f.out.t) : Eigen::MatrixXd::Zero(out, batch);
  j.u_tt = dirs.t >= 0 ? std::move(f.out.tt) : Eigen::MatrixXd::Zero(out, batch);
  j.u_x = dirs.x >= 0 ? std::move(f.out.x) : Eigen::MatrixXd::Zero(out, batch);
  j.u_xx = dirs.x >= 0 ? std::move(f.out.xx) : Eigen::MatrixXd::Zero(out, batch);
  return j;
}

LossGradient parameter_gradient(const Mlp& net, const Eigen::MatrixXd& inputs, const LossFunction& loss,
                                JetDirections dirs, long batch_index) {
  JetForward f = run_forward(net, inputs, dirs);
  const Eigen::Index out = net.output_width(), batch = inputs.rows();
  const bool has_t = dirs.t >= 0, has_x = dirs.x >= 0;

  Tape tape;
  JetVars vars;
  auto record = [&](std::vector<std::vector<Var>>& dst, const Eigen::MatrixXd* src) {
    dst.assign(static_cast<std::size_t>(out), std::vector<Var>(static_cast<std::size_t>(batch)));
    for (Eigen::Index c = 0; c < out; ++c) {
      for (Eigen::Index s = 0; s < batch; ++s) {
        dst[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] =
            src != nullptr ? tape.variable((*src)(c, s)) : Var(0.0);
      }
    }
  };
  record(vars.u, &f.out.v);
  record(vars.u_t, has_t ? &f.out.t : nullptr);
  record(vars.u_x, has_x ? &f.out.x : nullptr);
  record(vars.u_tt, has_t ? &f.out.tt : nullptr);
  record(vars.u_xx, has_x ? &f.out.xx : nullptr);

  const Var l = loss(vars);
  if (!std::isfinite(l.value)) {
    throw DivergenceError(batch_index, "non-finite loss in batch " + std::to_string(batch_index));
  }
  const std::vector<double> adj = tape.gradient(l);
  auto adjoint = [&](const std::vector<std::vector<Var>>& src) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(out, batch);
    for (Eigen::Index c = 0; c < out; ++c) {
      for (Eigen::Index s = 0; s < batch; ++s) {
        const Var& v = src[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
        if (v.id >= 0) m(c, s) = adj[static_cast<std::size_t>(v.id)];
      }
    }
    return m;
  };
  Pack bar;
  bar.v = adjoint(vars.u);
  if (has_t) {
    bar.t = adjoint(vars.u_t);
    bar.tt = adjoint(vars.u_tt);
  }
  if (has_x) {
    bar.x = adjoint(vars.u_x);
    bar.xx = adjoint(vars.u_xx);
  }

  LossGradient result;
  result.loss = l.value;
  result.gradient.resize(net.n_params());
  std::vector<Eigen::Index> offset(net.n_layers());
  {
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < net.n_layers(); ++i) {
      offset[i] = k;
      k += net.weights[i].size() + net.biases[i].size();
    }
  }

  for (std::size_t li = net.n_layers(); li-- > 0;) {
    const LayerCache& c = f.layers[li];
    Pack zb;
    if (c.act.size() > 0) {
      // Adjoints through a = sigma(z), a_d = s1 z_d, a_dd = s2 z_d^2 + s1 z_dd.
      const Eigen::ArrayXXd s1 = c.d1.array(), s2 = c.d2.array();
      const Eigen::ArrayXXd s3 = s1 * (6.0 * c.act.array().square() - 2.0);
      Eigen::ArrayXXd zv = bar.v.array() * s1;
      auto direction = [&](const Eigen::MatrixXd& ad, const Eigen::MatrixXd& add, const Eigen::MatrixXd& zd,
                           const Eigen::MatrixXd& zdd, Eigen::MatrixXd& zbd, Eigen::MatrixXd& zbdd) {
        const Eigen::ArrayXXd a1 = ad.array(), a2 = add.array(), z1 = zd.array(), z2 = zdd.array();
        zv += a1 * s2 * z1 + a2 * (s3 * z1.square() + s2 * z2);
        zbd = (a1 * s1 + 2.0 * a2 * s2 * z1).matrix();
        zbdd = (a2 * s1).matrix();
      };
      if (has_t) direction(bar.t, bar.tt, c.z.t, c.z.tt, zb.t, zb.tt);
      if (has_x) direction(bar.x, bar.xx, c.z.x, c.z.xx, zb.x, zb.xx);
      zb.v = zv.matrix();
    } else {
      zb = std::move(bar);
    }

    const Eigen::MatrixXd& w = net.weights[li];
    Eigen::MatrixXd wbar = zb.v * c.input.v.transpose();
    if (has_t) wbar += zb.t * c.input.t.transpose() + zb.tt * c.input.tt.transpose();
    if (has_x) wbar += zb.x * c.input.x.transpose() + zb.xx * c.input.xx.transpose();
    result.gradient.segment(offset[li], w.size()) = wbar.reshaped();
    result.gradient.segment(offset[li] + w.size(), w.rows()) = zb.v.rowwise().sum();

    if (li > 0) {
      bar.v = w.transpose() * zb.v;
      if (has_t) {
        bar.t = w.transpose() * zb.t;
        bar.tt = w.transpose() * zb.tt;
      }
      if (has_x) {
        bar.x = w.transpose() * zb.x;
        bar.xx = w.transpose() * zb.xx;
      }
    }
  }
  if (!result.gradient.allFinite()) {
    throw DivergenceError(batch_index, "non-finite gradient in batch " + std::to_string(batch_index));
  }
  return result;
}

AdamState::AdamState(const std::vector<Eigen::Index>& tensor_sizes, AdamConfig cfg) : config(cfg) {
  if (!(cfg.learning_rate > 0.0)) throw InvalidArgument("Adam learning rate must be > 0");
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0) || !(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
    throw InvalidArgument("Adam betas must lie in [0, 1)");
  }
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("Adam epsilon must be > 0");
  for (Eigen::Index n : tensor_sizes) {
    m.push_back(Eigen::VectorXd::Zero(n));
    v.push_back(Eigen::VectorXd::Zero(n));
  }
}

void adam_step(AdamState& state, std::vector<Eigen::VectorXd>& params, const std::vector<Eigen::VectorXd>& grads) {
  if (params.size() != state.m.size() || grads.size() != state.m.size()) {
    throw InvalidArgument("Adam state holds " + std::to_string(state.m.size()) + " tensors, got " +
                          std::to_string(params.size()) + " parameters and " + std::to_string(grads.size()) +
                          " gradients");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k].size() != state.m[k].size() || grads[k].size() != state.m[k].size()) {
      throw InvalidArgument("Adam tensor " + std::to_string(k) + " has mismatched shape");
    }
  }
  ++state.step;
  const AdamConfig& c = state.config;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    state.m[k] = c.beta1 * state.m[k] + (1.0 - c.beta1) * grads[k];
    state.v[k] = c.beta2 * state.v[k] + (1.0 - c.beta2) * grads[k].cwiseAbs2();
    const Eigen::ArrayXd mhat = state.m[k].array() / bc1;
    const Eigen::ArrayXd vhat = state.v[k].array() / bc2;
    params[k].array() -= c.learning_rate * mhat / (vhat.sqrt() + c.epsilon);
  }
}

nlohmann::json mlp_to_json(const Mlp& net) {
  const Eigen::VectorXd p = net.parameters();
  return {{"format", "thermoforge-mlp/1"},
          {"layer_sizes", net.layer_sizes},
          {"hidden_activation", net.hidden == Activation::kTanh ? "tanh" : "identity"},
          {"seed", net.seed},
          {"step", net.step},
          {"parameters", std::vector<double>(p.data(), p.data() + p.size())}};
}

Mlp mlp_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "thermoforge-mlp/1") throw InvalidArgument("unknown MLP format");
    const std::string act = j.at("hidden_activation").get<std::string>();
    if (act != "tanh" && act != "identity") throw InvalidArgument("unknown activation '" + act + "'");
    Mlp net = zero_network(j.at("layer_sizes").get<std::vector<int>>(),
                           act == "tanh" ? Activation::kTanh : Activation::kIdentity);
    net.seed = j.at("seed").get<std::uint64_t>();
    net.step = j.at("step").get<long>();
    const auto p = j.at("parameters").get<std::vector<double>>();
    net.set_parameters(Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed MLP checkpoint: ") + e.what());
  }
}

}  // namespace thermoforge
