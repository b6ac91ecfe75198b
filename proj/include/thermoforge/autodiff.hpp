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

// Two scalar types for exact derivatives.
//
// Jet2 is a truncated Taylor number (f, f', f'') along one direction; pushing
// it through a program yields exact first and second directional derivatives.
//
// Var is a reverse-mode scalar recorded on a Tape. A Var without a tape is a
// constant, so code templated on the scalar type can mix Vars and doubles.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace thermoforge {

struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet2(double value, double first, double second) : v(value), d1(first), d2(second) {}

  /// The seed for differentiating along this coordinate.
  static Jet2 variable(double value) { return {value, 1.0, 0.0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}

namespace jet_detail {
// f(g) given f(v), f'(v), f''(v).
inline Jet2 chain(const Jet2& g, double f0, double f1, double f2) {
  return {f0, f1 * g.d1, f1 * g.d2 + f2 * g.d1 * g.d1};
}
}  // namespace jet_detail

inline Jet2 sin(const Jet2& a) { return jet_detail::chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return jet_detail::chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return jet_detail::chain(a, e, e, e);
}
inline Jet2 tanh(const Jet2& a) {
  const double t = std::tanh(a.v);
  const double s = 1.0 - t * t;
  return jet_detail::chain(a, t, s, -2.0 * t * s);
}

class Tape;

struct Var {
  Tape* tape = nullptr;
  int id = -1;
  double value = 0.0;

  Var() = default;
  Var(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Var(Tape* t, int i, double v) : tape(t), id(i), value(v) {}
};

/// Linear record of elementary operations; each node has at most two parents.
class Tape {
 public:
  Var variable(double value);
  /// Adjoint of every node with respect to `output` (index = Var::id).
  std::vector<double> gradient(const Var& output) const;
  std::size_t size() const { return nodes_.size(); }

  /// Records a node with local partials; parents with id < 0 are constants.
  Var push(double value, const Var& a, double da, const Var& b = Var(), double db = 0.0);

 private:
  struct Node {
    int a = -1;
    int b = -1;
    double da = 0.0;
    double db = 0.0;
  };
  std::vector<Node> nodes_;
};

namespace var_detail {
inline Tape* tape_of(const Var& a, const Var& b) { return a.tape != nullptr ? a.tape : b.tape; }
inline Var unary(const Var& a, double value, double da) {
  if (a.tape == nullptr) return Var(value);
  return a.tape->push(value, a, da);
}
inline Var binary(const Var& a, const Var& b, double value, double da, double db) {
  Tape* t = tape_of(a, b);
  if (t == nullptr) return Var(value);
  return t->push(value, a, da, b, db);
}
}  // namespace var_detail

inline Var operator+(const Var& a, const Var& b) { return var_detail::binary(a, b, a.value + b.value, 1.0, 1.0); }
inline Var operator-(const Var& a, const Var& b) { return var_detail::binary(a, b, a.value - b.value, 1.0, -1.0); }
inline Var operator-(const Var& a) { return var_detail::unary(a, -a.value, -1.0); }
inline Var operator*(const Var& a, const Var& b) {
  return var_detail::binary(a, b, a.value * b.value, b.value, a.value);
}
inline Var operator/(const Var& a, const Var& b) {
  const double q = a.value / b.value;
  return var_detail::binary(a, b, q, 1.0 / b.value, -q / b.value);
}
inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var sin(const Var& a) { return var_detail::unary(a, std::sin(a.value), std::cos(a.value)); }
inline Var cos(const Var& a) { return var_detail::unary(a, std::cos(a.value), -std::sin(a.value)); }
inline Var exp(const Var& a) {
  const double e = std::exp(a.value);
  return var_detail::unary(a, e, e);
}
inline Var log(const Var& a) { return var_detail::unary(a, std::log(a.value), 1.0 / a.value); }
inline Var sqrt(const Var& a) {
  const double s = std::sqrt(a.value);
  return var_detail::unary(a, s, 0.5 / s);
}
inline Var tanh(const Var& a) {
  const double t = std::tanh(a.value);
  return var_detail::unary(a, t, 1.0 - t * t);
}

inline double value_of(double x) { return x; }
inline double value_of(const Var& x) { return x.value; }
inline double value_of(const Jet2& x) { return x.v; }

}  // namespace thermoforge
