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

#include "thermoforge/autodiff.hpp"

#include "thermoforge/errors.hpp"

namespace thermoforge {

Var Tape::variable(double value) {
  nodes_.push_back({});
  return {this, static_cast<int>(nodes_.size()) - 1, value};
}

Var Tape::push(double value, const Var& a, double da, const Var& b, double db) {
  Node n;
  if (a.id >= 0) {
    if (a.tape != this) throw InvalidArgument("mixing variables from different tapes");
    n.a = a.id;
    n.da = da;
  }
  if (b.id >= 0) {
    if (b.tape != this) throw InvalidArgument("mixing variables from different tapes");
    n.b = b.id;
    n.db = db;
  }
  nodes_.push_back(n);
  return {this, static_cast<int>(nodes_.size()) - 1, value};
}

std::vector<double> Tape::gradient(const Var& output) const {
  std::vector<double> adj(nodes_.size(), 0.0);
  if (output.id < 0) return adj;
  if (output.tape != this) throw InvalidArgument("output variable belongs to another tape");
  adj[static_cast<std::size_t>(output.id)] = 1.0;
  for (int i = output.id; i >= 0; --i) {
    const double g = adj[static_cast<std::size_t>(i)];
    if (g == 0.0) continue;
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.a >= 0) adj[static_cast<std::size_t>(n.a)] += g * n.da;
    if (n.b >= 0) adj[static_cast<std::size_t>(n.b)] += g * n.db;
  }
  return adj;
}

}  // namespace thermoforge
