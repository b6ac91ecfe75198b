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

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace thermoforge {

/// Counter-based SplitMix64 stream.
///
/// Output k of a stream is `mix64(key + (k + 1) * golden_gamma)`, so a stream
/// is fully described by its 64-bit key and position. Keys are derived from
/// `(seed, purpose tag, index)`; every stochastic consumer (split, bootstrap,
/// feature subsets, SGD shuffles, weight init) asks for its own stream, and
/// adding a new consumer never shifts the numbers another one sees.
///
/// All distributions below are implemented here rather than through
/// `<random>` distributions, whose algorithms differ between standard
/// libraries. Results are therefore bit-identical across platforms.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Independent stream for `(seed, tag, index)`.
  static CounterRng stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, n). `n` must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller (one value per call; no cached pair).
  double normal();

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);
  /// `k` distinct indices from 0..n-1 in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// 64-bit FNV-1a over bytes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace thermoforge
