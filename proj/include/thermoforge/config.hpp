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

// Run configuration. A user file is merged key by key into the default
// document: unknown keys and type mismatches are ConfigErrors carrying the
// JSON pointer of the offending key. The merged ("effective") document is what
// gets fingerprinted and echoed into every report.

#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "thermoforge/dataset.hpp"
#include "thermoforge/ensembles.hpp"
#include "thermoforge/linear_models.hpp"
#include "thermoforge/physics.hpp"
#include "thermoforge/svm.hpp"

namespace thermoforge::cli {

enum class Suite { kRegress, kPinn, kClassify, kPlots, kAll };

const char* suite_name(Suite s);
Suite parse_suite(const std::string& name);

struct CartConfig {
  int max_depth = -1;
  int min_samples_leaf = 1;
};

struct RegressConfig {
  std::string data;  // resolved path; empty falls back to RunConfig::data
  std::vector<std::string> features;
  SvmParams svr;
  CartConfig decision_tree;
  ForestConfig random_forest;
  BoostConfig second_order_boosting;
  OrderedBoostConfig ordered_boosting;
  AdaBoostConfig adaboost;
  ForestConfig extra_trees;
  BoostConfig gradient_boosting;
};

struct PinnSuiteConfig {
  std::string data;
  PinnTrainConfig train;
  PhysicsSpec physics;  // equation is set per row
  int surface_grid = 25;
};

struct ClassifyConfig {
  std::string data;
  std::vector<std::string> features;
  LogisticParams logistic_regression;
  int knn_k = 5;
  SvmParams svc;
  SgdParams sgd_classifier;
  CartConfig decision_tree;
  ForestConfig random_forest;
  AdaBoostConfig adaboost;
  BoostConfig gradient_boosting;
  BoostConfig stochastic_gradient_boosting;
};

struct RunConfig {
  std::string data;
  Suite suite = Suite::kAll;
  std::uint64_t seed = 42;
  std::string output_dir;
  data::SplitSpec split;
  RegressConfig regress;
  PinnSuiteConfig pinn;
  ClassifyConfig classify;
  /// Merged document with every default filled in (paths as written).
  nlohmann::json effective;

  /// 16 hex digits of FNV-1a over the canonical effective document, output
  /// directory excluded.
  std::string fingerprint() const;
};

/// The complete default document.
nlohmann::json default_config();

/// Strict merge of `user` into `defaults`; throws ConfigError naming the path.
nlohmann::json merge_strict(const nlohmann::json& defaults, const nlohmann::json& user, const std::string& path = "");

/// Builds a RunConfig from a user document. Relative data paths resolve
/// against `base_dir`. `seed_override` replaces the document's seed.
RunConfig parse_config(const nlohmann::json& user, const std::filesystem::path& base_dir,
                       std::optional<std::uint64_t> seed_override = std::nullopt);
/// Reads and parses a config file; malformed JSON is a ConfigError at path "".
RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = std::nullopt);

std::string fingerprint_of(const nlohmann::json& effective);

}  // namespace thermoforge::cli
