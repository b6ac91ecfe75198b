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

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "thermoforge/config.hpp"
#include "thermoforge/errors.hpp"

namespace tf = thermoforge;
namespace cli = thermoforge::cli;
using nlohmann::json;

namespace {

std::string error_path(const json& user) {
  try {
    cli::parse_config(user, "/base");
    return "<no error>";
  } catch (const tf::ConfigError& e) {
    return e.path();
  }
}

// JSON pointers of every scalar leaf.
void leaves(const json& j, const std::string& at, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) leaves(v, at + "/" + k, out);
  } else if (!j.is_array()) {
    out.push_back(at);
  }
}

}  // namespace

TEST(Config, MinimalDocumentFillsDefaults) {
  const auto cfg = cli::parse_config(json{{"data", "d.csv"}}, "/base");
  EXPECT_EQ(cfg.data, "/base/d.csv");
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.suite, cli::Suite::kAll);
  EXPECT_DOUBLE_EQ(cfg.split.train_fraction, 0.8);
  EXPECT_EQ(cfg.regress.gradient_boosting.n_stages, 100);
  EXPECT_EQ(cfg.pinn.train.epochs, 2000);
  EXPECT_EQ(cfg.effective["data"], "d.csv");
  EXPECT_EQ(cfg.effective["regress"]["models"]["svr"]["kernel"], "rbf");
}

TEST(Config, UnknownKeyNamesPath) {
  const json user = {{"regress", {{"models", {{"gradient_boosting", {{"leerning_rate", 0.1}}}}}}}};
  EXPECT_EQ(error_path(user), "/regress/models/gradient_boosting/leerning_rate");
}

TEST(Config, TypeMismatchNamesPath) {
  EXPECT_EQ(error_path(json{{"pinn", {{"epochs", "many"}}}}), "/pinn/epochs");
  EXPECT_EQ(error_path(json{{"split", 0.5}}), "/split");
  EXPECT_EQ(error_path(json{{"pinn", {{"hidden_layers", {8, "x"}}}}}), "/pinn/hidden_layers/1");
}

TEST(Config, InvalidValuesNamePath) {
  EXPECT_EQ(error_path(json{{"suite", "everything"}}), "/suite");
  EXPECT_EQ(error_path(json{{"split", {{"train_fraction", 1.5}}}}), "/split/train_fraction");
  EXPECT_EQ(error_path(json{{"regress", {{"models", {{"gradient_boosting", {{"learning_rate", 0.0}}}}}}}}),
            "/regress/models/gradient_boosting/learning_rate");
  EXPECT_EQ(error_path(json{{"pinn", {{"physics", {{"c", 0.0}}}}}}), "/pinn/physics/c");
}

TEST(Config, IntegersAcceptedForReals) {
  const auto cfg = cli::parse_config(json{{"regress", {{"models", {{"svr", {{"C", 10}}}}}}}}, "/");
  EXPECT_EQ(cfg.regress.svr.C, 10.0);
}

TEST(Config, SeedOverride) {
  const auto cfg = cli::parse_config(json{{"seed", 7}}, "/", 99);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.effective["seed"], 99);
}

TEST(Config, MalformedFile) {
  const auto dir = tftest::scratch_dir("config_malformed");
  tftest::write_text(dir / "c.json", "{\"seed\": ");
  try {
    cli::load_config(dir / "c.json");
    FAIL();
  } catch (const tf::ConfigError& e) {
    EXPECT_EQ(e.path(), "");
  }
  EXPECT_THROW(cli::load_config(dir / "missing.json"), tf::ConfigError);
}

TEST(Config, FingerprintIgnoresOutputDir) {
  const auto a = cli::parse_config(json{{"output_dir", "a"}}, "/");
  const auto b = cli::parse_config(json{{"output_dir", "b"}}, "/");
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  EXPECT_EQ(a.fingerprint().size(), 16u);
}

TEST(ConfigProperty, EveryLeafMutationChangesFingerprint) {
  const json defaults = cli::default_config();
  const std::string base = cli::fingerprint_of(defaults);
  std::vector<std::string> paths;
  leaves(defaults, "", paths);
  ASSERT_GT(paths.size(), 50u);
  for (const auto& p : paths) {
    if (p == "/output_dir") continue;
    json mutated = defaults;
    json& leaf = mutated[json::json_pointer(p)];
    if (leaf.is_boolean()) {
      leaf = !leaf.get<bool>();
    } else if (leaf.is_number_integer()) {
      leaf = leaf.get<long>() + 1;
    } else if (leaf.is_number()) {
      leaf = leaf.get<double>() + 0.5;
    } else {
      leaf = leaf.get<std::string>() + "x";
    }
    EXPECT_NE(cli::fingerprint_of(mutated), base) << p;
  }
}

TEST(ConfigProperty, MergeIsIdempotentOnDefaults) {
  const json d = cli::default_config();
  EXPECT_EQ(cli::merge_strict(d, d), d);
  EXPECT_EQ(cli::merge_strict(d, json::object()), d);
}
