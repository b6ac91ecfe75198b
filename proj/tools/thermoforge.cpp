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

// thermoforge <regress|pinn|classify|plots|all> --config <path> [--out <dir>]
//             [--seed <n>] [--parallel]
//
// Exit codes: 0 ok, 1 config error, 2 data error, 3 training divergence.

#include <CLI11.hpp>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "thermoforge/config.hpp"
#include "thermoforge/errors.hpp"
#include "thermoforge/suites.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("THERMOFORGE_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string s(raw);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw thermoforge::ConfigError("/seed", "THERMOFORGE_SEED is not a non-negative integer: '" + s + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  namespace tf = thermoforge;
  CLI::App app{"Process-parameter to temperature/quality modelling for additive friction stir deposition"};
  std::string command, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  bool parallel = false;
  app.add_option("command", command, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"regress", "pinn", "classify", "plots", "all"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--seed", seed, "Global seed (overrides THERMOFORGE_SEED and the config)");
  app.add_flag("--parallel", parallel, "Fit independent models concurrently");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!seed) seed = env_seed();
    const tf::cli::RunConfig cfg = tf::cli::load_config(config_path, seed);
    const tf::cli::Suite suite = tf::cli::parse_suite(command);
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    const auto manifest = tf::cli::run(suite, cfg, dir, tf::cli::RunOptions{parallel});
    std::cout << "thermoforge " << command << ": wrote " << manifest["files"].size() + 1 << " files to " << dir
              << " (fingerprint " << cfg.fingerprint() << ")\n";
    return 0;
  } catch (const tf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tf::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const tf::InvalidArgument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const tf::DivergenceError& e) {
    std::cerr << "training diverged (index " << e.index() << "): " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
