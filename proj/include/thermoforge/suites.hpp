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

// Experiment suites. Every suite fits its models in canonical order, collects
// each model's report row and files in memory, and only then writes them, so
// running the fits concurrently cannot change any output byte.

#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "thermoforge/config.hpp"

namespace thermoforge::cli {

inline constexpr const char* kReportSchemaVersion = "1.0";

/// Canonical row order of each suite.
std::vector<std::string> regression_algorithms();
std::vector<std::string> pinn_algorithms();
std::vector<std::string> classification_algorithms();

/// Collects the files of one run.
class OutputSink {
 public:
  explicit OutputSink(std::filesystem::path dir);
  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

struct RunOptions {
  bool parallel = false;
};

nlohmann::json run_regression_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt = {});
nlohmann::json run_pinn_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt = {});
nlohmann::json run_classification_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt = {});
nlohmann::json run_plots_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt = {});

/// Runs `suite` (all four for kAll) into `out_dir`, then writes and verifies
/// manifest.json. Returns the manifest.
nlohmann::json run(Suite suite, const RunConfig& cfg, const std::filesystem::path& out_dir,
                   const RunOptions& opt = {});

}  // namespace thermoforge::cli
