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

// Ingestion, splitting, scaling and summary statistics for process-parameter
// tables. Standard deviations use the population convention (divide by n)
// throughout.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thermoforge::data {

inline constexpr std::string_view kRotationalRate = "Rotational Rate (RPM)";
inline constexpr std::string_view kTravelSpeed = "Travel Speed (mm/min)";
inline constexpr std::string_view kToolGeometry = "Tool Geometry";
inline constexpr std::string_view kFlowRate = "Deposition Material Flow Rate (mm^3/min)";
inline constexpr std::string_view kToolDiameter = "Tool Diameter (mm)";
inline constexpr std::string_view kPowderSize = "Powder Size (micro meter)";
inline constexpr std::string_view kPeakTemperature = "Peak temperature (degree Celsius)";
inline constexpr std::string_view kDepositionQuality = "Deposition Quality";

struct CsvSchema {
  std::vector<std::string> feature_columns;
  std::vector<std::string> categorical_columns;
  std::string temperature_column;
  std::string quality_column;

  /// The six process inputs plus both targets, in canonical order.
  static CsvSchema afsd();
  std::vector<std::string> all_columns() const;
};

/// Line-oriented record of what ingestion and scaling did.
struct IngestionLog {
  std::vector<std::string> lines;
  void add(std::string line) { lines.push_back(std::move(line)); }
  std::string str() const;
};

/// Immutable table of process parameters and both targets.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> units;
  std::vector<bool> categorical_mask;
  /// Labels of the categorical codes, per feature (empty for numeric features).
  std::vector<std::vector<std::string>> category_labels;
  Eigen::MatrixXd features;        // n_samples x n_features
  Eigen::VectorXd temperature;     // peak temperature, degrees Celsius
  Eigen::VectorXi quality;         // 0 = poor, 1 = good

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }

  /// Index of a feature column. Throws InvalidArgument for unknown names.
  Eigen::Index column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  /// Copy of the named feature columns, in the order given.
  Eigen::MatrixXd select(const std::vector<std::string>& names) const;
  Dataset subset(std::span<const std::size_t> row_indices) const;
  /// Keeps only the named features (targets untouched).
  Dataset with_features(const std::vector<std::string>& names) const;
};

/// Unit inside the trailing parentheses of a header, e.g. "RPM". Empty if none.
std::string unit_of(std::string_view header);

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema, IngestionLog& log);
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = CsvSchema::afsd());
Dataset parse_csv(std::string_view text, const CsvSchema& schema, IngestionLog& log);

void write_csv(const std::filesystem::path& path, const Dataset& ds);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
};

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Train size is round(train_fraction * n). Rows are permuted with the
/// `(seed, "split")` stream before the cut.
SplitIndices split_indices(std::size_t n, const SplitSpec& spec);
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, const SplitSpec& spec);

/// Per-column z-score parameters.
struct ScalerParams {
  std::vector<std::string> columns;
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population
  std::vector<bool> zero_variance;

  /// Transforms a matrix whose columns are exactly `columns`, in order.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& z) const;
};

/// Fits on raw matrix columns; `names` may be empty (auto-named c0, c1, ...).
ScalerParams fit_scaler(const Eigen::MatrixXd& x, std::vector<std::string> names = {});
ScalerParams fit_scaler(const Dataset& ds, const std::vector<std::string>& columns);
ScalerParams fit_scaler(const Dataset& ds, const std::vector<std::string>& columns,
                        IngestionLog& log);
/// Returns a copy with `params.columns` z-scored; constant columns become 0.
Dataset apply_scaler(const Dataset& ds, const ScalerParams& params);

struct CorrelationMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
  /// Columns with zero variance; their off-diagonal correlations are 0.
  std::vector<bool> constant;
};

CorrelationMatrix pearson_correlation(const Eigen::MatrixXd& columns, std::vector<std::string> labels);
/// Features followed by both targets, for the heatmaps.
CorrelationMatrix pearson_correlation_matrix(const Dataset& ds);

struct ColumnSummary {
  std::string name;
  double min = 0, max = 0, mean = 0, stddev = 0;
};
std::vector<ColumnSummary> summarize(const Dataset& ds);

}  // namespace thermoforge::data
