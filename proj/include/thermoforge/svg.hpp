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

// Standalone SVG 1.1 charts on a fixed 800 x 600 canvas. Output depends only
// on the data: coordinates are printed with two decimals and nothing
// time- or locale-dependent is written.
//
// Data markers are <circle class="marker">, reference lines are
// <line class="reference">; tests rely on these class names.

#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "thermoforge/dataset.hpp"
#include "thermoforge/metrics.hpp"
#include "thermoforge/physics.hpp"

namespace thermoforge::svg {

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 600;

enum class PlotKind {
  kActualVsPredicted,
  kResidual,
  kQq,
  kRoc,
  kConfusionHeatmap,
  kContour,
  kSurfaceIsometric,
  kCorrelationHeatmap,
  kFeatureImportanceBars,
};

const char* plot_kind_name(PlotKind kind);
PlotKind parse_plot_kind(const std::string& name);
std::vector<PlotKind> all_plot_kinds();

/// Scatter of predictions against truth with the y = x reference line.
std::string actual_vs_predicted(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted,
                                const std::string& title);
/// Residual against prediction with the zero line.
std::string residual_plot(const std::vector<std::pair<double, double>>& series, const std::string& title);
std::string qq_plot(const std::vector<std::pair<double, double>>& points, const std::string& title);
std::string roc_plot(const std::vector<std::pair<double, double>>& points, double auc, const std::string& title);
std::string confusion_heatmap(const ConfusionMatrix& cm, const std::string& title);
std::string contour_plot(const ResponseSurface& surface, const std::string& title, int levels = 8);
std::string surface_isometric(const ResponseSurface& surface, const std::string& title);
std::string correlation_heatmap(const data::CorrelationMatrix& corr, const std::string& title);
std::string feature_importance_bars(const std::vector<std::string>& names, const Eigen::VectorXd& values,
                                    const std::string& title);

/// "Nice" tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 5);
std::string escape_xml(const std::string& text);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace thermoforge::svg
