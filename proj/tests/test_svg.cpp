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
#include "thermoforge/errors.hpp"
#include "thermoforge/svg.hpp"
#include "xml_checks.hpp"

namespace tf = thermoforge;
namespace svg = thermoforge::svg;

namespace {

tf::ResponseSurface bumpy_surface() {
  tf::ResponseSurface s;
  s.x_name = "Rotational Rate (RPM)";
  s.t_name = "Travel Speed (mm/min)";
  s.x_axis = Eigen::VectorXd::LinSpaced(6, 200, 1400);
  s.t_axis = Eigen::VectorXd::LinSpaced(6, 50, 300);
  s.values.resize(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s.values(i, j) = 300 + 20 * std::sin(i * 0.9) * std::cos(j * 0.7);
  s.roughness = tf::grid_roughness(s.values);
  return s;
}

// Every chart kind drawn from fixed data.
std::vector<std::string> all_charts() {
  auto rng = tf::CounterRng::stream(5, "svg_data");
  const Eigen::VectorXd a = tftest::random_vector(rng, 12, 300, 500);
  const Eigen::VectorXd p = a + tftest::random_vector(rng, 12, -20, 20);
  Eigen::MatrixXd cols = tftest::random_matrix(rng, 10, 3);
  const auto corr = tf::data::pearson_correlation(cols, {"a <b>", "c & d", "e"});
  Eigen::VectorXi truth(6);
  truth << 0, 0, 1, 1, 0, 1;
  Eigen::VectorXd scores(6);
  scores << 0.1, 0.4, 0.35, 0.8, 0.2, 0.9;
  const auto s = bumpy_surface();
  return {
      svg::actual_vs_predicted(a, p, "actual vs predicted"),
      svg::residual_plot(tf::residual_series(a, p), "residuals"),
      svg::qq_plot(tf::qq_points(a - p), "qq"),
      svg::roc_plot(tf::roc_points(truth, scores), tf::roc_auc(truth, scores), "roc"),
      svg::confusion_heatmap({3, 1, 0, 2}, "confusion"),
      svg::contour_plot(s, "contour"),
      svg::surface_isometric(s, "surface"),
      svg::correlation_heatmap(corr, "correlation"),
      svg::feature_importance_bars({"x", "y", "z"}, Eigen::Vector3d(0.5, 0.3, 0.2), "importance"),
  };
}

double attr(const tftest::ptree& node, const std::string& name) {
  return node.get<double>("<xmlattr>." + name);
}

}  // namespace

TEST(Svg, EveryKindIsWellFormed800x600) {
  const auto charts = all_charts();
  ASSERT_EQ(charts.size(), svg::all_plot_kinds().size());
  for (const auto& c : charts) EXPECT_EQ(tftest::svg_error(c), "") << c.substr(0, 400);
}

TEST(Svg, OutputIsDeterministic) { EXPECT_EQ(all_charts(), all_charts()); }

TEST(Svg, TextIsEscaped) {
  const auto c = svg::feature_importance_bars({"a<b&c"}, Eigen::VectorXd::Ones(1), "t\"q'");
  EXPECT_EQ(c.find("a<b"), std::string::npos);
  EXPECT_NE(c.find("a&lt;b&amp;c"), std::string::npos);
  EXPECT_EQ(svg::escape_xml("<&>\"'"), "&lt;&amp;&gt;&quot;&apos;");
}

TEST(Svg, PerfectPredictionsSitOnReferenceLine) {
  auto rng = tf::CounterRng::stream(6, "svg_perfect");
  const Eigen::VectorXd a = tftest::random_vector(rng, 20, 250, 480);
  tftest::ptree tree;
  ASSERT_EQ(tftest::xml_error(svg::actual_vs_predicted(a, a, "perfect"), &tree), "");
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool have_line = false;
  int markers = 0;
  std::vector<std::pair<double, double>> centres;
  for (const auto& [tag, node] : tree.get_child("svg")) {
    const std::string cls = node.get<std::string>("<xmlattr>.class", "");
    if (tag == "line" && cls == "reference") {
      x1 = attr(node, "x1"), y1 = attr(node, "y1"), x2 = attr(node, "x2"), y2 = attr(node, "y2");
      have_line = true;
    }
    if (tag == "circle" && cls == "marker") {
      centres.emplace_back(attr(node, "cx"), attr(node, "cy"));
      ++markers;
    }
  }
  ASSERT_TRUE(have_line);
  EXPECT_EQ(markers, 20);
  const double len = std::hypot(x2 - x1, y2 - y1);
  for (const auto& [cx, cy] : centres) {
    const double dist = std::abs((x2 - x1) * (y1 - cy) - (x1 - cx) * (y2 - y1)) / len;
    EXPECT_LT(dist, 0.5);
  }
}

TEST(Svg, EmptyDataRejected) {
  EXPECT_THROW(svg::actual_vs_predicted(Eigen::VectorXd(0), Eigen::VectorXd(0), "x"), tf::InvalidArgument);
  EXPECT_THROW(svg::residual_plot({}, "x"), tf::InvalidArgument);
  EXPECT_THROW(svg::feature_importance_bars({}, Eigen::VectorXd(0), "x"), tf::InvalidArgument);
}

TEST(Svg, NonFiniteRejected) {
  const Eigen::VectorXd a = Eigen::Vector2d(1, std::numeric_limits<double>::infinity());
  EXPECT_THROW(svg::actual_vs_predicted(a, a, "x"), tf::InvalidArgument);
}

TEST(Svg, PlotKindNamesRoundTrip) {
  for (auto k : svg::all_plot_kinds()) EXPECT_EQ(svg::parse_plot_kind(svg::plot_kind_name(k)), k);
  EXPECT_THROW(svg::parse_plot_kind("pie"), tf::InvalidArgument);
}

TEST(SvgProperty, TicksCoverRangeAndAreIncreasing) {
  auto rng = tf::CounterRng::stream(7, "ticks");
  for (int i = 0; i < 100; ++i) {
    const double lo = rng.uniform(-1000, 1000), hi = lo + rng.uniform(1e-3, 2000);
    const auto t = svg::nice_ticks(lo, hi);
    ASSERT_GE(t.size(), 2u);
    for (std::size_t k = 1; k < t.size(); ++k) EXPECT_LT(t[k - 1], t[k]);
    EXPECT_GE(t.front(), lo - 1e-9 * std::max(1.0, std::abs(lo)));
    EXPECT_LE(t.back(), hi + 1e-9 * std::max(1.0, std::abs(hi)));
  }
}
