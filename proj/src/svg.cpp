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

#include "thermoforge/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermoforge/errors.hpp"

namespace thermoforge::svg {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Rgb {
  double r, g, b;
};

std::string hex(const Rgb& c) {
  char buf[8];
  auto ch = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
  return buf;
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

// Sequential map (dark purple -> teal -> yellow), t in [0, 1].
std::string sequential(double t) {
  static constexpr std::array<Rgb, 5> stops{{{0.267, 0.005, 0.329},
                                             {0.231, 0.322, 0.545},
                                             {0.129, 0.569, 0.549},
                                             {0.369, 0.788, 0.384},
                                             {0.993, 0.906, 0.144}}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const double pos = t * (stops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), stops.size() - 2);
  return hex(lerp(stops[i], stops[i + 1], pos - static_cast<double>(i)));
}

// Diverging map for [-1, 1]: blue, white, red.
std::string diverging(double v) {
  v = std::clamp(v, -1.0, 1.0);
  const Rgb blue{0.230, 0.299, 0.754}, white{0.97, 0.97, 0.97}, red{0.706, 0.016, 0.150};
  return hex(v < 0 ? lerp(white, blue, -v) : lerp(white, red, v));
}

class Canvas {
 public:
  explicit Canvas(const std::string& title) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
    text(kWidth / 2.0, 28, title, "middle", 18, "title");
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
            const std::string& cls = "", const std::string& dash = "") {
    out_ << "<line";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << '"';
    if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << '"';
    out_ << "/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none") {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill) {
    out_ << "<circle class=\"marker\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
         << "\" fill=\"" << fill << "\" fill-opacity=\"0.8\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.5,
                const std::string& cls = "") {
    out_ << "<polyline";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) out_ << ' ';
      out_ << num(pts[i].first) << ',' << num(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void text(double x, double y, const std::string& s, const std::string& anchor = "middle", int size = 12,
            const std::string& cls = "", double rotate = 0.0) {
    out_ << "<text";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << '"';
    if (rotate != 0.0) out_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
    out_ << '>' << escape_xml(s) << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

// Linear data-to-pixel mapping for a rectangular plot area.
struct Frame {
  double left = 80, top = 60, right = 760, bottom = 530;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (right - left); }
  double py(double y) const { return bottom - (y - y0) / (y1 - y0) * (bottom - top); }
};

std::pair<double, double> padded(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("plot data must be finite");
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double d = std::max(1.0, std::abs(hi) * 0.1);
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void axes(Canvas& c, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  c.line(f.left, f.bottom, f.right, f.bottom, "#000000", 1.0, "axis");
  c.line(f.left, f.top, f.left, f.bottom, "#000000", 1.0, "axis");
  for (double t : nice_ticks(f.x0, f.x1)) {
    const double x = f.px(t);
    c.line(x, f.bottom, x, f.bottom + 5, "#000000");
    c.line(x, f.top, x, f.bottom, "#e0e0e0", 0.5);
    c.text(x, f.bottom + 20, label(t), "middle", 11, "tick");
  }
  for (double t : nice_ticks(f.y0, f.y1)) {
    const double y = f.py(t);
    c.line(f.left - 5, y, f.left, y, "#000000");
    c.line(f.left, y, f.right, y, "#e0e0e0", 0.5);
    c.text(f.left - 8, y + 4, label(t), "end", 11, "tick");
  }
  c.text((f.left + f.right) / 2, f.bottom + 48, xlabel, "middle", 13, "axis-label");
  c.text(f.left - 55, (f.top + f.bottom) / 2, ylabel, "middle", 13, "axis-label", -90);
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("cannot plot: ") + what);
}

void colorbar(Canvas& c, double lo, double hi, double x, double top, double bottom, bool div) {
  const int steps = 50;
  const double h = (bottom - top) / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 0.5) / steps;
    const double v = hi - t * (hi - lo);
    const std::string fill = div ? diverging(v) : sequential(hi > lo ? (v - lo) / (hi - lo) : 0.5);
    c.rect(x, top + i * h, 18, h + 0.01, fill);
  }
  c.rect(x, top, 18, bottom - top, "none", "#000000");
  for (double t : nice_ticks(lo, hi, 4)) {
    if (t < lo || t > hi) continue;
    const double y = hi > lo ? top + (hi - t) / (hi - lo) * (bottom - top) : (top + bottom) / 2;
    c.line(x + 18, y, x + 23, y, "#000000");
    c.text(x + 26, y + 4, label(t), "start", 10, "tick");
  }
}

}  // namespace

const char* plot_kind_name(PlotKind k) {
  switch (k) {
    case PlotKind::kActualVsPredicted: return "actual_vs_predicted";
    case PlotKind::kResidual: return "residual";
    case PlotKind::kQq: return "qq";
    case PlotKind::kRoc: return "roc";
    case PlotKind::kConfusionHeatmap: return "confusion_heatmap";
    case PlotKind::kContour: return "contour";
    case PlotKind::kSurfaceIsometric: return "surface_isometric";
    case PlotKind::kCorrelationHeatmap: return "correlation_heatmap";
    case PlotKind::kFeatureImportanceBars: return "feature_importance_bars";
  }
  return "?";
}

std::vector<PlotKind> all_plot_kinds() {
  return {PlotKind::kActualVsPredicted, PlotKind::kResidual,         PlotKind::kQq,
          PlotKind::kRoc,               PlotKind::kConfusionHeatmap, PlotKind::kContour,
          PlotKind::kSurfaceIsometric,  PlotKind::kCorrelationHeatmap, PlotKind::kFeatureImportanceBars};
}

PlotKind parse_plot_kind(const std::string& name) {
  for (PlotKind k : all_plot_kinds()) {
    if (name == plot_kind_name(k)) return k;
  }
  throw InvalidArgument("unknown plot kind '" + name + "'");
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
  std::vector<double> out;
  for (double k = std::ceil(lo / step - 1e-9); k * step <= hi + step * 1e-9; k += 1.0) out.push_back(k * step);
  return out;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string actual_vs_predicted(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted,
                                const std::string& title) {
  require(actual.size() > 0, "no points");
  require(actual.size() == predicted.size(), "actual and predicted lengths differ");
  const auto [lo, hi] = padded(std::min(actual.minCoeff(), predicted.minCoeff()),
                               std::max(actual.maxCoeff(), predicted.maxCoeff()));
  Frame f;
  f.x0 = f.y0 = lo;
  f.x1 = f.y1 = hi;
  Canvas c(title);
  axes(c, f, "Actual", "Predicted");
  c.line(f.px(lo), f.py(lo), f.px(hi), f.py(hi), "#d62728", 1.5, "reference", "6,4");
  for (Eigen::Index i = 0; i < actual.size(); ++i) c.circle(f.px(actual(i)), f.py(predicted(i)), 4, "#1f77b4");
  return c.finish();
}

std::string residual_plot(const std::vector<std::pair<double, double>>& series, const std::string& title) {
  require(!series.empty(), "no points");
  double xlo = series[0].first, xhi = xlo, ylo = 0.0, yhi = 0.0;
  for (const auto& [x, y] : series) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  Frame f;
  std::tie(f.x0, f.x1) = padded(xlo, xhi);
  std::tie(f.y0, f.y1) = padded(ylo, yhi);
  Canvas c(title);
  axes(c, f, "Predicted", "Residual");
  c.line(f.px(f.x0), f.py(0), f.px(f.x1), f.py(0), "#d62728", 1.5, "reference", "6,4");
  for (const auto& [x, y] : series) c.circle(f.px(x), f.py(y), 4, "#1f77b4");
  return c.finish();
}

std::string qq_plot(const std::vector<std::pair<double, double>>& points, const std::string& title) {
  require(!points.empty(), "no points");
  double lo = points[0].first, hi = lo;
  for (const auto& [x, y] : points) {
    lo = std::min({lo, x, y});
    hi = std::max({hi, x, y});
  }
  Frame f;
  std::tie(f.x0, f.x1) = padded(lo, hi);
  f.y0 = f.x0;
  f.y1 = f.x1;
  Canvas c(title);
  axes(c, f, "Theoretical quantiles", "Standardized residuals");
  c.line(f.px(f.x0), f.py(f.x0), f.px(f.x1), f.py(f.x1), "#d62728", 1.5, "reference", "6,4");
  for (const auto& [x, y] : points) c.circle(f.px(x), f.py(y), 4, "#1f77b4");
  return c.finish();
}

std::string roc_plot(const std::vector<std::pair<double, double>>& points, double auc, const std::string& title) {
  require(points.size() >= 2, "a ROC curve needs at least two points");
  Frame f;
  f.x0 = f.y0 = -0.02;
  f.x1 = f.y1 = 1.02;
  Canvas c(title);
  axes(c, f, "False positive rate", "True positive rate");
  c.line(f.px(0), f.py(0), f.px(1), f.py(1), "#7f7f7f", 1.0, "reference", "6,4");
  std::vector<std::pair<double, double>> px;
  for (const auto& [x, y] : points) px.emplace_back(f.px(x), f.py(y));
  c.polyline(px, "#1f77b4", 2.0, "curve");
  for (const auto& [x, y] : px) c.circle(x, y, 3, "#1f77b4");
  c.text(f.right - 10, f.bottom - 15, "AUC = " + label(auc), "end", 13, "annotation");
  return c.finish();
}

std::string confusion_heatmap(const ConfusionMatrix& cm, const std::string& title) {
  require(cm.total() > 0, "empty confusion matrix");
  const std::array<std::array<long, 2>, 2> cells{{{cm.tn, cm.fp}, {cm.fn, cm.tp}}};
  const double max_count = static_cast<double>(std::max({cm.tn, cm.fp, cm.fn, cm.tp}));
  Canvas c(title);
  const double left = 200, top = 80, size = 200;
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) {
      const double v = static_cast<double>(cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]);
      const double t = max_count > 0 ? v / max_count : 0.0;
      c.rect(left + k * size, top + r * size, size, size, sequential(t), "#ffffff");
      c.text(left + k * size + size / 2, top + r * size + size / 2 + 8, label(v), "middle", 24, "cell",
             0.0);
    }
  }
  for (int k = 0; k < 2; ++k) {
    c.text(left + k * size + size / 2, top + 2 * size + 22, std::to_string(k), "middle", 13, "tick");
    c.text(left - 12, top + k * size + size / 2 + 4, std::to_string(k), "end", 13, "tick");
  }
  c.text(left + size, top + 2 * size + 50, "Predicted label", "middle", 13, "axis-label");
  c.text(left - 60, top + size, "True label", "middle", 13, "axis-label", -90);
  colorbar(c, 0.0, max_count, left + 2 * size + 40, top, top + 2 * size, false);
  return c.finish();
}

namespace {

void check_surface(const ResponseSurface& s) {
  require(s.values.rows() >= 2 && s.values.cols() >= 2, "surface grid smaller than 2 x 2");
  require(s.x_axis.size() == s.values.rows() && s.t_axis.size() == s.values.cols(), "surface axes mismatch");
  require(s.values.allFinite(), "surface values must be finite");
}

}  // namespace

std::string contour_plot(const ResponseSurface& s, const std::string& title, int levels) {
  check_surface(s);
  const Eigen::Index m = s.values.rows(), n = s.values.cols();
  const double vlo = s.values.minCoeff(), vhi = s.values.maxCoeff();
  Frame f;
  f.right = 660;
  f.x0 = s.x_axis(0);
  f.x1 = s.x_axis(m - 1);
  f.y0 = s.t_axis(0);
  f.y1 = s.t_axis(n - 1);
  if (!(f.x1 > f.x0)) f.x1 = f.x0 + 1;
  if (!(f.y1 > f.y0)) f.y1 = f.y0 + 1;
  auto xi = [&](double i) { return f.left + i / static_cast<double>(m - 1) * (f.right - f.left); };
  auto yj = [&](double j) { return f.bottom - j / static_cast<double>(n - 1) * (f.bottom - f.top); };
  Canvas c(title);
  // Filled cells, each colored by the mean of its corners.
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      const double v = (s.values(i, j) + s.values(i + 1, j) + s.values(i, j + 1) + s.values(i + 1, j + 1)) / 4;
      const double t = vhi > vlo ? (v - vlo) / (vhi - vlo) : 0.5;
      c.rect(xi(static_cast<double>(i)), yj(static_cast<double>(j + 1)), xi(1) - xi(0) + 0.01,
             yj(0) - yj(1) + 0.01, sequential(t));
    }
  }
  // Iso-lines by marching squares; saddle cells pair crossings in edge order.
  if (vhi > vlo) {
    for (int L = 1; L <= levels; ++L) {
      const double level = vlo + (vhi - vlo) * L / (levels + 1);
      for (Eigen::Index i = 0; i + 1 < m; ++i) {
        for (Eigen::Index j = 0; j + 1 < n; ++j) {
          const double a = s.values(i, j), b = s.values(i + 1, j), cc = s.values(i + 1, j + 1),
                       d = s.values(i, j + 1);
          std::vector<std::pair<double, double>> pts;
          auto edge = [&](double v0, double v1, double i0, double j0, double i1, double j1) {
            if ((v0 < level) != (v1 < level)) {
              const double t = (level - v0) / (v1 - v0);
              pts.emplace_back(xi(i0 + t * (i1 - i0)), yj(j0 + t * (j1 - j0)));
            }
          };
          const double I = static_cast<double>(i), J = static_cast<double>(j);
          edge(a, b, I, J, I + 1, J);
          edge(b, cc, I + 1, J, I + 1, J + 1);
          edge(cc, d, I + 1, J + 1, I, J + 1);
          edge(d, a, I, J + 1, I, J);
          for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
            c.line(pts[k].first, pts[k].second, pts[k + 1].first, pts[k + 1].second, "#ffffff", 1.0, "contour");
          }
        }
      }
    }
  }
  axes(c, f, s.x_name, s.t_name);
  colorbar(c, vlo, vhi, f.right + 30, f.top, f.bottom, false);
  return c.finish();
}

std::string surface_isometric(const ResponseSurface& s, const std::string& title) {
  check_surface(s);
  const Eigen::Index m = s.values.rows(), n = s.values.cols();
  const double vlo = s.values.minCoeff(), vhi = s.values.maxCoeff();
  const double span = vhi > vlo ? vhi - vlo : 1.0;
  const double cos30 = std::sqrt(3.0) / 2.0, sin30 = 0.5;
  const double base = 230.0, height = 220.0;
  const double ox = 400.0, oy = 330.0;
  // u, w in [0, 1] along x and t; h in [0, 1] along the value axis.
  auto project = [&](double u, double w, double h) {
    return std::pair<double, double>{ox + (u - w) * cos30 * base, oy + (u + w) * sin30 * base - (h - 0.5) * height};
  };
  auto hn = [&](double v) { return vhi > vlo ? (v - vlo) / span : 0.5; };
  Canvas c(title);

  // Base edges with ticks, and a vertical value axis at the far corner.
  const auto p00 = project(0, 0, 0), p10 = project(1, 0, 0), p01 = project(0, 1, 0), p0top = project(0, 0, 1);
  c.line(p00.first, p00.second, p10.first, p10.second, "#000000", 1.0, "axis");
  c.line(p00.first, p00.second, p01.first, p01.second, "#000000", 1.0, "axis");
  c.line(p00.first, p00.second, p0top.first, p0top.second, "#000000", 1.0, "axis");
  const double x0 = s.x_axis(0), x1 = s.x_axis(m - 1), t0 = s.t_axis(0), t1 = s.t_axis(n - 1);
  for (double t : nice_ticks(std::min(x0, x1), std::max(x0, x1), 4)) {
    if (x1 == x0) break;
    const auto p = project((t - x0) / (x1 - x0), 0, 0);
    c.line(p.first, p.second, p.first + 4, p.second + 4, "#000000");
    c.text(p.first + 8, p.second + 16, label(t), "start", 10, "tick");
  }
  for (double t : nice_ticks(std::min(t0, t1), std::max(t0, t1), 4)) {
    if (t1 == t0) break;
    const auto p = project(0, (t - t0) / (t1 - t0), 0);
    c.line(p.first, p.second, p.first - 4, p.second + 4, "#000000");
    c.text(p.first - 8, p.second + 16, label(t), "end", 10, "tick");
  }
  for (double t : nice_ticks(vlo, vlo + span, 4)) {
    if (t < vlo || t > vlo + span) continue;
    const auto p = project(0, 0, (t - vlo) / span);
    c.line(p.first - 5, p.second, p.first, p.second, "#000000");
    c.text(p.first - 8, p.second + 4, label(t), "end", 10, "tick");
  }
  const auto lx = project(0.5, 0, 0), lt = project(0, 0.5, 0);
  c.text(lx.first + 40, lx.second + 40, s.x_name, "start", 12, "axis-label");
  c.text(lt.first - 40, lt.second + 40, s.t_name, "end", 12, "axis-label");
  c.text(p0top.first, p0top.second - 12, "Predicted (C)", "middle", 12, "axis-label");

  // Wireframe: lines of constant t, then constant x, colored by mean height.
  for (Eigen::Index j = 0; j < n; ++j) {
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index i = 0; i < m; ++i) {
      pts.push_back(project(static_cast<double>(i) / (m - 1), static_cast<double>(j) / (n - 1), hn(s.values(i, j))));
    }
    c.polyline(pts, sequential(hn(s.values.col(j).mean())), 1.2, "wire");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index j = 0; j < n; ++j) {
      pts.push_back(project(static_cast<double>(i) / (m - 1), static_cast<double>(j) / (n - 1), hn(s.values(i, j))));
    }
    c.polyline(pts, sequential(hn(s.values.row(i).mean())), 1.2, "wire");
  }
  return c.finish();
}

std::string correlation_heatmap(const data::CorrelationMatrix& corr, const std::string& title) {
  const Eigen::Index k = corr.values.rows();
  require(k > 0, "empty correlation matrix");
  require(static_cast<Eigen::Index>(corr.labels.size()) == k, "labels do not match the matrix");
  Canvas c(title);
  const double left = 230, top = 60, size = std::min(460.0 / static_cast<double>(k), 80.0);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index q = 0; q < k; ++q) {
      const double v = corr.values(r, q);
      const double x = left + static_cast<double>(q) * size, y = top + static_cast<double>(r) * size;
      c.rect(x, y, size, size, diverging(v), "#ffffff");
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.2f", v);
      c.text(x + size / 2, y + size / 2 + 4, std::string(buf) == "-0.00" ? "0.00" : buf, "middle",
             size >= 50 ? 11 : 9, "cell");
    }
  }
  for (Eigen::Index r = 0; r < k; ++r) {
    const std::string& name = corr.labels[static_cast<std::size_t>(r)];
    const std::string shortname = name.size() > 28 ? name.substr(0, 27) + "." : name;
    c.text(left - 8, top + (static_cast<double>(r) + 0.5) * size + 4, shortname, "end", 10, "tick");
    const double x = left + (static_cast<double>(r) + 0.5) * size, y = top + static_cast<double>(k) * size + 8;
    c.text(x, y, shortname, "end", 10, "tick", -45);
  }
  colorbar(c, -1.0, 1.0, left + static_cast<double>(k) * size + 30, top, top + static_cast<double>(k) * size, true);
  return c.finish();
}

std::string feature_importance_bars(const std::vector<std::string>& names, const Eigen::VectorXd& values,
                                    const std::string& title) {
  require(!names.empty(), "no features");
  require(static_cast<Eigen::Index>(names.size()) == values.size(), "names and values differ in length");
  require(values.allFinite(), "importances must be finite");
  Frame f;
  f.left = 270;
  f.x0 = std::min(0.0, values.minCoeff());
  f.x1 = std::max(values.maxCoeff(), f.x0 + 1e-9);
  f.x1 += 0.05 * (f.x1 - f.x0);
  f.y0 = 0;
  f.y1 = static_cast<double>(names.size());
  Canvas c(title);
  const double band = (f.bottom - f.top) / static_cast<double>(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double v = values(static_cast<Eigen::Index>(i));
    const double y = f.top + static_cast<double>(i) * band;
    const double xa = f.px(std::min(0.0, v)), xb = f.px(std::max(0.0, v));
    c.rect(xa, y + band * 0.15, xb - xa, band * 0.7, "#1f77b4");
    c.text(f.left - 8, y + band / 2 + 4, names[i], "end", 11, "tick");
    c.text(xb + 4, y + band / 2 + 4, label(v), "start", 10, "value");
  }
  c.line(f.left, f.bottom, f.right, f.bottom, "#000000", 1.0, "axis");
  c.line(f.px(0), f.top, f.px(0), f.bottom, "#000000", 1.0, "axis");
  for (double t : nice_ticks(f.x0, f.x1)) {
    const double x = f.px(t);
    c.line(x, f.bottom, x, f.bottom + 5, "#000000");
    c.text(x, f.bottom + 20, label(t), "middle", 11, "tick");
  }
  c.text((f.left + f.right) / 2, f.bottom + 48, "Importance", "middle", 13, "axis-label");
  return c.finish();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace thermoforge::svg
