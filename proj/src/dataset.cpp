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

#include "thermoforge/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "thermoforge/errors.hpp"
#include "thermoforge/random.hpp"

namespace thermoforge::data {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV record. Double quotes group fields; "" inside quotes is a literal quote.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

double population_std(const Eigen::Ref<const Eigen::VectorXd>& v, double mean) {
  return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(v.size()));
}

}  // namespace

CsvSchema CsvSchema::afsd() {
  CsvSchema s;
  s.feature_columns = {std::string(kRotationalRate), std::string(kTravelSpeed),
                       std::string(kToolGeometry),   std::string(kFlowRate),
                       std::string(kToolDiameter),   std::string(kPowderSize)};
  s.categorical_columns = {std::string(kToolGeometry)};
  s.temperature_column = std::string(kPeakTemperature);
  s.quality_column = std::string(kDepositionQuality);
  return s;
}

std::vector<std::string> CsvSchema::all_columns() const {
  auto cols = feature_columns;
  cols.push_back(temperature_column);
  cols.push_back(quality_column);
  return cols;
}

std::string IngestionLog::str() const {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

Eigen::Index Dataset::column(std::string_view name) const {
  const auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) throw InvalidArgument("unknown column '" + std::string(name) + "'");
  return static_cast<Eigen::Index>(it - feature_names.begin());
}

bool Dataset::has_column(std::string_view name) const {
  return std::find(feature_names.begin(), feature_names.end(), name) != feature_names.end();
}

Eigen::MatrixXd Dataset::select(const std::vector<std::string>& names) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = features.col(column(names[j]));
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
  Dataset out = *this;
  const auto n = static_cast<Eigen::Index>(row_indices.size());
  out.features.resize(n, cols());
  out.temperature.resize(n);
  out.quality.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(row_indices[static_cast<std::size_t>(i)]);
    out.features.row(i) = features.row(r);
    out.temperature(i) = temperature(r);
    out.quality(i) = quality(r);
  }
  return out;
}

Dataset Dataset::with_features(const std::vector<std::string>& names) const {
  Dataset out;
  out.features = select(names);
  out.temperature = temperature;
  out.quality = quality;
  for (const auto& name : names) {
    const auto j = static_cast<std::size_t>(column(name));
    out.feature_names.push_back(feature_names[j]);
    out.units.push_back(units[j]);
    out.categorical_mask.push_back(categorical_mask[j]);
    out.category_labels.push_back(category_labels[j]);
  }
  return out;
}

std::string unit_of(std::string_view header) {
  header = trim(header);
  if (header.empty() || header.back() != ')') return {};
  const auto open = header.rfind('(');
  if (open == std::string_view::npos) return {};
  return std::string(header.substr(open + 1, header.size() - open - 2));
}

Dataset parse_csv(std::string_view text, const CsvSchema& schema, IngestionLog& log) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!trim(line).empty()) lines.emplace_back(line);
      start = end + 1;
    }
  }
  if (lines.empty()) throw EmptyInputError("CSV input is empty");
  // Strip a UTF-8 byte-order mark.
  if (lines[0].rfind("\xEF\xBB\xBF", 0) == 0) lines[0].erase(0, 3);

  const auto header = split_record(lines[0]);
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t j = 0; j < header.size(); ++j) position.emplace(header[j], j);

  auto require = [&](const std::string& name) {
    const auto it = position.find(name);
    if (it == position.end()) throw SchemaError(name, "missing required column '" + name + "'");
    return it->second;
  };

  const std::size_t n = lines.size() - 1;
  if (n == 0) throw EmptyInputError("CSV has a header but no data rows");
  if (n < 2) throw DataError("a dataset needs at least 2 rows, got 1");

  Dataset ds;
  const auto p = static_cast<Eigen::Index>(schema.feature_columns.size());
  ds.features.resize(static_cast<Eigen::Index>(n), p);
  ds.temperature.resize(static_cast<Eigen::Index>(n));
  ds.quality.resize(static_cast<Eigen::Index>(n));

  std::vector<std::size_t> feature_pos;
  for (const auto& name : schema.feature_columns) {
    feature_pos.push_back(require(name));
    ds.feature_names.push_back(name);
    ds.units.push_back(unit_of(name));
    const bool categorical = std::find(schema.categorical_columns.begin(), schema.categorical_columns.end(),
                                       name) != schema.categorical_columns.end();
    ds.categorical_mask.push_back(categorical);
    ds.category_labels.emplace_back();
  }
  const std::size_t temp_pos = require(schema.temperature_column);
  const std::size_t qual_pos = require(schema.quality_column);

  std::vector<std::vector<std::string>> records;
  records.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto rec = split_record(lines[r + 1]);
    if (rec.size() != header.size()) {
      throw ParseError(r + 1, "", "row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                                      " fields, header has " + std::to_string(header.size()));
    }
    records.push_back(std::move(rec));
  }

  auto numeric_cell = [&](std::size_t r, std::size_t pos, const std::string& name) {
    double v = 0;
    if (!parse_double(records[r][pos], v)) {
      throw ParseError(r + 1, name,
                       "row " + std::to_string(r + 1) + ", column '" + name + "': cannot parse '" +
                           records[r][pos] + "' as a finite number");
    }
    return v;
  };

  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& name = ds.feature_names[static_cast<std::size_t>(j)];
    const auto pos = feature_pos[static_cast<std::size_t>(j)];
    if (!ds.categorical_mask[static_cast<std::size_t>(j)]) {
      for (std::size_t r = 0; r < n; ++r) ds.features(static_cast<Eigen::Index>(r), j) = numeric_cell(r, pos, name);
      continue;
    }
    bool all_numeric = true;
    for (std::size_t r = 0; r < n && all_numeric; ++r) {
      double v;
      all_numeric = parse_double(records[r][pos], v);
    }
    if (all_numeric) {
      for (std::size_t r = 0; r < n; ++r) ds.features(static_cast<Eigen::Index>(r), j) = numeric_cell(r, pos, name);
      log.add("categorical column '" + name + "' is numeric; using values as pre-encoded codes");
      continue;
    }
    auto& labels = ds.category_labels[static_cast<std::size_t>(j)];
    for (std::size_t r = 0; r < n; ++r) {
      const auto& cell = records[r][pos];
      auto it = std::find(labels.begin(), labels.end(), cell);
      if (it == labels.end()) {
        labels.push_back(cell);
        it = labels.end() - 1;
      }
      ds.features(static_cast<Eigen::Index>(r), j) = static_cast<double>(it - labels.begin());
    }
    std::string mapping;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      mapping += (c ? ", " : "") + labels[c] + "=" + std::to_string(c);
    }
    log.add("categorical column '" + name + "' encoded by first appearance: " + mapping);
  }

  for (std::size_t r = 0; r < n; ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    ds.temperature(i) = numeric_cell(r, temp_pos, schema.temperature_column);
    const double q = numeric_cell(r, qual_pos, schema.quality_column);
    if (q != 0.0 && q != 1.0) {
      throw ParseError(r + 1, schema.quality_column,
                       "row " + std::to_string(r + 1) + ", column '" + schema.quality_column +
                           "': label must be 0 or 1, got '" + records[r][qual_pos] + "'");
    }
    ds.quality(i) = static_cast<int>(q);
  }

  log.add("rows: " + std::to_string(n));
  for (const auto& s : summarize(ds)) {
    log.add("column '" + s.name + "': min=" + fmt_g(s.min) + " max=" + fmt_g(s.max));
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema, IngestionLog& log) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  log.add("source: " + path.string());
  return parse_csv(buf.str(), schema, log);
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  IngestionLog log;
  return load_csv(path, schema, log);
}

void write_csv(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (const auto& name : ds.feature_names) out << name << ',';
  out << kPeakTemperature << ',' << kDepositionQuality << '\n';
  for (Eigen::Index i = 0; i < ds.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.cols(); ++j) {
      const auto& labels = ds.category_labels[static_cast<std::size_t>(j)];
      if (!labels.empty()) {
        out << labels[static_cast<std::size_t>(ds.features(i, j))] << ',';
      } else {
        out << fmt_g(ds.features(i, j)) << ',';
      }
    }
    out << fmt_g(ds.temperature(i)) << ',' << ds.quality(i) << '\n';
  }
}

SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw InvalidArgument("train_fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(std::lround(spec.train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    throw InvalidArgument("train_fraction " + fmt_g(spec.train_fraction) + " on " + std::to_string(n) +
                          " rows gives an empty partition");
  }
  auto rng = CounterRng::stream(spec.seed, "split");
  const auto perm = rng.permutation(n);
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, const SplitSpec& spec) {
  if (ds.rows() < 2) throw InvalidArgument("train_test_split needs at least 2 rows");
  const auto idx = split_indices(static_cast<std::size_t>(ds.rows()), spec);
  return {ds.subset(idx.train), ds.subset(idx.test)};
}

Eigen::MatrixXd ScalerParams::transform(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) throw InvalidArgument("scaler column count mismatch");
  Eigen::MatrixXd z(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (zero_variance[static_cast<std::size_t>(j)]) {
      z.col(j).setZero();
    } else {
      z.col(j) = (x.col(j).array() - mean(j)) / stddev(j);
    }
  }
  return z;
}

Eigen::MatrixXd ScalerParams::inverse_transform(const Eigen::MatrixXd& z) const {
  if (z.cols() != mean.size()) throw InvalidArgument("scaler column count mismatch");
  Eigen::MatrixXd x(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    x.col(j) = z.col(j).array() * stddev(j) + mean(j);
  }
  return x;
}

ScalerParams fit_scaler(const Eigen::MatrixXd& x, std::vector<std::string> names) {
  if (x.rows() == 0) throw InvalidArgument("cannot fit a scaler on zero rows");
  if (names.empty()) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("c" + std::to_string(j));
  }
  ScalerParams p;
  p.columns = std::move(names);
  p.mean.resize(x.cols());
  p.stddev.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    p.mean(j) = x.col(j).mean();
    p.stddev(j) = population_std(x.col(j), p.mean(j));
    p.zero_variance.push_back(p.stddev(j) == 0.0);
  }
  return p;
}

ScalerParams fit_scaler(const Dataset& ds, const std::vector<std::string>& columns, IngestionLog& log) {
  auto p = fit_scaler(ds.select(columns), columns);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (p.zero_variance[j]) log.add("column '" + columns[j] + "' has zero variance; scaled to 0");
  }
  return p;
}

ScalerParams fit_scaler(const Dataset& ds, const std::vector<std::string>& columns) {
  IngestionLog log;
  return fit_scaler(ds, columns, log);
}

Dataset apply_scaler(const Dataset& ds, const ScalerParams& params) {
  Dataset out = ds;
  const Eigen::MatrixXd z = params.transform(ds.select(params.columns));
  for (std::size_t j = 0; j < params.columns.size(); ++j) {
    out.features.col(ds.column(params.columns[j])) = z.col(static_cast<Eigen::Index>(j));
  }
  return out;
}

CorrelationMatrix pearson_correlation(const Eigen::MatrixXd& columns, std::vector<std::string> labels) {
  const Eigen::Index n = columns.rows();
  const Eigen::Index p = columns.cols();
  if (n < 2) throw InvalidArgument("correlation needs at least 2 samples");
  CorrelationMatrix out;
  out.labels = std::move(labels);
  out.values = Eigen::MatrixXd::Identity(p, p);
  Eigen::MatrixXd centered = columns.rowwise() - columns.colwise().mean();
  Eigen::VectorXd norms = centered.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j) out.constant.push_back(norms(j) == 0.0);
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = a + 1; b < p; ++b) {
      double r = 0.0;
      if (norms(a) > 0.0 && norms(b) > 0.0) {
        r = centered.col(a).dot(centered.col(b)) / (norms(a) * norms(b));
        r = std::clamp(r, -1.0, 1.0);
      }
      out.values(a, b) = r;
      out.values(b, a) = r;
    }
  }
  return out;
}

CorrelationMatrix pearson_correlation_matrix(const Dataset& ds) {
  Eigen::MatrixXd all(ds.rows(), ds.cols() + 2);
  all.leftCols(ds.cols()) = ds.features;
  all.col(ds.cols()) = ds.temperature;
  all.col(ds.cols() + 1) = ds.quality.cast<double>();
  auto labels = ds.feature_names;
  labels.emplace_back(kPeakTemperature);
  labels.emplace_back(kDepositionQuality);
  return pearson_correlation(all, std::move(labels));
}

std::vector<ColumnSummary> summarize(const Dataset& ds) {
  std::vector<ColumnSummary> out;
  auto add = [&](const std::string& name, const Eigen::VectorXd& v) {
    ColumnSummary s;
    s.name = name;
    s.min = v.minCoeff();
    s.max = v.maxCoeff();
    s.mean = v.mean();
    s.stddev = population_std(v, s.mean);
    out.push_back(s);
  };
  for (Eigen::Index j = 0; j < ds.cols(); ++j) add(ds.feature_names[static_cast<std::size_t>(j)], ds.features.col(j));
  add(std::string(kPeakTemperature), ds.temperature);
  add(std::string(kDepositionQuality), ds.quality.cast<double>());
  return out;
}

}  // namespace thermoforge::data
