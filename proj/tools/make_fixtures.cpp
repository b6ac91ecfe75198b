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

// Regenerates the synthetic fixtures under fixtures/.
//
//   make_fixtures <dir>
//
// regression.csv      40 rows, peak temperature = smooth function of RR, TS, DMFR + noise
// classification.csv  30 rows, quality separable on RR with a gap (both classes in each split)
// advection.csv       30 rows, peak temperature = RR - TS on the unit square, corners included

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thermoforge/dataset.hpp"
#include "thermoforge/random.hpp"

namespace {

namespace tf = thermoforge;

constexpr std::uint64_t kSeed = 42;
const char* const kGeometries[] = {"Cylindrical", "Threaded", "Square"};
const double kDiameters[] = {20.0, 30.0, 40.0};
const double kPowders[] = {45.0, 75.0, 106.0};

struct Row {
  double rr, ts;
  std::string geometry;
  double dmfr, diameter, powder, pt;
  int quality;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write(const std::string& path, const std::vector<Row>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const auto cols = tf::data::CsvSchema::afsd().all_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const Row& r : rows) {
    out << fmt(r.rr) << ',' << fmt(r.ts) << ',' << r.geometry << ',' << fmt(r.dmfr) << ',' << fmt(r.diameter) << ','
        << fmt(r.powder) << ',' << fmt(r.pt) << ',' << r.quality << '\n';
  }
}

double round_to(double v, double step) { return std::round(v / step) * step; }

std::vector<Row> regression() {
  auto rng = tf::CounterRng::stream(kSeed, "fixture_regression");
  std::vector<Row> rows;
  for (int i = 0; i < 40; ++i) {
    Row r;
    r.rr = round_to(rng.uniform(200.0, 1400.0), 1.0);
    r.ts = round_to(rng.uniform(50.0, 300.0), 0.1);
    r.geometry = kGeometries[rng.below(3)];
    r.dmfr = round_to(rng.uniform(500.0, 3000.0), 1.0);
    r.diameter = kDiameters[rng.below(3)];
    r.powder = kPowders[rng.below(3)];
    const double a = (r.rr - 200.0) / 1200.0, b = (r.ts - 50.0) / 250.0, c = (r.dmfr - 500.0) / 2500.0;
    const double pt = 250.0 + 180.0 / (1.0 + std::exp(-8.0 * (a - 0.5))) + 60.0 * (1.0 - b) * (1.0 - b) + 40.0 * c +
                      5.0 * rng.normal();
    r.pt = round_to(pt, 0.01);
    r.quality = pt > 400.0 ? 1 : 0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<Row> classification_attempt(std::uint64_t attempt) {
  auto rng = tf::CounterRng::stream(kSeed, "fixture_classification", attempt);
  std::vector<Row> rows;
  for (int i = 0; i < 30; ++i) {
    Row r;
    r.quality = static_cast<int>(rng.below(2));
    r.rr = round_to(r.quality ? rng.uniform(900.0, 1400.0) : rng.uniform(200.0, 700.0), 1.0);
    r.ts = round_to(rng.uniform(50.0, 300.0), 0.1);
    r.geometry = kGeometries[rng.below(3)];
    r.dmfr = round_to(rng.uniform(500.0, 3000.0), 1.0);
    r.diameter = kDiameters[rng.below(3)];
    r.powder = kPowders[rng.below(3)];
    r.pt = round_to(250.0 + 0.2 * r.rr + 10.0 * rng.normal(), 0.01);
    rows.push_back(r);
  }
  return rows;
}

bool both_classes(const std::vector<Row>& rows, const std::vector<std::size_t>& idx) {
  bool seen[2] = {false, false};
  for (std::size_t i : idx) seen[rows[i].quality] = true;
  return seen[0] && seen[1];
}

std::vector<Row> classification() {
  const auto split = tf::data::split_indices(30, tf::data::SplitSpec{0.8, kSeed});
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto rows = classification_attempt(attempt);
    if (both_classes(rows, split.train) && both_classes(rows, split.test)) return rows;
  }
}

std::vector<Row> advection() {
  auto rng = tf::CounterRng::stream(kSeed, "fixture_advection");
  std::vector<std::pair<double, double>> pts = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  while (pts.size() < 30) pts.emplace_back(round_to(rng.uniform(), 1e-4), round_to(rng.uniform(), 1e-4));
  std::vector<Row> rows;
  for (const auto& [x, t] : pts) {
    const double u = x - t;
    rows.push_back(Row{x, t, "Cylindrical", 1000.0, 20.0, 75.0, u, u > 0 ? 1 : 0});
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  try {
    write(dir + "/regression.csv", regression());
    write(dir + "/classification.csv", classification());
    write(dir + "/advection.csv", advection());
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
