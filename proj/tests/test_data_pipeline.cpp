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

#include <Eigen/Eigenvalues>
#include <set>

#include "test_util.hpp"
#include "thermoforge/dataset.hpp"
#include "thermoforge/errors.hpp"

namespace tf = thermoforge;
using tf::data::CsvSchema;
using tf::data::Dataset;
using tf::data::IngestionLog;

namespace {

const std::string kHeader =
    "Rotational Rate (RPM),Travel Speed (mm/min),Tool Geometry,Deposition Material Flow Rate (mm^3/min),"
    "Tool Diameter (mm),Powder Size (micro meter),Peak temperature (degree Celsius),Deposition Quality\n";

Dataset parse(const std::string& text) {
  IngestionLog log;
  return tf::data::parse_csv(text, CsvSchema::afsd(), log);
}

Dataset random_dataset(std::uint64_t seed, int n) {
  auto rng = tf::CounterRng::stream(seed, "test_dataset");
  std::string text = kHeader;
  for (int i = 0; i < n; ++i) {
    text += std::to_string(rng.uniform(200, 1400)) + "," + std::to_string(rng.uniform(50, 300)) + "," +
            (rng.below(2) ? "flat" : "tapered") + "," + std::to_string(rng.uniform(500, 3000)) + "," +
            std::to_string(20 + 10 * static_cast<int>(rng.below(3))) + ",75," + std::to_string(rng.uniform(300, 500)) +
            "," + std::to_string(rng.below(2)) + "\n";
  }
  return parse(text);
}

double pearson_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i] / n, mb += b[i] / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST(LoadCsv, MinimalTwoRows) {
  const Dataset ds = parse(kHeader + "800,100,flat,1000,20,75,400,1\n900,120,flat,1100,20,75,420,0\n");
  EXPECT_EQ(ds.rows(), 2);
  EXPECT_EQ(ds.cols(), 6);
  EXPECT_DOUBLE_EQ(ds.temperature(1), 420);
  EXPECT_EQ(ds.quality(0), 1);
  EXPECT_EQ(ds.units[0], "RPM");
}

TEST(LoadCsv, MissingTargetColumnNamesIt) {
  const std::string header =
      "Rotational Rate (RPM),Travel Speed (mm/min),Tool Geometry,Deposition Material Flow Rate (mm^3/min),"
      "Tool Diameter (mm),Powder Size (micro meter),Deposition Quality\n";
  try {
    parse(header + "800,100,flat,1000,20,75,1\n900,100,flat,1000,20,75,0\n");
    FAIL() << "expected SchemaError";
  } catch (const tf::SchemaError& e) {
    EXPECT_EQ(e.column(), "Peak temperature (degree Celsius)");
  }
}

TEST(LoadCsv, GeometryFirstAppearanceCodes) {
  const Dataset ds = parse(kHeader + "1,1,flat,1,1,1,1,0\n2,2,flat,2,2,2,2,1\n3,3,tapered,3,3,3,3,0\n");
  const auto g = ds.column(tf::data::kToolGeometry);
  EXPECT_EQ(ds.features(0, g), 0);
  EXPECT_EQ(ds.features(1, g), 0);
  EXPECT_EQ(ds.features(2, g), 1);
  EXPECT_TRUE(ds.categorical_mask[static_cast<std::size_t>(g)]);
  EXPECT_EQ(ds.category_labels[static_cast<std::size_t>(g)], (std::vector<std::string>{"flat", "tapered"}));
}

TEST(LoadCsv, NonNumericCellReportsRowAndColumn) {
  try {
    parse(kHeader + "800,100,flat,1000,20,75,400,1\n900,abc,flat,1000,20,75,400,1\n");
    FAIL() << "expected ParseError";
  } catch (const tf::ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), "Travel Speed (mm/min)");
  }
}

TEST(LoadCsv, EmptyInput) {
  EXPECT_THROW(parse(""), tf::EmptyInputError);
  EXPECT_THROW(parse(kHeader), tf::EmptyInputError);
}

TEST(LoadCsv, QualityMustBeBinary) {
  EXPECT_THROW(parse(kHeader + "1,1,flat,1,1,1,1,2\n2,2,flat,2,2,2,2,1\n"), tf::ParseError);
}

TEST(LoadCsv, NonFiniteRejected) {
  EXPECT_THROW(parse(kHeader + "1,inf,flat,1,1,1,1,0\n2,2,flat,2,2,2,2,1\n"), tf::ParseError);
}

TEST(LoadCsv, LogRecordsRowsAndRanges) {
  IngestionLog log;
  tf::data::parse_csv(kHeader + "800,100,flat,1000,20,75,400,1\n900,120,flat,1100,20,75,420,0\n", CsvSchema::afsd(),
                      log);
  const std::string s = log.str();
  EXPECT_NE(s.find("rows: 2"), std::string::npos);
  EXPECT_NE(s.find("min=800 max=900"), std::string::npos);
}

TEST(LoadCsv, MissingFileIsDataError) {
  EXPECT_THROW(tf::data::load_csv("/nonexistent/thermoforge.csv"), tf::DataError);
}

TEST(LoadCsv, WriteRoundTripKeepsHeaderExactly) {
  const auto dir = tftest::scratch_dir("csv_roundtrip");
  const std::string text = kHeader + "800,100,flat,1000,20,75,400.5,1\n900,120,tapered,1100,30,45,420,0\n";
  const Dataset ds = parse(text);
  tf::data::write_csv(dir / "out.csv", ds);
  const std::string back = tftest::read_file(dir / "out.csv");
  EXPECT_EQ(back.substr(0, kHeader.size()), kHeader);
  const Dataset again = tf::data::load_csv(dir / "out.csv");
  EXPECT_EQ(again.features, ds.features);
  EXPECT_EQ(again.temperature, ds.temperature);
  EXPECT_EQ(again.quality, ds.quality);
}

TEST(Split, TenRowsEightTwo) {
  const auto idx = tf::data::split_indices(10, {0.8, 7});
  EXPECT_EQ(idx.train.size(), 8u);
  EXPECT_EQ(idx.test.size(), 2u);
  const auto again = tf::data::split_indices(10, {0.8, 7});
  EXPECT_EQ(idx.train, again.train);
  EXPECT_EQ(idx.test, again.test);
}

TEST(Split, FractionLeavingEmptyTestThrows) {
  // round(0.99 * 5) = 5 train rows, 0 test rows.
  EXPECT_THROW(tf::data::split_indices(5, {0.99, 1}), tf::InvalidArgument);
  EXPECT_THROW(tf::data::split_indices(5, {0.0, 1}), tf::InvalidArgument);
  EXPECT_THROW(tf::data::split_indices(5, {1.0, 1}), tf::InvalidArgument);
}

TEST(SplitProperty, DisjointExhaustiveDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "split_property");
    const std::size_t n = 2 + rng.below(60);
    const double frac = rng.uniform(0.3, 0.7);
    const auto s = tf::data::split_indices(n, {frac, seed});
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    for (auto i : s.test) EXPECT_TRUE(all.insert(i).second) << "overlap at " << i;
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(s.train.size(), static_cast<std::size_t>(std::llround(frac * static_cast<double>(n))));
    EXPECT_TRUE(std::is_sorted(s.train.begin(), s.train.end()));
    EXPECT_EQ(tf::data::split_indices(n, {frac, seed}).test, s.test);
  }
}

TEST(Scaler, OneTwoThree) {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  const auto p = tf::data::fit_scaler(x);
  EXPECT_DOUBLE_EQ(p.mean(0), 2.0);
  EXPECT_NEAR(p.stddev(0), std::sqrt(2.0 / 3.0), 1e-15);
  const Eigen::MatrixXd z = p.transform(x);
  EXPECT_NEAR(z(0, 0), -1.224744871391589, 1e-12);
  EXPECT_NEAR(z(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(z(2, 0), 1.224744871391589, 1e-12);
}

TEST(Scaler, ConstantColumnZeroAndFlagged) {
  Eigen::MatrixXd x(3, 1);
  x << 5, 5, 5;
  const auto p = tf::data::fit_scaler(x);
  EXPECT_TRUE(p.zero_variance[0]);
  EXPECT_EQ(p.transform(x), Eigen::MatrixXd::Zero(3, 1));
}

TEST(Scaler, UnknownColumnThrows) {
  const Dataset ds = random_dataset(1, 5);
  EXPECT_THROW(tf::data::fit_scaler(ds, {"Spindle Torque (Nm)"}), tf::InvalidArgument);
}

TEST(Scaler, ConstantColumnIsLogged) {
  Dataset ds = random_dataset(2, 6);
  ds.features.col(ds.column(tf::data::kPowderSize)).setConstant(75);
  IngestionLog log;
  tf::data::fit_scaler(ds, {std::string(tf::data::kPowderSize)}, log);
  EXPECT_NE(log.str().find("zero variance"), std::string::npos);
}

TEST(ScalerProperty, MeanZeroUnitStdAndRoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto rng = tf::CounterRng::stream(seed, "scaler_property");
    const Eigen::MatrixXd x = tftest::random_matrix(rng, 3 + static_cast<Eigen::Index>(rng.below(40)), 4, -50, 900);
    const auto p = tf::data::fit_scaler(x);
    const Eigen::MatrixXd z = p.transform(x);
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      EXPECT_LT(std::abs(z.col(j).mean()), 1e-9);
      const double sd = std::sqrt((z.col(j).array() - z.col(j).mean()).square().mean());
      EXPECT_NEAR(sd, 1.0, 1e-12);
    }
    const Eigen::MatrixXd back = p.inverse_transform(z);
    EXPECT_LT((back - x).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()));
  }
}

TEST(ApplyScaler, OnlyNamedColumnsChange) {
  const Dataset ds = random_dataset(3, 10);
  const auto p = tf::data::fit_scaler(ds, {std::string(tf::data::kTravelSpeed)});
  const Dataset scaled = tf::data::apply_scaler(ds, p);
  const auto ts = ds.column(tf::data::kTravelSpeed), rr = ds.column(tf::data::kRotationalRate);
  EXPECT_EQ(scaled.features.col(rr), ds.features.col(rr));
  EXPECT_LT(std::abs(scaled.features.col(ts).mean()), 1e-9);
}

TEST(Correlation, SelfAndNegation) {
  Eigen::MatrixXd m(3, 2);
  m << 1, -1, 2, -2, 3, -3;
  const auto c = tf::data::pearson_correlation(m, {"x", "-x"});
  EXPECT_EQ(c.values(0, 0), 1.0);
  EXPECT_EQ(c.values(1, 1), 1.0);
  EXPECT_NEAR(c.values(0, 1), -1.0, 1e-15);
}

TEST(Correlation, HandValueMatchesOracle) {
  Eigen::MatrixXd m(3, 2);
  m << 1, 1, 2, 2, 3, 4;
  const auto c = tf::data::pearson_correlation(m, {"a", "b"});
  const double oracle = pearson_oracle({1, 2, 3}, {1, 2, 4});
  EXPECT_NEAR(oracle, 0.9819805060619657, 1e-15);
  EXPECT_NEAR(c.values(0, 1), oracle, 1e-14);
}

TEST(Correlation, ConstantColumnZeroFlagged) {
  Eigen::MatrixXd m(3, 2);
  m << 1, 5, 2, 5, 3, 5;
  const auto c = tf::data::pearson_correlation(m, {"a", "k"});
  EXPECT_TRUE(c.constant[1]);
  EXPECT_EQ(c.values(0, 1), 0.0);
  EXPECT_EQ(c.values(1, 1), 1.0);
}

TEST(Correlation, NeedsTwoSamples) {
  EXPECT_THROW(tf::data::pearson_correlation(Eigen::MatrixXd::Ones(1, 2), {"a", "b"}), tf::InvalidArgument);
}

TEST(CorrelationProperty, SymmetricBoundedPsd) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dataset ds = random_dataset(seed, 4 + static_cast<int>(seed % 20));
    const auto c = tf::data::pearson_correlation_matrix(ds);
    EXPECT_EQ(c.labels.size(), 8u);
    EXPECT_EQ(c.values, c.values.transpose());
    EXPECT_LE(c.values.cwiseAbs().maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < c.values.rows(); ++i) EXPECT_EQ(c.values(i, i), 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.values);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(Dataset, SelectAndSubset) {
  const Dataset ds = random_dataset(4, 6);
  const Eigen::MatrixXd s = ds.select({std::string(tf::data::kFlowRate), std::string(tf::data::kRotationalRate)});
  EXPECT_EQ(s.col(0), ds.features.col(ds.column(tf::data::kFlowRate)));
  const std::vector<std::size_t> rows = {4, 1};
  const Dataset sub = ds.subset(rows);
  EXPECT_EQ(sub.rows(), 2);
  EXPECT_EQ(sub.temperature(0), ds.temperature(4));
  EXPECT_THROW(ds.column("nope"), tf::InvalidArgument);
}

TEST(LoadCsv, SingleRowRejected) {
  EXPECT_THROW(parse(kHeader + "800,100,flat,1000,20,75,400,1\n"), tf::DataError);
}
