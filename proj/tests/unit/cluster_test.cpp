// Copyright 2026 The ACSP Authors. All Rights Reserved.
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

#include "acsp/cluster.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "acsp/error.hpp"
#include "acsp/rng.hpp"
#include "oracles.hpp"

namespace acsp {
namespace {

using oracle::Rows;

DistanceMatrix FromRows(const Rows& rows) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return DistanceMatrix::FromRows(flat, rows.size(), rows.empty() ? 0 : rows[0].size());
}

Rows Line(std::initializer_list<double> xs) {
  Rows rows;
  for (double x : xs) rows.push_back({x});
  return rows;
}

Rows RandomRows(Rng& rng, std::size_t n, std::size_t dims) {
  Rows rows(n, std::vector<double>(dims));
  for (auto& r : rows) {
    for (auto& v : r) v = rng.Uniform(0, 2);
  }
  return rows;
}

TEST(KMedoids, KEqualsNIsZeroCost) {
  const Rows rows = Line({3, 1, 4, 1.5, 9});
  const ClusterResult r = KMedoids(FromRows(rows), 5);
  EXPECT_EQ(r.medoids, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(r.total_cost, 0.0);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.assignment[i], i);
  EXPECT_EQ(MeanSimplifiedSilhouette(FromRows(rows), r), 1.0);
}

TEST(KMedoids, TwoGroupsOnALine) {
  const ClusterResult r = KMedoids(FromRows(Line({0, 1, 2, 10, 11, 12})), 2);
  EXPECT_EQ(r.medoids, (std::vector<std::size_t>{1, 4}));
  EXPECT_DOUBLE_EQ(r.total_cost, 4.0);
  EXPECT_EQ(r.assignment, (std::vector<std::size_t>{1, 1, 1, 4, 4, 4}));
}

TEST(KMedoids, DuplicateRowsLowestIndex) {
  const ClusterResult r = KMedoids(FromRows({{1, 2}, {1, 2}, {5, 5}}), 2);
  EXPECT_EQ(r.medoids, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(r.total_cost, 0.0);
}

TEST(KMedoids, BadK) {
  const DistanceMatrix d = FromRows(Line({0, 1, 2}));
  EXPECT_THROW(KMedoids(d, 1), Error);
  EXPECT_THROW(KMedoids(d, 4), Error);
}

TEST(KMedoids, MatchesExhaustiveAndDecreases) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng.Below(9);
    const std::size_t k = 2 + rng.Below(2);
    const Rows rows = RandomRows(rng, n, 1 + rng.Below(4));
    const ClusterResult r = KMedoids(FromRows(rows), k);
    EXPECT_NEAR(r.total_cost, oracle::ExhaustiveMinCost(rows, k), 1e-9) << trial;
    EXPECT_NEAR(r.total_cost, oracle::CostOf(rows, r.medoids), 1e-9);
    ASSERT_FALSE(r.cost_history.empty());
    EXPECT_EQ(r.cost_history.back(), r.total_cost);
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
      EXPECT_LT(r.cost_history[i], r.cost_history[i - 1]);
    }
    EXPECT_TRUE(std::is_sorted(r.medoids.begin(), r.medoids.end()));
  }
}

TEST(Mss, HandExample) {
  const DistanceMatrix d = FromRows(Line({0, 1, 10, 11}));
  // Medoids at values 1 and 10: mean(1 - 1/10, 1, 1, 1 - 1/10).
  EXPECT_NEAR(MeanSimplifiedSilhouette(d, AssignToMedoids(d, {1, 2})), 0.95, 1e-12);
  // Medoids at values 0 and 10: mean(1, 1 - 1/9, 1, 1 - 1/11) = 94/99.
  EXPECT_NEAR(MeanSimplifiedSilhouette(d, AssignToMedoids(d, {0, 2})), 94.0 / 99.0, 1e-12);
}

TEST(Mss, EquidistantPointScoresZero) {
  const DistanceMatrix d = FromRows(Line({0, 10, 5}));
  const auto s = SimplifiedSilhouetteScores(d, AssignToMedoids(d, {0, 1}));
  EXPECT_EQ(s, (std::vector<double>{1, 1, 0}));
}

TEST(Mss, MatchesDefinitionOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const Rows rows = RandomRows(rng, 5 + rng.Below(8), 3);
    const DistanceMatrix d = FromRows(rows);
    const ClusterResult r = KMedoids(d, 2 + rng.Below(3));
    EXPECT_NEAR(MeanSimplifiedSilhouette(d, r), oracle::Mss(rows, r.medoids), 1e-12);
  }
}

TEST(Mss, Properties) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    Rows rows = RandomRows(rng, 4 + rng.Below(8), 2);
    const DistanceMatrix d = FromRows(rows);
    const ClusterResult r = KMedoids(d, 2 + rng.Below(2));
    const double mss = MeanSimplifiedSilhouette(d, r);
    EXPECT_LE(mss, 1.0);
    EXPECT_LT(mss, 1.0);  // random points never all coincide with medoids

    // Relabeling clusters (medoid order) does not change scores.
    std::vector<std::size_t> reversed(r.medoids.rbegin(), r.medoids.rend());
    EXPECT_EQ(SimplifiedSilhouetteScores(d, AssignToMedoids(d, reversed)),
              SimplifiedSilhouetteScores(d, r));

    // A duplicate of a medoid row never lowers MSS.
    rows.push_back(rows[r.medoids[rng.Below(r.medoids.size())]]);
    const DistanceMatrix d2 = FromRows(rows);
    EXPECT_GE(MeanSimplifiedSilhouette(d2, AssignToMedoids(d2, r.medoids)), mss - 1e-15);
  }
}

TEST(Mss, AgreesWithClassicSilhouetteOnSeparatedClusters) {
  const Rows rows = Line({0, 0.1, 0.2, 50, 50.1, 50.2});
  const DistanceMatrix d = FromRows(rows);
  const ClusterResult r = KMedoids(d, 2);
  std::vector<std::size_t> cluster_of(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) cluster_of[i] = r.assignment[i];
  EXPECT_GT(MeanSimplifiedSilhouette(d, r), 0.99);
  EXPECT_GT(oracle::ClassicSilhouette(rows, cluster_of), 0.99);
}

TEST(Sweep, FullRangeEndsAtOne) {
  Rng rng(4);
  const DistanceMatrix d = FromRows(RandomRows(rng, 5, 2));
  const MssCurve curve = Sweep(d, {});
  std::vector<std::size_t> keys;
  for (const auto& [k, v] : curve.entries) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::size_t>{2, 3, 4, 5}));
  EXPECT_EQ(curve.entries.at(5), 1.0);
}

TEST(Sweep, StrideKeys) {
  Rng rng(4);
  const DistanceMatrix d = FromRows(RandomRows(rng, 12, 2));
  SweepOptions opt;
  opt.k_min = 2;
  opt.k_max = 10;
  opt.stride = 2;
  std::vector<std::size_t> keys;
  for (const auto& [k, v] : Sweep(d, opt).entries) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::size_t>{2, 4, 6, 8, 10}));
  opt.stride = 3;
  keys.clear();
  for (const auto& [k, v] : Sweep(d, opt).entries) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::size_t>{2, 5, 8, 10}));
}

TEST(Sweep, DeterministicAndCsv) {
  Rng rng(4);
  const DistanceMatrix d = FromRows(RandomRows(rng, 9, 3));
  const MssCurve a = Sweep(d, {}, 3);
  const MssCurve b = Sweep(d, {}, 3);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.layer_id, 3u);
  const std::string csv = MssCurveCsv(a);
  EXPECT_EQ(csv.rfind("k,mss\n", 0), 0u);
  EXPECT_NE(csv.find("\n9,1.000000000000\n"), std::string::npos) << csv;
}

TEST(Sweep, BadRange) {
  Rng rng(4);
  const DistanceMatrix d = FromRows(RandomRows(rng, 5, 2));
  SweepOptions opt;
  opt.k_min = 4;
  opt.k_max = 3;
  EXPECT_THROW(Sweep(d, opt), Error);
  opt.k_min = 2;
  opt.k_max = 6;
  EXPECT_THROW(Sweep(d, opt), Error);
}

}  // namespace
}  // namespace acsp
