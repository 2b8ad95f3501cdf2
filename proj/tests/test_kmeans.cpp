// Copyright 2026 the stcv authors
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

#include <set>

#include "helpers.hpp"
#include "stcv/kmeans.hpp"

using namespace stcv;

namespace {

std::set<std::set<int>> as_partition(const std::vector<int>& assignment) {
  std::map<int, std::set<int>> by_label;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    by_label[assignment[static_cast<std::size_t>(i)]].insert(i);
  std::set<std::set<int>> partition;
  for (auto& [label, members] : by_label) partition.insert(members);
  return partition;
}

}  // namespace

TEST(Standardize, HandComputedColumn) {
  const Standardized st = standardize({{1.0, 2.0, 3.0}});
  EXPECT_EQ(st.columns[0][0], -1.0);
  EXPECT_EQ(st.columns[0][1], 0.0);
  EXPECT_EQ(st.columns[0][2], 1.0);
  EXPECT_EQ(st.means[0], 2.0);
  EXPECT_EQ(st.sds[0], 1.0);
}

TEST(Standardize, OutputMomentsWithinTolerance) {
  Rng rng(5);
  std::vector<double> col(200);
  for (auto& v : col) v = 3.0 + 10.0 * rng.normal();
  const Standardized st = standardize({col});
  double mean = 0.0;
  for (double v : st.columns[0]) mean += v;
  mean /= col.size();
  double ss = 0.0;
  for (double v : st.columns[0]) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (col.size() - 1));
  EXPECT_LT(std::abs(mean), 1e-12);
  EXPECT_LT(std::abs(sd - 1.0), 1e-12);
}

TEST(Standardize, ConstantColumnNamesTheOffender) {
  try {
    standardize({{1.0, 1.0, 1.0}}, {"flatline"});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("flatline"), std::string::npos);
  }
}

TEST(Standardize, Idempotent) {
  Rng rng(9);
  std::vector<double> col(64);
  for (auto& v : col) v = rng.normal();
  const Standardized once = standardize({col});
  const Standardized twice = standardize({once.columns[0]});
  for (std::size_t i = 0; i < col.size(); ++i)
    EXPECT_NEAR(twice.columns[0][i], once.columns[0][i], 1e-12);
}

TEST(KMeans, EachDistinctPointItsOwnCluster) {
  const std::vector<std::vector<double>> pts = {{0, 0}, {1, 0}, {0, 1}, {2, 2}};
  const KMeansResult km = kmeans(pts, 4, 17);
  EXPECT_EQ(km.sse, 0.0);
  std::set<int> labels(km.assignment.begin(), km.assignment.end());
  EXPECT_EQ(labels.size(), 4u);
}

TEST(KMeans, MatchesBruteForceOnTwoTriplets) {
  const std::vector<std::vector<double>> pts = {{0, 0}, {0, 1}, {1, 0},
                                                {10, 10}, {10, 11}, {11, 10}};
  const KMeansResult km = kmeans(pts, 2, 23);
  const auto oracle_side = stcv::testing::best_two_partition(pts);
  std::set<int> oracle(oracle_side.begin(), oracle_side.end());
  std::set<int> got;
  for (int i = 0; i < 6; ++i)
    if (km.assignment[static_cast<std::size_t>(i)] == km.assignment[0]) got.insert(i);
  EXPECT_EQ(got, oracle);
}

TEST(KMeans, DuplicatedDataDoublesSse) {
  // Well-separated clusters so restarts find the unique optimum on both
  // the original and the duplicated dataset.
  Rng rng(31);
  std::vector<std::vector<double>> pts;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 4; ++i)
      pts.push_back({c * 50.0 + rng.real01(), c * 20.0 + rng.real01()});
  std::vector<std::vector<double>> doubled = pts;
  doubled.insert(doubled.end(), pts.begin(), pts.end());
  const KMeansResult a = kmeans(pts, 3, 7);
  const KMeansResult b = kmeans(doubled, 3, 7);
  EXPECT_NEAR(b.sse, 2.0 * a.sse, 1e-9 * std::max(1.0, a.sse));
  // Same partition structure on the first copy.
  EXPECT_EQ(as_partition(a.assignment),
            as_partition({b.assignment.begin(), b.assignment.begin() + 12}));
}

TEST(KMeans, SseTraceMonotoneInEveryRestart) {
  Rng rng(41);
  std::vector<std::vector<double>> pts(60, std::vector<double>(2));
  for (auto& p : pts) p = {rng.normal(), rng.normal()};
  const KMeansResult km = kmeans(pts, 4, 3);
  for (const auto& trace : km.traces) {
    ASSERT_FALSE(trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i)
      EXPECT_LE(trace[i], trace[i - 1] + 1e-9 * std::max(1.0, trace[i - 1]));
  }
}

TEST(KMeans, SseMatchesRecomputation) {
  Rng rng(43);
  std::vector<std::vector<double>> pts(50, std::vector<double>(3));
  for (auto& p : pts) p = {rng.normal(), rng.normal(), rng.normal()};
  const KMeansResult km = kmeans(pts, 5, 77);
  double sse = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& c = km.centers[static_cast<std::size_t>(km.assignment[i])];
    for (std::size_t j = 0; j < 3; ++j) sse += (pts[i][j] - c[j]) * (pts[i][j] - c[j]);
  }
  EXPECT_NEAR(km.sse, sse, 1e-9 * std::max(1.0, sse));
  // Every cluster nonempty, labels within range.
  std::vector<int> counts(5, 0);
  for (int a : km.assignment) {
    ASSERT_GE(a, 0);
    ASSERT_LT(a, 5);
    ++counts[static_cast<std::size_t>(a)];
  }
  for (int c : counts) EXPECT_GT(c, 0);
}

TEST(KMeans, DeterministicGivenSeed) {
  Rng rng(47);
  std::vector<std::vector<double>> pts(40, std::vector<double>(2));
  for (auto& p : pts) p = {rng.normal(), rng.normal()};
  const KMeansResult a = kmeans(pts, 3, 1234);
  const KMeansResult b = kmeans(pts, 3, 1234);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.sse, b.sse);
  const KMeansResult c = kmeans(pts, 3, 1235);
  EXPECT_EQ(c.assignment.size(), a.assignment.size());
}

TEST(KMeans, PermutationInvariantOnSeparatedClusters) {
  // Two well-separated clusters: the optimal partition is unique, so a
  // row permutation must map to the same partition.
  Rng rng(53);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 8; ++i) pts.push_back({rng.real01(), rng.real01()});
  for (int i = 0; i < 8; ++i) pts.push_back({8.0 + rng.real01(), 8.0 + rng.real01()});
  std::vector<int> perm(16);
  for (int i = 0; i < 16; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng shuffler(99);
  shuffler.shuffle(perm);
  std::vector<std::vector<double>> shuffled(16);
  for (int i = 0; i < 16; ++i)
    shuffled[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];

  const KMeansResult a = kmeans(pts, 2, 5);
  const KMeansResult b = kmeans(shuffled, 2, 6);
  std::vector<int> b_unshuffled(16);
  for (int i = 0; i < 16; ++i)
    b_unshuffled[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        b.assignment[static_cast<std::size_t>(i)];
  EXPECT_EQ(as_partition(a.assignment), as_partition(b_unshuffled));
}

TEST(KMeans, KBeyondDistinctPointsFails) {
  const std::vector<std::vector<double>> pts = {{1, 1}, {1, 1}, {2, 2}};
  EXPECT_THROW(kmeans(pts, 3, 1), std::invalid_argument);
  EXPECT_NO_THROW(kmeans(pts, 2, 1));
}
