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

#include "helpers.hpp"
#include "stcv/partition/grouped.hpp"
#include "stcv/plan.hpp"
#include "stcv/rng.hpp"
#include "stcv/table.hpp"
#include "stcv/task.hpp"

using namespace stcv;

TEST(Rng, DeterministicAcrossInstances) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, BoundedDrawsStayInRange) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.below(13), 13u);
    const auto v = rng.range_int(-5, 5);
    EXPECT_GE(v, -5);
    EXPECT_LE(v, 5);
    const double u = rng.real01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMomentsRoughlyStandard) {
  Rng rng(11);
  double sum = 0.0, ss = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    ss += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(ss / n, 1.0, 0.05);
}

TEST(Rng, DerivedStreamsDiffer) {
  EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}

TEST(Table, ParseTimeKeys) {
  EXPECT_EQ(*parse_time_key("12"), 12);
  EXPECT_EQ(*parse_time_key("-3"), -3);
  EXPECT_EQ(*parse_time_key("1970-01-01"), 0);
  EXPECT_EQ(*parse_time_key("1970-01-02"), 1);
  EXPECT_EQ(*parse_time_key("2020-01-01"), 18262);
  EXPECT_EQ(*parse_time_key("2020-02-01") - *parse_time_key("2020-01-01"), 31);
  EXPECT_FALSE(parse_time_key("noon").has_value());
}

TEST(Table, FormatDoubleRoundTrips) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.real01() - 0.5) * std::pow(10.0, rng.range_int(-12, 12));
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

namespace {

Table toy_table() {
  Table t;
  t.names = {"slides", "x", "y", "dem", "slope"};
  t.columns = {{"TRUE", "FALSE", "TRUE", "FALSE"},
               {"0", "10", "20", "30"},
               {"5", "15", "25", "35"},
               {"100", "200", "300", "400"},
               {"1.5", "2.5", "3.5", "4.5"}};
  return t;
}

TaskSchema toy_schema() {
  TaskSchema s;
  s.response = "slides";
  s.x = "x";
  s.y = "y";
  s.positive_label = "TRUE";
  return s;
}

}  // namespace

TEST(BuildTask, CoordinatesLeaveFeatureSet) {
  const Task task = build_task(toy_table(), toy_schema());
  EXPECT_EQ(task.n(), 4u);
  EXPECT_EQ(task.n_features(), 2u);  // dem, slope; x/y excluded
  EXPECT_EQ(task.feature_names[0], "dem");
  EXPECT_EQ(task.response_kind, ResponseKind::categorical);
  EXPECT_EQ(*task.positive_label, "TRUE");
}

TEST(BuildTask, CoordsAsFeaturesAddsTwoColumns) {
  TaskSchema s = toy_schema();
  s.coords_as_features = true;
  const Task task = build_task(toy_table(), s);
  EXPECT_EQ(task.n_features(), 4u);
  EXPECT_NE(task.feature_index("x"), -1);
  EXPECT_NE(task.feature_index("y"), -1);
}

TEST(BuildTask, MissingResponseIsAnError) {
  TaskSchema s = toy_schema();
  s.response = "absent";
  EXPECT_THROW(
      {
        try {
          build_task(toy_table(), s);
        } catch (const std::invalid_argument& e) {
          EXPECT_NE(std::string(e.what()).find("missing response"), std::string::npos);
          throw;
        }
      },
      std::invalid_argument);
}

TEST(BuildTask, RejectsTinyAndNonNumeric) {
  Table t = toy_table();
  for (auto& col : t.columns) col.resize(1);
  EXPECT_THROW(build_task(t, toy_schema()), std::invalid_argument);

  Table bad = toy_table();
  bad.columns[1][2] = "east";
  EXPECT_THROW(build_task(bad, toy_schema()), std::invalid_argument);
}

TEST(BuildTask, NumericResponseWithoutPositiveLabel) {
  Table t = toy_table();
  t.columns[0] = {"0.5", "1.5", "2.5", "3.5"};
  TaskSchema s = toy_schema();
  s.positive_label.reset();
  const Task task = build_task(t, s);
  EXPECT_EQ(task.response_kind, ResponseKind::numeric);
  EXPECT_EQ(task.values[2], 2.5);
}

TEST(BuildTask, PositiveLabelMustOccur) {
  TaskSchema s = toy_schema();
  s.positive_label = "MAYBE";
  EXPECT_THROW(build_task(toy_table(), s), std::invalid_argument);
}

TEST(SetRole, MovesColumnOutOfFeatures) {
  Task task = build_task(toy_table(), toy_schema());
  const Task grouped = set_role(task, "dem", ColumnRole::group);
  EXPECT_EQ(grouped.n_features(), 1u);
  ASSERT_TRUE(grouped.group.has_value());
  EXPECT_EQ((*grouped.group)[0], "100");
  // Grouped CV honors the new role.
  const ResamplingPlan plan = grouped_cv(grouped, 2, 5);
  EXPECT_EQ(plan.k_per_repeat, 2);
}

TEST(SetRole, UnknownColumnAndDuplicateRoleFail) {
  const Task task = build_task(toy_table(), toy_schema());
  EXPECT_THROW(set_role(task, "absent", ColumnRole::group), std::invalid_argument);
  const Task grouped = set_role(task, "dem", ColumnRole::group);
  EXPECT_THROW(set_role(grouped, "slope", ColumnRole::group), std::invalid_argument);
}

TEST(SubsetTask, PreservesRolesAndValues) {
  const Task task = stcv::testing::random_task(1, 30, 60);
  const std::vector<int> rows = {2, 5, 9, 11, 20};
  const Task sub = subset_task(task, rows);
  EXPECT_EQ(sub.n(), rows.size());
  EXPECT_EQ(sub.labels[1], task.labels[5]);
  EXPECT_EQ((*sub.location)[3], (*task.location)[11]);
  EXPECT_EQ(sub.features[0][4], task.features[0][20]);
  EXPECT_EQ(sub.coords[0].x, task.coords[2].x);
}

TEST(ValidatePlan, ToolkitPlansPass) {
  const Task task = stcv::testing::random_task(2, 24, 40);
  const ResamplingPlan plan = random_cv(task, 4, 99);
  const ValidationReport report = validate_plan(plan, task);
  EXPECT_TRUE(report.pass) << (report.violations.empty() ? "" : report.violations[0]);
}

TEST(ValidatePlan, FlagsTestTrainOverlap) {
  const Task task = stcv::testing::random_task(3, 20, 30);
  ResamplingPlan plan = random_cv(task, 2, 1);
  plan.folds[0].train.insert(plan.folds[0].train.begin(), plan.folds[0].test[0]);
  std::sort(plan.folds[0].train.begin(), plan.folds[0].train.end());
  const ValidationReport report = validate_plan(plan, task);
  EXPECT_FALSE(report.pass);
  bool mentioned = false;
  for (const auto& v : report.violations)
    mentioned = mentioned || v.find("test and train overlap") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(ValidatePlan, FlagsUnsortedOrDuplicateIndices) {
  const Task task = stcv::testing::random_task(6, 20, 30);
  ResamplingPlan plan = random_cv(task, 2, 1);
  plan.folds[0].train.push_back(plan.folds[0].train.back());  // duplicate
  const ValidationReport report = validate_plan(plan, task);
  EXPECT_FALSE(report.pass);
  bool mentioned = false;
  for (const auto& v : report.violations)
    mentioned = mentioned || v.find("not sorted/unique") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(ValidatePlan, FlagsOutOfRangeIndex) {
  const Task task = stcv::testing::random_task(4, 20, 30);
  ResamplingPlan plan = random_cv(task, 2, 1);
  plan.folds[0].test.push_back(static_cast<int>(task.n()));  // row n+1 in 1-based terms
  const ValidationReport report = validate_plan(plan, task);
  EXPECT_FALSE(report.pass);
  bool mentioned = false;
  for (const auto& v : report.violations)
    mentioned = mentioned || v.find("out of range") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(Fold, IndexSetsSortedAndDisjoint) {
  const Task task = stcv::testing::random_task(5, 50, 80);
  const ResamplingPlan plan = random_cv(task, 5, 7);
  for (const Fold& fold : plan.folds) {
    EXPECT_TRUE(std::is_sorted(fold.test.begin(), fold.test.end()));
    EXPECT_TRUE(std::is_sorted(fold.train.begin(), fold.train.end()));
    EXPECT_TRUE(detail::intersect_sorted(fold.test, fold.train).empty());
    EXPECT_EQ(fold.test.size() + fold.train.size() + fold.omitted.size(), task.n());
  }
}
