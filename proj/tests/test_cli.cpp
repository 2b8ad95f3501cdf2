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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

const fs::path kWorkDir = fs::temp_directory_path() / "stcv_cli_tests";

int run(const std::string& args) {
  const std::string cmd = std::string(STCV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::create_directories(kWorkDir);
    // A small synthetic task shared by the tests below.
    const fs::path task = kWorkDir / "task.csv";
    ASSERT_EQ(run("synth --n 120 --rho 0.15 --seed 5 --out " + task.string()), 0);
  }
  static std::string task_flags() {
    return "--input " + (kWorkDir / "task.csv").string() +
           " --response class --positive pos";
  }
};

}  // namespace

TEST_F(CliTest, PartitionIsByteDeterministic) {
  const fs::path a = kWorkDir / "plan_a.json";
  const fs::path b = kWorkDir / "plan_b.json";
  const std::string args = "partition " + task_flags() +
                           " --method spcv_coords --folds 5 --seed 42 --out ";
  ASSERT_EQ(run(args + a.string()), 0);
  ASSERT_EQ(run(args + b.string()), 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_FALSE(text.empty());
}

TEST_F(CliTest, ValidateAcceptsToolkitPlan) {
  const fs::path plan = kWorkDir / "plan_v.json";
  ASSERT_EQ(run("partition " + task_flags() +
                " --method spcv_block --folds 3 --param rows_cols=3,3 --seed 7 --out " +
                plan.string()),
            0);
  EXPECT_EQ(run("validate " + task_flags() + " --plan " + plan.string()), 0);
}

TEST_F(CliTest, ValidateRejectsCorruptedPlan) {
  const fs::path plan = kWorkDir / "plan_corrupt.json";
  ASSERT_EQ(run("partition " + task_flags() + " --method cv --folds 4 --seed 3 --out " +
                plan.string()),
            0);
  std::string text = slurp(plan);
  // Push a test row far out of range: 999 does not exist in a 120-row task.
  const auto at = text.find("\"test\": [");
  ASSERT_NE(at, std::string::npos);
  text.insert(at + 9, "999, ");
  std::ofstream(plan, std::ios::binary) << text;
  EXPECT_EQ(run("validate " + task_flags() + " --plan " + plan.string()), 1);
}

TEST_F(CliTest, ResampleWritesResult) {
  const fs::path plan = kWorkDir / "plan_r.json";
  const fs::path result = kWorkDir / "result.json";
  ASSERT_EQ(run("partition " + task_flags() + " --method cv --folds 4 --seed 9 --out " +
                plan.string()),
            0);
  ASSERT_EQ(run("resample " + task_flags() + " --plan " + plan.string() +
                " --learner knn --k-neighbors 3 --measure auroc --out " + result.string()),
            0);
  const std::string text = slurp(result);
  EXPECT_NE(text.find("\"measure\": \"auroc\""), std::string::npos);
  EXPECT_NE(text.find("\"per_fold\""), std::string::npos);
}

TEST_F(CliTest, ResampleMismatchedPlanExitsOne) {
  const fs::path small = kWorkDir / "small.csv";
  ASSERT_EQ(run("synth --n 40 --seed 8 --out " + small.string()), 0);
  const fs::path plan = kWorkDir / "plan_small.json";
  ASSERT_EQ(run("partition --input " + small.string() +
                " --response class --positive pos --method cv --folds 4 --seed 2 --out " +
                plan.string()),
            0);
  EXPECT_EQ(run("resample " + task_flags() + " --plan " + plan.string() +
                " --learner knn --measure auroc"),
            1);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("partition --method cv"), 2);  // missing --input
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST_F(CliTest, UnknownMethodExitsOne) {
  EXPECT_EQ(run("partition " + task_flags() + " --method spcv_warp --folds 3"), 1);
}

TEST_F(CliTest, PlotWritesSvg) {
  const fs::path plan = kWorkDir / "plan_p.json";
  const fs::path svg = kWorkDir / "folds.svg";
  ASSERT_EQ(run("partition " + task_flags() +
                " --method spcv_tiles --param nsplit=3,3 --seed 4 --out " + plan.string()),
            0);
  ASSERT_EQ(run("plot " + task_flags() + " --plan " + plan.string() +
                " --folds 1,2 --show-blocks --out " + svg.string()),
            0);
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("<polygon"), std::string::npos);
}

TEST_F(CliTest, RangeReportsEstimate) {
  EXPECT_EQ(run("range " + task_flags() + " --value-col signal --n-lags 10 --json"), 0);
}

TEST_F(CliTest, NestedRunsEndToEnd) {
  const fs::path plan = kWorkDir / "plan_n.json";
  ASSERT_EQ(run("partition " + task_flags() +
                " --method spcv_coords --folds 3 --seed 21 --out " + plan.string()),
            0);
  const fs::path result = kWorkDir / "nested.json";
  ASSERT_EQ(run("nested " + task_flags() + " --plan " + plan.string() +
                " --learner knn --grid-k 1,7 --inner-method spcv_coords --inner-folds 2" +
                " --measure auroc --out " + result.string()),
            0);
  const std::string text = slurp(result);
  EXPECT_NE(text.find("\"chosen\""), std::string::npos);
}
