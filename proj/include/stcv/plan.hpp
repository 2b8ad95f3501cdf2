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

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stcv/geometry.hpp"
#include "stcv/task.hpp"

namespace stcv {

using ParamMap = std::map<std::string, std::string>;

/// One train/test split. Indices are 0-based row numbers, sorted ascending
/// and duplicate-free; `omitted` holds rows excluded from both sides
/// (buffer/guard zones). test, train and omitted partition {0..n-1}.
struct Fold {
  int repeat = 1;  // 1-based repeat this fold belongs to
  int id = 1;      // 1-based fold number within its repeat
  std::vector<int> test;
  std::vector<int> train;
  std::vector<int> omitted;
};

/// A full resampling instantiation: `repeats` blocks of `k_per_repeat`
/// folds, a pure function of (task, method, params, seed).
struct ResamplingPlan {
  std::string method;
  ParamMap params;
  std::uint64_t seed = 0;
  int repeats = 1;
  int k_per_repeat = 0;
  std::vector<Fold> folds;  // ordered by (repeat, id)
};

/// Intermediate grouping of observations into blocks, before blocks are
/// dealt into folds. `geometry` (optional, one rectangle per block) is only
/// for plotting; for merged tiles it is the surviving tile's original cell.
struct BlockSet {
  enum class Provenance { geometric, clustered, custom, temporal, locational };
  std::vector<int> block_of;  // 0-based block label per observation
  int n_blocks = 0;
  Provenance provenance = Provenance::geometric;

  struct Rect {
    double x0, y0, x1, y1;
  };
  std::vector<Rect> geometry;  // empty unless geometric
  double rotation_deg = 0.0;   // tiles may be rotated around `pivot`
  Point pivot{0.0, 0.0};
};

/// Method-level traits needed by plan validation and repetition.
struct MethodTraits {
  bool overlapping = false;  // test sets of one repeat may overlap
  bool randomized = true;    // instantiation depends on the seed
};

inline MethodTraits method_traits(const std::string& method, const ParamMap& params) {
  MethodTraits t;
  auto param = [&](const char* key, const std::string& fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (method == "spcv_disc") {
    t.overlapping = true;
  } else if (method == "spcv_buffer") {
    t.overlapping = param("sp_data_type", "PA") == "PB";
    t.randomized = false;
  } else if (method == "spcv_tiles" || method == "custom_cv") {
    t.randomized = false;
  } else if (method == "spcv_block") {
    const std::string sel = param("selection", "random");
    t.randomized = (sel == "random");
  }
  return t;
}

/// Outcome of validate_plan: structural checks with human-readable
/// violations; never throws, failures are reported.
struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;

  void fail(std::string msg) {
    pass = false;
    violations.push_back(std::move(msg));
  }
};

namespace detail {

inline bool sorted_unique(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

inline std::vector<int> intersect_sorted(const std::vector<int>& a,
                                         const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Checks every fold of `plan` against `task`: sortedness, index range,
/// role disjointness, full coverage, nonempty test/train, and (method
/// permitting) within-repeat test disjointness and coverage.
inline ValidationReport validate_plan(const ResamplingPlan& plan, const Task& task) {
  ValidationReport report;
  const int n = static_cast<int>(task.n());
  const MethodTraits traits = method_traits(plan.method, plan.params);

  if (plan.folds.empty()) report.fail("plan has no folds");
  if (plan.k_per_repeat * plan.repeats != static_cast<int>(plan.folds.size()))
    report.fail("fold count " + std::to_string(plan.folds.size()) +
                " does not equal repeats*k_per_repeat");

  for (const Fold& fold : plan.folds) {
    const std::string tag =
        "repeat " + std::to_string(fold.repeat) + " fold " + std::to_string(fold.id);
    auto check_set = [&](const std::vector<int>& v, const char* role) {
      if (!detail::sorted_unique(v))
        report.fail(tag + ": " + role + " indices not sorted/unique");
      for (int i : v)
        if (i < 0 || i >= n)
          report.fail(tag + ": " + role + " index out of range: " + std::to_string(i + 1));
    };
    check_set(fold.test, "test");
    check_set(fold.train, "train");
    check_set(fold.omitted, "omitted");
    if (fold.test.empty()) report.fail(tag + ": empty test set");
    if (fold.train.empty()) report.fail(tag + ": empty train set");
    if (!detail::intersect_sorted(fold.test, fold.train).empty())
      report.fail(tag + ": test and train overlap");
    if (!detail::intersect_sorted(fold.test, fold.omitted).empty())
      report.fail(tag + ": test and omitted overlap");
    if (!detail::intersect_sorted(fold.train, fold.omitted).empty())
      report.fail(tag + ": train and omitted overlap");
    if (static_cast<int>(fold.test.size() + fold.train.size() + fold.omitted.size()) != n)
      report.fail(tag + ": test, train and omitted do not cover all " +
                  std::to_string(n) + " rows");
  }

  for (int rep = 1; rep <= plan.repeats; ++rep) {
    std::vector<int> test_union;
    bool any_omitted = false;
    for (const Fold& fold : plan.folds) {
      if (fold.repeat != rep) continue;
      any_omitted = any_omitted || !fold.omitted.empty();
      if (!traits.overlapping) {
        if (!detail::intersect_sorted(test_union, fold.test).empty())
          report.fail("repeat " + std::to_string(rep) +
                      ": test sets of distinct folds overlap");
      }
      test_union.insert(test_union.end(), fold.test.begin(), fold.test.end());
      std::sort(test_union.begin(), test_union.end());
      test_union.erase(std::unique(test_union.begin(), test_union.end()),
                       test_union.end());
    }
    if (!traits.overlapping && !any_omitted &&
        static_cast<int>(test_union.size()) != n)
      report.fail("repeat " + std::to_string(rep) +
                  ": union of test sets does not cover all rows");
  }

  return report;
}

}  // namespace stcv
