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

#include <limits>
#include <optional>

#include "stcv/learners.hpp"
#include "stcv/measures.hpp"
#include "stcv/partition/registry.hpp"
#include "stcv/plan.hpp"

namespace stcv {

struct FoldScore {
  int repeat = 1;
  int fold = 1;
  double value = std::numeric_limits<double>::quiet_NaN();
  int n_test = 0;
  bool defined = false;  // false: skipped (e.g. single-class AUROC test set)
};

/// Per-fold measure values and their mean, the CV performance estimate.
/// Undefined folds are counted in `warnings` and excluded from the mean.
struct EvaluationResult {
  std::string measure;
  double aggregate = std::numeric_limits<double>::quiet_NaN();
  int warnings = 0;
  std::vector<FoldScore> per_fold;
  // Plan echo.
  std::string method;
  ParamMap params;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::optional<double> score_predictions(const Task& task,
                                               const std::vector<int>& test_rows,
                                               const Predictions& preds, MeasureId measure) {
  if (measure == MeasureId::rmse) {
    if (task.response_kind != ResponseKind::numeric)
      throw std::invalid_argument("rmse needs a numeric response");
    std::vector<double> truth(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i)
      truth[i] = task.values[static_cast<std::size_t>(test_rows[i])];
    return rmse(preds.score, truth);
  }
  if (task.response_kind != ResponseKind::categorical)
    throw std::invalid_argument(measure_name(measure) + " needs a categorical response");
  if (measure == MeasureId::misclassification) {
    std::vector<std::string> truth(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i)
      truth[i] = task.labels[static_cast<std::size_t>(test_rows[i])];
    return misclassification(preds.label, truth);
  }
  const std::string positive = positive_class(task);
  std::vector<bool> truth(test_rows.size());
  bool any_pos = false, any_neg = false;
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    truth[i] = task.labels[static_cast<std::size_t>(test_rows[i])] == positive;
    (truth[i] ? any_pos : any_neg) = true;
  }
  if (!any_pos || !any_neg) return std::nullopt;  // AUROC undefined
  return auroc(preds.score, truth);
}

inline void finish_aggregate(EvaluationResult& result) {
  double sum = 0.0;
  int defined = 0;
  for (const auto& fs : result.per_fold) {
    if (!fs.defined) continue;
    sum += fs.value;
    ++defined;
  }
  if (defined > 0) result.aggregate = sum / defined;
}

}  // namespace detail

/// The k-fold CV estimator: train on each fold's training set, score its
/// test set, and average the fold values across all repeats. Omitted rows
/// are used on neither side.
inline EvaluationResult resample(const Task& task, const Learner& learner,
                                 const ResamplingPlan& plan, MeasureId measure) {
  const ValidationReport report = validate_plan(plan, task);
  if (!report.pass)
    throw std::invalid_argument("plan/task mismatch: " + report.violations.front());

  EvaluationResult result;
  result.measure = measure_name(measure);
  result.method = plan.method;
  result.params = plan.params;
  result.seed = plan.seed;

  for (const Fold& fold : plan.folds) {
    if (!detail::intersect_sorted(fold.test, fold.train).empty())
      throw std::logic_error("leakage: test row in training set");
    const Model model = train(learner, task, fold.train);
    const Predictions preds = predict(model, task, fold.test);
    const auto value = detail::score_predictions(task, fold.test, preds, measure);

    FoldScore fs;
    fs.repeat = fold.repeat;
    fs.fold = fold.id;
    fs.n_test = static_cast<int>(fold.test.size());
    if (value) {
      fs.value = *value;
      fs.defined = true;
    } else {
      ++result.warnings;
    }
    result.per_fold.push_back(fs);
  }
  detail::finish_aggregate(result);
  return result;
}

/// Nested CV result: the outer estimate plus the grid index chosen on each
/// outer fold.
struct NestedResult {
  EvaluationResult outer;
  std::vector<int> chosen;  // grid index per outer fold
};

/// Hyperparameter tuning with an inner CV per outer fold: the inner method
/// is instantiated on the outer training rows, every grid point is
/// evaluated on it, the winner (ties -> first in grid order) is refit on
/// the full outer training set and scored on the outer test set.
inline NestedResult nested_resample(const Task& task, const std::vector<Learner>& grid,
                                    const std::string& inner_method,
                                    const ParamMap& inner_params, const ResamplingPlan& outer,
                                    MeasureId measure) {
  if (grid.empty()) throw std::invalid_argument("nested_resample: empty grid");
  const ValidationReport report = validate_plan(outer, task);
  if (!report.pass)
    throw std::invalid_argument("plan/task mismatch: " + report.violations.front());

  NestedResult nested;
  nested.outer.measure = measure_name(measure);
  nested.outer.method = outer.method;
  nested.outer.params = outer.params;
  nested.outer.seed = outer.seed;
  const bool maximize = measure_maximize(measure);

  int fold_counter = 0;
  for (const Fold& fold : outer.folds) {
    const Task inner_task = subset_task(task, fold.train);
    const std::uint64_t inner_seed =
        derive_seed(outer.seed, 0x10000u + static_cast<std::uint64_t>(fold_counter));
    ++fold_counter;
    const ResamplingPlan inner_plan = make_plan(inner_task, inner_method, inner_params, inner_seed);

    int best = 0;
    double best_value = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const EvaluationResult inner =
          resample(inner_task, grid[g], inner_plan, measure);
      if (std::isnan(inner.aggregate)) continue;
      if (std::isnan(best_value) || (maximize ? inner.aggregate > best_value
                                              : inner.aggregate < best_value)) {
        best = static_cast<int>(g);
        best_value = inner.aggregate;
      }
    }
    nested.chosen.push_back(best);

    const Model model = train(grid[static_cast<std::size_t>(best)], task, fold.train);
    const Predictions preds = predict(model, task, fold.test);
    const auto value = detail::score_predictions(task, fold.test, preds, measure);

    FoldScore fs;
    fs.repeat = fold.repeat;
    fs.fold = fold.id;
    fs.n_test = static_cast<int>(fold.test.size());
    if (value) {
      fs.value = *value;
      fs.defined = true;
    } else {
      ++nested.outer.warnings;
    }
    nested.outer.per_fold.push_back(fs);
  }
  detail::finish_aggregate(nested.outer);
  return nested;
}

}  // namespace stcv
