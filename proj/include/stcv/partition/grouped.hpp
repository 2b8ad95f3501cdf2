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

#include "stcv/partition/common.hpp"

namespace stcv {

/// Plain random k-fold CV: rows are shuffled and dealt into k folds whose
/// sizes differ by at most one. k = n gives leave-one-out.
inline ResamplingPlan random_cv(const Task& task, int k, std::uint64_t seed) {
  detail::require_folds_at_least_2(k);
  const int n = static_cast<int>(task.n());
  if (k > n) throw std::invalid_argument("folds exceed number of observations");
  Rng rng(seed);
  const std::vector<int> fold_of = detail::deal(n, k, rng);
  return detail::single_repeat_plan("cv", {{"folds", std::to_string(k)}}, seed,
                                    detail::folds_from_labels(fold_of, k));
}

/// CV at the group level: whole groups are shuffled and dealt into k folds,
/// so no group is ever split across test and train.
inline ResamplingPlan grouped_cv(const Task& task, int k, std::uint64_t seed) {
  detail::require_folds_at_least_2(k);
  if (!task.group) throw std::invalid_argument("task has no group role");
  const auto levels = detail::sorted_levels(*task.group);
  const int n_groups = static_cast<int>(levels.size());
  if (k > n_groups)
    throw std::invalid_argument("folds exceed number of groups (" +
                                std::to_string(n_groups) + ")");
  Rng rng(seed);
  const std::vector<int> group_fold = detail::deal(n_groups, k, rng);
  const auto index = detail::level_index(levels);

  std::vector<int> fold_of(task.n());
  for (std::size_t i = 0; i < task.n(); ++i)
    fold_of[i] = group_fold[static_cast<std::size_t>(index.at((*task.group)[i]))];
  return detail::single_repeat_plan("cv", {{"folds", std::to_string(k)}}, seed,
                                    detail::folds_from_labels(fold_of, k));
}

/// User-defined partitions: one fold per level of `factor`, in
/// lexicographic level order.
inline ResamplingPlan custom_cv(const Task& task, const std::vector<std::string>& factor) {
  if (factor.size() != task.n())
    throw std::invalid_argument("factor length does not match task size");
  const auto levels = detail::sorted_levels(factor);
  if (levels.size() < 2)
    throw std::invalid_argument("custom_cv needs at least 2 factor levels");
  const auto index = detail::level_index(levels);
  std::vector<int> fold_of(task.n());
  for (std::size_t i = 0; i < task.n(); ++i) fold_of[i] = index.at(factor[i]);
  return detail::single_repeat_plan(
      "custom_cv", {{"levels", std::to_string(levels.size())}}, 0,
      detail::folds_from_labels(fold_of, static_cast<int>(levels.size())));
}

}  // namespace stcv
