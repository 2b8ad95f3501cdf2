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

/// Leave-location-out / leave-time-out / leave-location-and-time-out.
///
/// With only time_var, unique time keys are dealt into k folds and each
/// fold tests all observations at its time keys (LTO). With only
/// space_var, the same happens over location ids (LLO). With both, unique
/// locations and unique times are dealt independently from one seed
/// stream; fold i tests rows whose location AND time land in its deal, and
/// every row sharing a location or a time with the test set is omitted
/// from training (LLTO).
///
/// space_var / time_var must name the task's location and time columns.
inline ResamplingPlan sptcv_cstf(const Task& task, int k,
                                 const std::optional<std::string>& space_var,
                                 const std::optional<std::string>& time_var,
                                 std::uint64_t seed) {
  detail::require_folds_at_least_2(k);
  if (!space_var && !time_var)
    throw std::invalid_argument("sptcv_cstf: need space_var and/or time_var");
  if (space_var) {
    if (!task.location || !task.location_name || *task.location_name != *space_var)
      throw std::invalid_argument("sptcv_cstf: unknown space_var: " + *space_var);
  }
  if (time_var) {
    if (!task.time || !task.time_name || *task.time_name != *time_var)
      throw std::invalid_argument("sptcv_cstf: unknown time_var: " + *time_var);
  }

  const int n = static_cast<int>(task.n());
  Rng rng(seed);
  ParamMap params{{"folds", std::to_string(k)}};

  // LLO / LTO degenerate to grouped CV over the respective levels.
  if (space_var && !time_var) {
    params["space_var"] = *space_var;
    const auto levels = detail::sorted_levels(*task.location);
    if (k > static_cast<int>(levels.size()))
      throw std::invalid_argument("sptcv_cstf: folds exceed unique locations");
    const auto deal = detail::deal(static_cast<int>(levels.size()), k, rng);
    const auto index = detail::level_index(levels);
    std::vector<int> fold_of(task.n());
    for (std::size_t i = 0; i < task.n(); ++i)
      fold_of[i] = deal[static_cast<std::size_t>(index.at((*task.location)[i]))];
    return detail::single_repeat_plan("sptcv_cstf", std::move(params), seed,
                                      detail::folds_from_labels(fold_of, k));
  }
  if (time_var && !space_var) {
    params["time_var"] = *time_var;
    const auto levels = detail::sorted_levels(*task.time);
    if (k > static_cast<int>(levels.size()))
      throw std::invalid_argument("sptcv_cstf: folds exceed unique time points");
    const auto deal = detail::deal(static_cast<int>(levels.size()), k, rng);
    const auto index = detail::level_index(levels);
    std::vector<int> fold_of(task.n());
    for (std::size_t i = 0; i < task.n(); ++i)
      fold_of[i] = deal[static_cast<std::size_t>(index.at((*task.time)[i]))];
    return detail::single_repeat_plan("sptcv_cstf", std::move(params), seed,
                                      detail::folds_from_labels(fold_of, k));
  }

  params["space_var"] = *space_var;
  params["time_var"] = *time_var;
  const auto loc_levels = detail::sorted_levels(*task.location);
  const auto time_levels = detail::sorted_levels(*task.time);
  if (k > static_cast<int>(loc_levels.size()) ||
      k > static_cast<int>(time_levels.size()))
    throw std::invalid_argument("sptcv_cstf: folds exceed unique locations or times");
  const auto loc_deal = detail::deal(static_cast<int>(loc_levels.size()), k, rng);
  const auto time_deal = detail::deal(static_cast<int>(time_levels.size()), k, rng);
  const auto loc_index = detail::level_index(loc_levels);
  const auto time_index = detail::level_index(time_levels);

  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) folds[static_cast<std::size_t>(f)].id = f + 1;
  for (int i = 0; i < n; ++i) {
    const int lf = loc_deal[static_cast<std::size_t>(
        loc_index.at((*task.location)[static_cast<std::size_t>(i)]))];
    const int tf = time_deal[static_cast<std::size_t>(
        time_index.at((*task.time)[static_cast<std::size_t>(i)]))];
    for (int f = 0; f < k; ++f) {
      auto& fold = folds[static_cast<std::size_t>(f)];
      if (lf == f && tf == f)
        fold.test.push_back(i);
      else if (lf != f && tf != f)
        fold.train.push_back(i);
      else
        fold.omitted.push_back(i);
    }
  }
  for (const auto& fold : folds) {
    if (fold.test.empty())
      throw std::invalid_argument("sptcv_cstf: fold " + std::to_string(fold.id) +
                                  " has an empty test set");
    if (fold.train.empty())
      throw std::invalid_argument("sptcv_cstf: fold " + std::to_string(fold.id) +
                                  " has an empty training set");
  }
  return detail::single_repeat_plan("sptcv_cstf", std::move(params), seed,
                                    std::move(folds));
}

}  // namespace stcv
