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
#include <stdexcept>
#include <string>
#include <vector>

#include "stcv/plan.hpp"
#include "stcv/rng.hpp"
#include "stcv/task.hpp"

namespace stcv::detail {

/// Shuffle 0..n_items-1 and deal round-robin into k folds; returned label
/// vector maps item -> fold (0-based). Fold sizes differ by at most one and
/// the first folds get the larger share.
inline std::vector<int> deal(int n_items, int k, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n_items));
  for (int i = 0; i < n_items; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<int> fold_of(static_cast<std::size_t>(n_items));
  for (int pos = 0; pos < n_items; ++pos)
    fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos % k;
  return fold_of;
}

/// Builds one repeat of leave-one-group-out folds from per-observation fold
/// labels (0-based, contiguous); train is the complement, nothing omitted.
inline std::vector<Fold> folds_from_labels(const std::vector<int>& fold_of, int k) {
  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) folds[static_cast<std::size_t>(f)].id = f + 1;
  for (int i = 0; i < static_cast<int>(fold_of.size()); ++i) {
    const int f = fold_of[static_cast<std::size_t>(i)];
    for (int g = 0; g < k; ++g) {
      auto& fold = folds[static_cast<std::size_t>(g)];
      if (g == f)
        fold.test.push_back(i);
      else
        fold.train.push_back(i);
    }
  }
  for (auto& fold : folds) {
    if (fold.test.empty()) throw std::logic_error("internal: empty test fold");
    if (fold.train.empty())
      throw std::invalid_argument("fold " + std::to_string(fold.id) +
                                  " would have an empty training set");
  }
  return folds;
}

/// Sorted distinct values of a label vector; the canonical level order used
/// before any shuffling.
template <typename T>
inline std::vector<T> sorted_levels(const std::vector<T>& v) {
  std::vector<T> levels(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

template <typename T>
inline std::map<T, int> level_index(const std::vector<T>& levels) {
  std::map<T, int> idx;
  for (int i = 0; i < static_cast<int>(levels.size()); ++i)
    idx[levels[static_cast<std::size_t>(i)]] = i;
  return idx;
}

inline ResamplingPlan single_repeat_plan(std::string method, ParamMap params,
                                         std::uint64_t seed, std::vector<Fold> folds) {
  ResamplingPlan plan;
  plan.method = std::move(method);
  plan.params = std::move(params);
  plan.seed = seed;
  plan.repeats = 1;
  plan.k_per_repeat = static_cast<int>(folds.size());
  plan.folds = std::move(folds);
  return plan;
}

inline int require_folds_at_least_2(int k) {
  if (k < 2) throw std::invalid_argument("folds must be at least 2");
  return k;
}

}  // namespace stcv::detail
