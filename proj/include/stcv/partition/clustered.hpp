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

#include "stcv/kmeans.hpp"
#include "stcv/partition/common.hpp"

namespace stcv::detail {

/// Relabel clusters so that fold 1 contains observation row 0's cluster,
/// fold numbering follows the smallest member index of each cluster.
inline std::vector<int> canonical_cluster_folds(const std::vector<int>& assignment, int k) {
  std::vector<int> first(static_cast<std::size_t>(k), -1);
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i) {
    const auto c = static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)]);
    if (first[c] < 0) first[c] = i;
  }
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) order[static_cast<std::size_t>(c)] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return first[static_cast<std::size_t>(a)] <
                                       first[static_cast<std::size_t>(b)]; });
  std::vector<int> new_label(static_cast<std::size_t>(k));
  for (int pos = 0; pos < k; ++pos)
    new_label[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
  std::vector<int> folds(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i)
    folds[i] = new_label[static_cast<std::size_t>(assignment[i])];
  return folds;
}

}  // namespace stcv::detail

namespace stcv {

/// Leave-one-block-out CV with blocks from k-means clustering of the
/// coordinates: exactly k spatial partitions, each one a test fold.
inline ResamplingPlan spcv_coords(const Task& task, int k, std::uint64_t seed,
                                  const KMeansOptions& opts = {}) {
  detail::require_folds_at_least_2(k);
  std::vector<std::vector<double>> pts(task.n());
  for (std::size_t i = 0; i < task.n(); ++i)
    pts[i] = {task.coords[i].x, task.coords[i].y};
  const KMeansResult km = kmeans(pts, k, seed, opts);
  const auto fold_of = detail::canonical_cluster_folds(km.assignment, k);
  return detail::single_repeat_plan("spcv_coords", {{"folds", std::to_string(k)}},
                                    seed, detail::folds_from_labels(fold_of, k));
}

/// Environmental blocking: k-means in (standardized) feature space. Folds
/// carry no spatial contiguity guarantee.
inline ResamplingPlan spcv_env(const Task& task, const std::vector<std::string>& feature_names,
                               int k, std::uint64_t seed, const KMeansOptions& opts = {}) {
  detail::require_folds_at_least_2(k);
  if (feature_names.empty()) throw std::invalid_argument("spcv_env: no features named");
  std::vector<std::vector<double>> cols;
  for (const auto& name : feature_names) cols.push_back(task.feature(name));
  const Standardized st = standardize(cols, feature_names);

  std::vector<std::vector<double>> pts(task.n(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < task.n(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) pts[i][j] = st.columns[j][i];
  const KMeansResult km = kmeans(pts, k, seed, opts);
  const auto fold_of = detail::canonical_cluster_folds(km.assignment, k);

  std::string joined;
  for (const auto& name : feature_names) {
    if (!joined.empty()) joined += ",";
    joined += name;
  }
  return detail::single_repeat_plan(
      "spcv_env", {{"folds", std::to_string(k)}, {"features", joined}}, seed,
      detail::folds_from_labels(fold_of, k));
}

}  // namespace stcv
