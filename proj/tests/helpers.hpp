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

#include <cmath>
#include <string>
#include <vector>

#include "stcv/rng.hpp"
#include "stcv/task.hpp"

namespace stcv::testing {

/// Randomized task with every optional role filled: binary response,
/// two features, locations (sometimes with exactly coincident
/// coordinates), time keys and groups. Deterministic per seed.
inline Task random_task(std::uint64_t seed, int n_min = 20, int n_max = 400) {
  Rng rng(derive_seed(seed, 0xA5u));
  const int n = static_cast<int>(rng.range_int(n_min, n_max));
  const int n_loc = std::max(8, n / 4);
  const int n_time = static_cast<int>(rng.range_int(5, 8));
  const int n_group = static_cast<int>(rng.range_int(5, 12));
  const bool snap_coords = rng.real01() < 0.3;

  std::vector<Point> loc_coords(static_cast<std::size_t>(n_loc));
  for (auto& p : loc_coords) p = {rng.real01() * 1000.0, rng.real01() * 1000.0};

  Task task;
  task.id = "random-" + std::to_string(seed);
  task.response_kind = ResponseKind::categorical;
  task.positive_label = "yes";
  task.feature_names = {"f1", "f2"};
  task.features.resize(2);
  task.time.emplace();
  task.group.emplace();
  task.location.emplace();
  task.time_name = "t";
  task.group_name = "g";
  task.location_name = "loc";

  const double p_pos = 0.3 + 0.4 * rng.real01();
  for (int i = 0; i < n; ++i) {
    const int loc = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_loc)));
    Point p = loc_coords[static_cast<std::size_t>(loc)];
    if (!snap_coords) {
      p.x += rng.normal() * 20.0;
      p.y += rng.normal() * 20.0;
    }
    task.coords.push_back(p);
    task.location->push_back("L" + std::to_string(loc));
    task.time->push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n_time))));
    task.group->push_back("G" + std::to_string(rng.below(static_cast<std::uint64_t>(n_group))));
    task.features[0].push_back(rng.normal());
    task.features[1].push_back(rng.normal());
    if (i == 0)
      task.labels.push_back("yes");
    else if (i == 1)
      task.labels.push_back("no");
    else
      task.labels.push_back(rng.real01() < p_pos ? "yes" : "no");
  }
  return task;
}

/// Largest pairwise distance.
inline double diameter(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
  return d;
}

/// Brute-force SSE-optimal 2-partition of up to ~20 points; returns one
/// side as a sorted index set. Independent oracle for k-means tests.
inline std::vector<int> best_two_partition(const std::vector<std::vector<double>>& points) {
  const int n = static_cast<int>(points.size());
  const std::size_t d = points[0].size();
  double best_sse = std::numeric_limits<double>::infinity();
  unsigned best_mask = 1;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<double> c0(d, 0.0), c1(d, 0.0);
    int n0 = 0, n1 = 0;
    for (int i = 0; i < n; ++i) {
      auto& c = (mask >> i) & 1u ? c1 : c0;
      ((mask >> i) & 1u ? n1 : n0) += 1;
      for (std::size_t j = 0; j < d; ++j)
        c[j] += points[static_cast<std::size_t>(i)][j];
    }
    for (std::size_t j = 0; j < d; ++j) {
      c0[j] /= n0;
      c1[j] /= n1;
    }
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& c = (mask >> i) & 1u ? c1 : c0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = points[static_cast<std::size_t>(i)][j] - c[j];
        sse += diff * diff;
      }
    }
    if (sse < best_sse) {
      best_sse = sse;
      best_mask = mask;
    }
  }
  std::vector<int> side;
  for (int i = 0; i < n; ++i)
    if ((best_mask >> i) & 1u) side.push_back(i);
  // Canonical orientation: the side containing point 0.
  if (side.empty() || side.front() != 0) {
    std::vector<int> other;
    for (int i = 0; i < n; ++i)
      if (!((best_mask >> i) & 1u)) other.push_back(i);
    return other;
  }
  return side;
}

/// Pair-counting AUROC: concordant pairs plus half the ties, over all
/// (positive, negative) pairs. Independent oracle.
inline double auroc_pair_counting(const std::vector<double>& scores,
                                  const std::vector<bool>& positive) {
  double num = 0.0;
  long pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      ++pairs;
      if (scores[i] > scores[j])
        num += 1.0;
      else if (scores[i] == scores[j])
        num += 0.5;
    }
  }
  return num / pairs;
}

}  // namespace stcv::testing
