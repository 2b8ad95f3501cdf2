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

/// Buffer distance in coordinate units. Everywhere in this library,
/// "within the buffer" means dist <= threshold, and such rows are excluded
/// from training (presence/background training keeps dist == threshold,
/// the one documented exception below).
struct BufferSpec {
  double distance = 0.0;
};

enum class SpDataType { presence_absence, presence_background };

/// Spatial leave-one-out with an exclusion buffer.
///
/// Presence/absence: one fold per observation i with test = {i},
/// train = rows farther than the_range from i, the buffer ring omitted.
/// Presence/background (positive_label marks presences): one fold per
/// presence; with add_bg the background inside the buffer joins the test
/// fold, otherwise the test fold is the single presence and training keeps
/// every row at distance >= the_range.
///
/// A fold whose buffer swallows every candidate training row cannot be
/// fitted and is dropped; at least one trainable fold must remain.
inline ResamplingPlan spcv_buffer(const Task& task, BufferSpec the_range,
                                  SpDataType sp_data_type, bool add_bg = true) {
  if (!(the_range.distance > 0.0))
    throw std::invalid_argument("the_range must be positive");
  const int n = static_cast<int>(task.n());
  const double range = the_range.distance;

  ParamMap params{{"the_range", format_double(range)},
                  {"sp_data_type",
                   sp_data_type == SpDataType::presence_absence ? "PA" : "PB"}};

  std::vector<Fold> folds;
  if (sp_data_type == SpDataType::presence_absence) {
    for (int i = 0; i < n; ++i) {
      Fold fold;
      fold.id = static_cast<int>(folds.size()) + 1;
      fold.test.push_back(i);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = dist(task.coords[static_cast<std::size_t>(i)],
                              task.coords[static_cast<std::size_t>(j)]);
        (d > range ? fold.train : fold.omitted).push_back(j);
      }
      if (fold.train.empty()) continue;  // untrainable fold
      folds.push_back(std::move(fold));
    }
    if (folds.empty())
      throw std::invalid_argument("the_range leaves no fold with training data");
  } else {
    if (task.response_kind != ResponseKind::categorical || !task.positive_label)
      throw std::invalid_argument(
          "presence/background mode requires a categorical response with a positive label");
    params["add_bg"] = add_bg ? "true" : "false";
    std::vector<bool> presence(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      presence[static_cast<std::size_t>(i)] =
          task.labels[static_cast<std::size_t>(i)] == *task.positive_label;

    int presences = 0;
    for (int i = 0; i < n; ++i) {
      if (!presence[static_cast<std::size_t>(i)]) continue;
      ++presences;
      Fold fold;
      fold.id = static_cast<int>(folds.size()) + 1;
      fold.test.push_back(i);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = dist(task.coords[static_cast<std::size_t>(i)],
                              task.coords[static_cast<std::size_t>(j)]);
        if (add_bg) {
          if (d > range)
            fold.train.push_back(j);
          else if (presence[static_cast<std::size_t>(j)])
            fold.omitted.push_back(j);
          else
            fold.test.push_back(j);
        } else {
          (d >= range ? fold.train : fold.omitted).push_back(j);
        }
      }
      std::sort(fold.test.begin(), fold.test.end());
      if (fold.train.empty()) continue;  // untrainable fold
      folds.push_back(std::move(fold));
    }
    if (presences == 0) throw std::invalid_argument("no presence observations in task");
    if (folds.empty())
      throw std::invalid_argument("the_range leaves no fold with training data");
  }
  return detail::single_repeat_plan("spcv_buffer", std::move(params), 0, std::move(folds));
}

/// Leave-one-disc-out: circular test regions of `radius` centered at
/// sampled observations, with an omitted buffer ring of width `buffer`.
/// Test discs may overlap between folds; a disc whose buffer swallows all
/// remaining rows is dropped.
inline ResamplingPlan spcv_disc(const Task& task, int folds, double radius,
                                BufferSpec buffer, bool replace, std::uint64_t seed) {
  const int n = static_cast<int>(task.n());
  if (folds < 1) throw std::invalid_argument("folds must be at least 1");
  if (folds > n && !replace)
    throw std::invalid_argument("folds exceed observations; use replace");
  if (radius < 0.0 || buffer.distance < 0.0)
    throw std::invalid_argument("radius and buffer must be non-negative");

  Rng rng(seed);
  std::vector<int> centers;
  if (replace) {
    centers.resize(static_cast<std::size_t>(folds));
    for (auto& c : centers) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  } else {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    centers.assign(order.begin(), order.begin() + folds);
  }

  const double outer = radius + buffer.distance;
  std::vector<Fold> out;
  for (int f = 0; f < folds; ++f) {
    const Point c = task.coords[static_cast<std::size_t>(centers[static_cast<std::size_t>(f)])];
    Fold fold;
    fold.id = static_cast<int>(out.size()) + 1;
    for (int j = 0; j < n; ++j) {
      const double d = dist(c, task.coords[static_cast<std::size_t>(j)]);
      if (d <= radius)
        fold.test.push_back(j);
      else if (d <= outer)
        fold.omitted.push_back(j);
      else
        fold.train.push_back(j);
    }
    if (fold.train.empty()) continue;  // disc plus buffer swallowed everything
    out.push_back(std::move(fold));
  }
  if (out.empty())
    throw std::invalid_argument("radius and buffer leave no disc with training data");
  return detail::single_repeat_plan(
      "spcv_disc",
      {{"folds", std::to_string(folds)},
       {"radius", format_double(radius)},
       {"buffer", format_double(buffer.distance)},
       {"replace", replace ? "true" : "false"}},
      seed, std::move(out));
}

}  // namespace stcv
