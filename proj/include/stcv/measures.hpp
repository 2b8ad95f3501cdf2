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
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace stcv {

enum class MeasureId { auroc, misclassification, rmse };

inline MeasureId measure_from_string(const std::string& s) {
  if (s == "auroc") return MeasureId::auroc;
  if (s == "misclassification") return MeasureId::misclassification;
  if (s == "rmse") return MeasureId::rmse;
  throw std::invalid_argument("unknown measure: " + s);
}

inline std::string measure_name(MeasureId m) {
  switch (m) {
    case MeasureId::auroc: return "auroc";
    case MeasureId::misclassification: return "misclassification";
    default: return "rmse";
  }
}

inline bool measure_maximize(MeasureId m) { return m == MeasureId::auroc; }

/// Area under the ROC curve by the rank-sum (Mann-Whitney) formulation:
/// the fraction of (positive, negative) score pairs ranked concordantly,
/// ties counted half. Requires both classes present.
inline double auroc(const std::vector<double>& scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size())
    throw std::invalid_argument("auroc: scores/labels length mismatch");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (bool p : positive) n_pos += p;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("auroc: both classes must be present");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Midranks over tie groups; the positive ranks sum to the U statistic.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t)
      if (positive[order[t]]) rank_sum_pos += midrank;
    i = j + 1;
  }
  const double u = rank_sum_pos - static_cast<double>(n_pos) *
                                      (static_cast<double>(n_pos) + 1.0) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

/// Fraction of label mismatches.
inline double misclassification(const std::vector<std::string>& predicted,
                                const std::vector<std::string>& truth) {
  if (predicted.size() != truth.size() || truth.empty())
    throw std::invalid_argument("misclassification: bad input lengths");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predicted[i] != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

inline double rmse(const std::vector<double>& predicted, const std::vector<double>& truth) {
  if (predicted.size() != truth.size() || truth.empty())
    throw std::invalid_argument("rmse: bad input lengths");
  double ss = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = predicted[i] - truth[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(truth.size()));
}

}  // namespace stcv
