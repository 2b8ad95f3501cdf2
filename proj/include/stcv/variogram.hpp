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
#include <stdexcept>
#include <vector>

#include "stcv/geometry.hpp"

namespace stcv {

struct VariogramBin {
  double midpoint = 0.0;
  double gamma = 0.0;  // semivariance
  long pairs = 0;
  bool interpolated = false;
};

struct RangeEstimate {
  double range = 0.0;  // distance at which autocorrelation levels off
  double sill = 0.0;
  std::vector<VariogramBin> bins;
};

/// Empirical semivariogram over n_lags equal-width distance bins up to
/// `cutoff`, and the leveling-off distance: the midpoint of the first bin
/// whose semivariance reaches 95% of the sill (mean semivariance of the
/// upper half of the bins). Bins with fewer than 2 pairs are filled by
/// linear interpolation from their nearest estimated neighbors.
inline RangeEstimate estimate_autocorrelation_range(const std::vector<double>& values,
                                                    const std::vector<Point>& coords,
                                                    int n_lags, double cutoff) {
  const std::size_t n = values.size();
  if (coords.size() != n)
    throw std::invalid_argument("variogram: values/coords length mismatch");
  if (n < 30) throw std::invalid_argument("variogram: need at least 30 observations");
  if (n_lags < 2) throw std::invalid_argument("variogram: need at least 2 lag bins");
  if (!(cutoff > 0.0)) throw std::invalid_argument("variogram: cutoff must be positive");

  bool constant = true;
  for (std::size_t i = 1; i < n && constant; ++i) constant = values[i] == values[0];
  if (constant) throw std::invalid_argument("variogram: constant values");

  const double width = cutoff / n_lags;
  std::vector<double> sum(static_cast<std::size_t>(n_lags), 0.0);
  std::vector<long> count(static_cast<std::size_t>(n_lags), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist(coords[i], coords[j]);
      if (d > cutoff) continue;
      int b = static_cast<int>(std::floor(d / width));
      if (b >= n_lags) b = n_lags - 1;  // d == cutoff
      const double diff = values[i] - values[j];
      sum[static_cast<std::size_t>(b)] += diff * diff;
      ++count[static_cast<std::size_t>(b)];
    }
  }

  RangeEstimate out;
  out.bins.resize(static_cast<std::size_t>(n_lags));
  for (int b = 0; b < n_lags; ++b) {
    auto& bin = out.bins[static_cast<std::size_t>(b)];
    bin.midpoint = (b + 0.5) * width;
    bin.pairs = count[static_cast<std::size_t>(b)];
    if (bin.pairs >= 2)
      bin.gamma = sum[static_cast<std::size_t>(b)] / (2.0 * bin.pairs);
  }

  // Fill sparse bins from neighbors.
  int first_valid = -1;
  for (int b = 0; b < n_lags; ++b)
    if (out.bins[static_cast<std::size_t>(b)].pairs >= 2) {
      first_valid = b;
      break;
    }
  if (first_valid < 0)
    throw std::invalid_argument("variogram: no lag bin has 2 or more pairs");
  for (int b = 0; b < n_lags; ++b) {
    auto& bin = out.bins[static_cast<std::size_t>(b)];
    if (bin.pairs >= 2) continue;
    bin.interpolated = true;
    int lo = -1, hi = -1;
    for (int p = b - 1; p >= 0; --p)
      if (out.bins[static_cast<std::size_t>(p)].pairs >= 2) {
        lo = p;
        break;
      }
    for (int p = b + 1; p < n_lags; ++p)
      if (out.bins[static_cast<std::size_t>(p)].pairs >= 2) {
        hi = p;
        break;
      }
    if (lo >= 0 && hi >= 0) {
      const double w = static_cast<double>(b - lo) / (hi - lo);
      bin.gamma = (1.0 - w) * out.bins[static_cast<std::size_t>(lo)].gamma +
                  w * out.bins[static_cast<std::size_t>(hi)].gamma;
    } else if (lo >= 0) {
      bin.gamma = out.bins[static_cast<std::size_t>(lo)].gamma;
    } else {
      bin.gamma = out.bins[static_cast<std::size_t>(hi)].gamma;
    }
  }

  double sill = 0.0;
  const int half = n_lags / 2;
  for (int b = half; b < n_lags; ++b) sill += out.bins[static_cast<std::size_t>(b)].gamma;
  sill /= static_cast<double>(n_lags - half);
  out.sill = sill;

  out.range = out.bins.back().midpoint;
  for (int b = 0; b < n_lags; ++b) {
    if (out.bins[static_cast<std::size_t>(b)].gamma >= 0.95 * sill) {
      out.range = out.bins[static_cast<std::size_t>(b)].midpoint;
      break;
    }
  }
  return out;
}

}  // namespace stcv
