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
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcv/rng.hpp"

namespace stcv {

struct KMeansOptions {
  int max_iter = 100;
  double tol = 1e-8;  // max center displacement that counts as converged
  int restarts = 10;
};

struct KMeansResult {
  std::vector<int> assignment;               // 0-based cluster label per point
  std::vector<std::vector<double>> centers;  // k rows of d coordinates
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  // Per-restart SSE after every assignment step; traces[r] belongs to
  // restart r, the winning restart is `best_restart`.
  std::vector<std::vector<double>> traces;
  int best_restart = 0;
};

namespace detail {

inline double sq_dist_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

struct LloydRun {
  std::vector<int> assignment;
  std::vector<std::vector<double>> centers;
  double sse = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

inline std::vector<std::vector<double>> kmeanspp_init(
    const std::vector<std::vector<double>>& points, int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(points[rng.below(n)]);
  std::vector<double> d2(n);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = sq_dist_vec(points[i], centers[0]);
      for (std::size_t c = 1; c < centers.size(); ++c)
        best = std::min(best, sq_dist_vec(points[i], centers[c]));
      d2[i] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double r = rng.real01() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (r < acc) {
          pick = i;
          break;
        }
        pick = i;  // numeric slack: r may equal total
      }
    } else {
      pick = rng.below(n);
    }
    centers.push_back(points[pick]);
  }
  return centers;
}

// Nearest-center assignment (ties -> lowest center index); an empty
// cluster is repaired by reseeding on the point farthest from its own
// center and moving that point over directly, which keeps the SSE
// non-increasing.
inline void assign_with_repair(const std::vector<std::vector<double>>& points,
                               std::vector<std::vector<double>>& centers,
                               std::vector<int>& assignment) {
  const std::size_t n = points.size();
  const int k = static_cast<int>(centers.size());
  assignment.assign(n, 0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = sq_dist_vec(points[i], centers[0]);
    for (int c = 1; c < k; ++c) {
      const double d = sq_dist_vec(points[i], centers[static_cast<std::size_t>(c)]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assignment[i] = best;
    ++counts[static_cast<std::size_t>(best)];
  }
  for (int empty = 0; empty < k; ++empty) {
    if (counts[static_cast<std::size_t>(empty)] > 0) continue;
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (counts[static_cast<std::size_t>(assignment[i])] <= 1) continue;
      const double d =
          sq_dist_vec(points[i], centers[static_cast<std::size_t>(assignment[i])]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    centers[static_cast<std::size_t>(empty)] = points[far];
    --counts[static_cast<std::size_t>(assignment[far])];
    assignment[far] = empty;
    counts[static_cast<std::size_t>(empty)] = 1;
  }
}

inline double total_sse(const std::vector<std::vector<double>>& points,
                        const std::vector<std::vector<double>>& centers,
                        const std::vector<int>& assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    s += sq_dist_vec(points[i], centers[static_cast<std::size_t>(assignment[i])]);
  return s;
}

inline LloydRun lloyd(const std::vector<std::vector<double>>& points, int k,
                      std::uint64_t seed, const KMeansOptions& opts) {
  const std::size_t d = points[0].size();
  Rng rng(seed);
  LloydRun run;
  run.centers = kmeanspp_init(points, k, rng);
  assign_with_repair(points, run.centers, run.assignment);
  run.sse = total_sse(points, run.centers, run.assignment);
  run.trace.push_back(run.sse);

  for (int it = 1; it <= opts.max_iter; ++it) {
    std::vector<std::vector<double>> means(
        static_cast<std::size_t>(k), std::vector<double>(d, 0.0));
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = static_cast<std::size_t>(run.assignment[i]);
      for (std::size_t j = 0; j < d; ++j) means[c][j] += points[i][j];
      ++counts[c];
    }
    double move = 0.0;
    for (int c = 0; c < k; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      for (std::size_t j = 0; j < d; ++j) means[cc][j] /= counts[cc];
      move = std::max(move, std::sqrt(sq_dist_vec(means[cc], run.centers[cc])));
    }
    run.centers = std::move(means);
    assign_with_repair(points, run.centers, run.assignment);
    run.sse = total_sse(points, run.centers, run.assignment);
    run.trace.push_back(run.sse);
    run.iterations = it;
    if (move < opts.tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding and best-of-restarts selection.
/// Deterministic given (points, k, seed, opts); restart r draws from the
/// sub-stream derive_seed(seed, r), so restarts are order-independent.
inline KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                           std::uint64_t seed, const KMeansOptions& opts = {}) {
  if (points.empty()) throw std::invalid_argument("kmeans: no points");
  if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
  if (opts.tol <= 0.0) throw std::invalid_argument("kmeans: tol must be positive");
  const std::size_t d = points[0].size();
  std::set<std::vector<double>> distinct;
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("kmeans: ragged input");
    for (double v : p)
      if (!std::isfinite(v)) throw std::invalid_argument("kmeans: non-finite input");
    distinct.insert(p);
  }
  if (static_cast<std::size_t>(k) > distinct.size())
    throw std::invalid_argument("kmeans: k exceeds number of distinct points (" +
                                std::to_string(distinct.size()) + ")");

  KMeansResult result;
  result.sse = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    detail::LloydRun run =
        detail::lloyd(points, k, derive_seed(seed, static_cast<std::uint64_t>(r)), opts);
    result.traces.push_back(run.trace);
    if (run.sse < result.sse) {
      result.assignment = std::move(run.assignment);
      result.centers = std::move(run.centers);
      result.sse = run.sse;
      result.iterations = run.iterations;
      result.converged = run.converged;
      result.best_restart = r;
    }
  }
  return result;
}

/// Rescales each column to sample mean 0 and sample (n-1) standard
/// deviation 1. Errors on constant columns, naming the column.
struct Standardized {
  std::vector<std::vector<double>> columns;
  std::vector<double> means;
  std::vector<double> sds;
};

inline Standardized standardize(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names = {}) {
  Standardized out;
  out.columns.resize(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& col = columns[j];
    const std::size_t n = col.size();
    if (n < 2) throw std::invalid_argument("standardize: need at least 2 rows");
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
      const std::string name =
          j < names.size() ? names[j] : "column " + std::to_string(j + 1);
      throw std::invalid_argument("standardize: constant column: " + name);
    }
    out.means.push_back(mean);
    out.sds.push_back(sd);
    auto& s = out.columns[j];
    s.resize(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (col[i] - mean) / sd;
  }
  return out;
}

}  // namespace stcv
