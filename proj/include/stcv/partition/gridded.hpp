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
#include <optional>
#include <utility>

#include "stcv/partition/common.hpp"

namespace stcv {

/// Rectangular tiling request. Exactly one of nsplit (rows, cols) or
/// dsplit (dx, dy side lengths); at most one of min_n / min_frac, which
/// trigger merging of small tiles into adjacent tiles.
struct TileSpec {
  std::optional<std::pair<int, int>> nsplit;
  std::optional<std::pair<double, double>> dsplit;
  double rotation_deg = 0.0;  // in [-90, 90)
  std::optional<int> min_n;
  std::optional<double> min_frac;
};

/// Square/rectangular block CV request. Exactly one of range (square side)
/// or rows_cols; checkerboard selection forces two folds.
struct BlockSpec {
  enum class Selection { random, systematic, checkerboard };
  std::optional<double> range;
  std::optional<std::pair<int, int>> rows_cols;
  int folds = 5;
  Selection selection = Selection::random;
};

namespace detail {

// Cells are numbered row-major from the top-left: row 0 holds the largest
// y interval, columns run left to right. Systematic fold patterns depend
// on this origin.
struct Grid {
  int rows = 1, cols = 1;
  double x0 = 0.0, y0 = 0.0;  // min corner
  double cell_w = 0.0, cell_h = 0.0;

  long cell_count() const { return static_cast<long>(rows) * cols; }

  // Half-open intervals [lo, hi) along each axis; the last interval is
  // closed so boundary maxima stay inside the grid.
  int col_of(double x) const {
    if (cell_w <= 0.0) return 0;
    const int c = static_cast<int>(std::floor((x - x0) / cell_w));
    return std::clamp(c, 0, cols - 1);
  }
  int row_of(double y) const {
    if (cell_h <= 0.0) return 0;
    const int from_bottom = std::clamp(
        static_cast<int>(std::floor((y - y0) / cell_h)), 0, rows - 1);
    return rows - 1 - from_bottom;
  }
  long cell_of(Point p) const {
    return static_cast<long>(row_of(p.y)) * cols + col_of(p.x);
  }
  BlockSet::Rect rect_of(long cell) const {
    const int row = static_cast<int>(cell / cols);
    const int col = static_cast<int>(cell % cols);
    const int from_bottom = rows - 1 - row;
    return {x0 + col * cell_w, y0 + from_bottom * cell_h,
            x0 + (col + 1) * cell_w, y0 + (from_bottom + 1) * cell_h};
  }
};

inline Grid grid_from_counts(const Bounds& b, int rows, int cols) {
  Grid g;
  g.rows = rows;
  g.cols = cols;
  g.x0 = b.xmin;
  g.y0 = b.ymin;
  g.cell_w = b.width() / cols;
  g.cell_h = b.height() / rows;
  return g;
}

inline Grid grid_from_cell_size(const Bounds& b, double dx, double dy) {
  Grid g;
  g.cols = std::max(1, static_cast<int>(std::ceil(b.width() / dx)));
  g.rows = std::max(1, static_cast<int>(std::ceil(b.height() / dy)));
  g.x0 = b.xmin;
  g.y0 = b.ymin;
  g.cell_w = dx;
  g.cell_h = dy;
  return g;
}

/// Nonempty cells in cell-id order become blocks 0..n_z-1.
inline BlockSet blocks_from_grid(const Grid& grid, const std::vector<Point>& pts) {
  std::map<long, int> block_of_cell;
  for (const Point& p : pts) block_of_cell.emplace(grid.cell_of(p), 0);
  int next = 0;
  for (auto& [cell, id] : block_of_cell) id = next++;

  BlockSet blocks;
  blocks.n_blocks = next;
  blocks.provenance = BlockSet::Provenance::geometric;
  blocks.block_of.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    blocks.block_of[i] = block_of_cell.at(grid.cell_of(pts[i]));
  blocks.geometry.resize(static_cast<std::size_t>(next));
  for (const auto& [cell, id] : block_of_cell)
    blocks.geometry[static_cast<std::size_t>(id)] = grid.rect_of(cell);
  return blocks;
}

}  // namespace detail

/// Plan plus the block structure it was derived from (for plotting).
struct BlockPartition {
  ResamplingPlan plan;
  BlockSet blocks;
};

/// Leave-one-tile-out: rectangular (optionally rotated) tiles over the
/// coordinate bounding box; empty tiles are dropped, and tiles smaller
/// than min_n (or min_frac*n) are merged into their largest-count
/// 4-neighbor, smallest tiles first, until none remain small.
inline BlockPartition spcv_tiles_blocks(const Task& task, const TileSpec& spec,
                                        std::uint64_t seed = 0) {
  if (spec.nsplit.has_value() == spec.dsplit.has_value())
    throw std::invalid_argument("tiles: exactly one of nsplit/dsplit required");
  if (spec.min_n && spec.min_frac)
    throw std::invalid_argument("tiles: at most one of min_n/min_frac");
  if (spec.rotation_deg < -90.0 || spec.rotation_deg >= 90.0)
    throw std::invalid_argument("tiles: rotation must lie in [-90, 90)");
  const int n = static_cast<int>(task.n());
  if (spec.min_n && *spec.min_n >= n)
    throw std::invalid_argument("tiles: min_n must be smaller than task size");

  // Points are inverse-rotated about the bounding-box centroid, gridded in
  // that frame, and labels carried back.
  const double theta = spec.rotation_deg * 3.14159265358979323846 / 180.0;
  const Point pivot = bounds_of(task.coords).center();
  std::vector<Point> pts = task.coords;
  if (theta != 0.0)
    for (Point& p : pts) p = rotate_about(p, pivot, -theta);

  const Bounds box = bounds_of(pts);
  detail::Grid grid;
  if (spec.nsplit) {
    const auto [rows, cols] = *spec.nsplit;
    if (rows < 1 || cols < 1) throw std::invalid_argument("tiles: nsplit must be positive");
    if (box.width() == 0.0 && box.height() == 0.0 && rows * cols > 1)
      throw std::invalid_argument("tiles: all points coincident");
    grid = detail::grid_from_counts(box, rows, cols);
  } else {
    const auto [dx, dy] = *spec.dsplit;
    if (dx <= 0.0 || dy <= 0.0) throw std::invalid_argument("tiles: dsplit must be positive");
    grid = detail::grid_from_cell_size(box, dx, dy);
  }

  // Initial tiles = nonempty cells; merging is tracked through the cell
  // owner map so a composite tile stays adjacent through all its cells.
  std::map<long, int> owner;  // cell -> tile index
  std::vector<long> tile_cell;
  for (const Point& p : pts) owner.emplace(grid.cell_of(p), 0);
  for (auto& [cell, idx] : owner) {
    idx = static_cast<int>(tile_cell.size());
    tile_cell.push_back(cell);
  }
  const int n_tiles = static_cast<int>(tile_cell.size());
  std::vector<std::vector<long>> cells_of(static_cast<std::size_t>(n_tiles));
  std::vector<int> count(static_cast<std::size_t>(n_tiles), 0);
  std::vector<bool> alive(static_cast<std::size_t>(n_tiles), true);
  for (int t = 0; t < n_tiles; ++t)
    cells_of[static_cast<std::size_t>(t)] = {tile_cell[static_cast<std::size_t>(t)]};
  for (const Point& p : pts) ++count[static_cast<std::size_t>(owner.at(grid.cell_of(p)))];

  const double threshold =
      spec.min_n ? static_cast<double>(*spec.min_n)
                 : (spec.min_frac ? *spec.min_frac * static_cast<double>(n) : 0.0);

  auto neighbors_of = [&](int t) {
    std::vector<int> found;
    for (long cell : cells_of[static_cast<std::size_t>(t)]) {
      const long row = cell / grid.cols, col = cell % grid.cols;
      const long adj[4][2] = {{row - 1, col}, {row + 1, col}, {row, col - 1}, {row, col + 1}};
      for (const auto& rc : adj) {
        if (rc[0] < 0 || rc[0] >= grid.rows || rc[1] < 0 || rc[1] >= grid.cols) continue;
        const auto it = owner.find(rc[0] * grid.cols + rc[1]);
        if (it != owner.end() && it->second != t) found.push_back(it->second);
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  };

  while (threshold > 0.0) {
    int small = -1;
    for (int t = 0; t < n_tiles; ++t) {
      const auto ts = static_cast<std::size_t>(t);
      if (!alive[ts] || static_cast<double>(count[ts]) >= threshold) continue;
      if (small < 0 || count[ts] < count[static_cast<std::size_t>(small)]) small = t;
    }
    if (small < 0) break;
    int alive_count = 0;
    for (int t = 0; t < n_tiles; ++t) alive_count += alive[static_cast<std::size_t>(t)];
    if (alive_count < 2)
      throw std::invalid_argument("tiles: merging left a single tile");

    std::vector<int> cands = neighbors_of(small);
    if (cands.empty()) {
      // No 4-neighbor exists (isolated tile); fall back to any alive tile.
      for (int t = 0; t < n_tiles; ++t)
        if (alive[static_cast<std::size_t>(t)] && t != small) cands.push_back(t);
    }
    int target = cands.front();
    for (int t : cands)
      if (count[static_cast<std::size_t>(t)] > count[static_cast<std::size_t>(target)])
        target = t;

    auto& src = cells_of[static_cast<std::size_t>(small)];
    for (long cell : src) owner[cell] = target;
    auto& dst = cells_of[static_cast<std::size_t>(target)];
    dst.insert(dst.end(), src.begin(), src.end());
    src.clear();
    count[static_cast<std::size_t>(target)] += count[static_cast<std::size_t>(small)];
    count[static_cast<std::size_t>(small)] = 0;
    alive[static_cast<std::size_t>(small)] = false;
  }

  // Surviving tiles in index order become the folds.
  std::vector<int> fold_of_tile(static_cast<std::size_t>(n_tiles), -1);
  int k = 0;
  for (int t = 0; t < n_tiles; ++t)
    if (alive[static_cast<std::size_t>(t)]) fold_of_tile[static_cast<std::size_t>(t)] = k++;
  if (k < 2) throw std::invalid_argument("tiles: fewer than 2 nonempty tiles");

  std::vector<int> fold_of(task.n());
  for (std::size_t i = 0; i < task.n(); ++i)
    fold_of[i] = fold_of_tile[static_cast<std::size_t>(owner.at(grid.cell_of(pts[i])))];

  BlockPartition out;
  out.blocks.n_blocks = k;
  out.blocks.provenance = BlockSet::Provenance::geometric;
  out.blocks.block_of = fold_of;
  out.blocks.rotation_deg = spec.rotation_deg;
  out.blocks.pivot = pivot;
  for (int t = 0; t < n_tiles; ++t)
    if (alive[static_cast<std::size_t>(t)])
      out.blocks.geometry.push_back(grid.rect_of(tile_cell[static_cast<std::size_t>(t)]));

  ParamMap params;
  if (spec.nsplit)
    params["nsplit"] = std::to_string(spec.nsplit->first) + "," +
                       std::to_string(spec.nsplit->second);
  else
    params["dsplit"] = format_double(spec.dsplit->first) + "," +
                       format_double(spec.dsplit->second);
  if (spec.rotation_deg != 0.0) params["rotation"] = format_double(spec.rotation_deg);
  if (spec.min_n) params["min_n"] = std::to_string(*spec.min_n);
  if (spec.min_frac) params["min_frac"] = format_double(*spec.min_frac);

  out.plan = detail::single_repeat_plan("spcv_tiles", std::move(params), seed,
                                        detail::folds_from_labels(fold_of, k));
  return out;
}

inline ResamplingPlan spcv_tiles(const Task& task, const TileSpec& spec,
                                 std::uint64_t seed = 0) {
  return spcv_tiles_blocks(task, spec, seed).plan;
}

/// CV at the block level over a square/rectangular grid. Nonempty blocks
/// are numbered row-major from the top-left; selection deals them into k
/// folds randomly, systematically (block b -> fold ((b-1) mod k)+1), or as
/// a two-fold checkerboard.
inline BlockPartition spcv_block_blocks(const Task& task, const BlockSpec& spec,
                                        std::uint64_t seed) {
  if (spec.range.has_value() == spec.rows_cols.has_value())
    throw std::invalid_argument("block: exactly one of range/rows_cols required");
  const bool checker = spec.selection == BlockSpec::Selection::checkerboard;
  const int k = checker ? 2 : spec.folds;
  detail::require_folds_at_least_2(k);

  const Bounds box = bounds_of(task.coords);
  detail::Grid grid;
  if (spec.range) {
    if (*spec.range <= 0.0) throw std::invalid_argument("block: range must be positive");
    grid = detail::grid_from_cell_size(box, *spec.range, *spec.range);
  } else {
    const auto [rows, cols] = *spec.rows_cols;
    if (rows < 1 || cols < 1) throw std::invalid_argument("block: rows/cols must be positive");
    grid = detail::grid_from_counts(box, rows, cols);
  }

  BlockPartition out;
  out.blocks = detail::blocks_from_grid(grid, task.coords);
  const int n_z = out.blocks.n_blocks;
  if (n_z < k)
    throw std::invalid_argument("block: only " + std::to_string(n_z) +
                                " nonempty blocks for " + std::to_string(k) + " folds");

  // Recover each block's grid cell to evaluate the checkerboard parity.
  std::map<long, int> cell_of_block;
  for (std::size_t i = 0; i < task.n(); ++i)
    cell_of_block.emplace(grid.cell_of(task.coords[i]), 0);
  {
    int next = 0;
    for (auto& [cell, id] : cell_of_block) id = next++;
  }

  std::vector<int> fold_of_block(static_cast<std::size_t>(n_z));
  std::string selection;
  if (spec.selection == BlockSpec::Selection::random) {
    selection = "random";
    Rng rng(seed);
    fold_of_block = detail::deal(n_z, k, rng);
  } else if (spec.selection == BlockSpec::Selection::systematic) {
    selection = "systematic";
    for (int b = 0; b < n_z; ++b) fold_of_block[static_cast<std::size_t>(b)] = b % k;
  } else {
    selection = "checkerboard";
    bool saw[2] = {false, false};
    for (const auto& [cell, id] : cell_of_block) {
      const int parity = static_cast<int>((cell / grid.cols + cell % grid.cols) % 2);
      fold_of_block[static_cast<std::size_t>(id)] = parity;
      saw[parity] = true;
    }
    if (!saw[0] || !saw[1])
      throw std::invalid_argument("block: checkerboard produced a single fold");
  }

  std::vector<int> fold_of(task.n());
  for (std::size_t i = 0; i < task.n(); ++i)
    fold_of[i] = fold_of_block[static_cast<std::size_t>(out.blocks.block_of[i])];

  ParamMap params{{"folds", std::to_string(k)}, {"selection", selection}};
  if (spec.range)
    params["range"] = format_double(*spec.range);
  else
    params["rows_cols"] = std::to_string(spec.rows_cols->first) + "," +
                          std::to_string(spec.rows_cols->second);
  out.plan = detail::single_repeat_plan("spcv_block", std::move(params), seed,
                                        detail::folds_from_labels(fold_of, k));
  return out;
}

inline ResamplingPlan spcv_block(const Task& task, const BlockSpec& spec, std::uint64_t seed) {
  return spcv_block_blocks(task, spec, seed).plan;
}

}  // namespace stcv
