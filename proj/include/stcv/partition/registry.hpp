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

#include "stcv/partition/clustered.hpp"
#include "stcv/partition/gridded.hpp"
#include "stcv/partition/grouped.hpp"
#include "stcv/partition/pointwise.hpp"
#include "stcv/partition/spacetime.hpp"

namespace stcv {

namespace detail {

inline std::string get_param(const ParamMap& params, const std::string& key,
                             const std::string& fallback = "") {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline int get_int(const ParamMap& params, const std::string& key, int fallback) {
  const std::string s = get_param(params, key);
  if (s.empty()) return fallback;
  const auto v = parse_int(s);
  if (!v) throw std::invalid_argument("parameter '" + key + "' is not an integer: " + s);
  return static_cast<int>(*v);
}

inline double get_double(const ParamMap& params, const std::string& key, double fallback) {
  const std::string s = get_param(params, key);
  if (s.empty()) return fallback;
  const auto v = parse_double(s);
  if (!v) throw std::invalid_argument("parameter '" + key + "' is not numeric: " + s);
  return *v;
}

inline bool get_bool(const ParamMap& params, const std::string& key, bool fallback) {
  const std::string s = get_param(params, key);
  if (s.empty()) return fallback;
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("parameter '" + key + "' is not boolean: " + s);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

/// Categorical rendering of a task column for custom_cv: a feature column
/// (values formatted as decimals), or the group/location column itself.
inline std::vector<std::string> factor_column(const Task& task, const std::string& name) {
  if (task.group_name && *task.group_name == name) return *task.group;
  if (task.location_name && *task.location_name == name) return *task.location;
  const auto& col = task.feature(name);
  std::vector<std::string> out(col.size());
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i] == std::floor(col[i]) && std::abs(col[i]) < 9.0e15)
      out[i] = std::to_string(static_cast<std::int64_t>(col[i]));
    else
      out[i] = format_double(col[i]);
  }
  return out;
}

inline ResamplingPlan make_single(const Task& task, const std::string& method,
                                  const ParamMap& params, std::uint64_t seed) {
  if (method == "cv") {
    const int k = get_int(params, "folds", 10);
    return task.group ? grouped_cv(task, k, seed) : random_cv(task, k, seed);
  }
  if (method == "spcv_buffer") {
    BufferSpec range{get_double(params, "the_range", 0.0)};
    const std::string dtype = get_param(params, "sp_data_type", "PA");
    if (dtype != "PA" && dtype != "PB")
      throw std::invalid_argument("sp_data_type must be PA or PB");
    return spcv_buffer(task, range,
                       dtype == "PA" ? SpDataType::presence_absence
                                     : SpDataType::presence_background,
                       get_bool(params, "add_bg", true));
  }
  if (method == "spcv_disc") {
    const int folds = get_int(params, "folds", static_cast<int>(task.n()));
    const double radius = get_double(params, "radius", 0.0);
    BufferSpec buffer{get_double(params, "buffer", 0.0)};
    return spcv_disc(task, folds, radius, buffer, get_bool(params, "replace", false), seed);
  }
  if (method == "spcv_coords")
    return spcv_coords(task, get_int(params, "folds", 5), seed);
  if (method == "spcv_tiles" || method == "spcv_block") {
    auto pair_of = [&](const std::string& key) {
      const auto parts = split_list(get_param(params, key));
      if (parts.size() != 2)
        throw std::invalid_argument("parameter '" + key + "' needs two comma-separated values");
      return parts;
    };
    if (method == "spcv_tiles") {
      TileSpec spec;
      if (params.count("nsplit")) {
        const auto p = pair_of("nsplit");
        spec.nsplit = {static_cast<int>(*parse_int(p[0])), static_cast<int>(*parse_int(p[1]))};
      }
      if (params.count("dsplit")) {
        const auto p = pair_of("dsplit");
        spec.dsplit = {*parse_double(p[0]), *parse_double(p[1])};
      }
      spec.rotation_deg = get_double(params, "rotation", 0.0);
      if (params.count("min_n")) spec.min_n = get_int(params, "min_n", 0);
      if (params.count("min_frac")) spec.min_frac = get_double(params, "min_frac", 0.0);
      return spcv_tiles(task, spec, seed);
    }
    BlockSpec spec;
    if (params.count("range")) spec.range = get_double(params, "range", 0.0);
    if (params.count("rows_cols")) {
      const auto p = pair_of("rows_cols");
      spec.rows_cols = {static_cast<int>(*parse_int(p[0])), static_cast<int>(*parse_int(p[1]))};
    }
    spec.folds = get_int(params, "folds", 5);
    const std::string sel = get_param(params, "selection", "random");
    if (sel == "random")
      spec.selection = BlockSpec::Selection::random;
    else if (sel == "systematic")
      spec.selection = BlockSpec::Selection::systematic;
    else if (sel == "checkerboard")
      spec.selection = BlockSpec::Selection::checkerboard;
    else
      throw std::invalid_argument("unknown selection: " + sel);
    return spcv_block(task, spec, seed);
  }
  if (method == "custom_cv") {
    const std::string col = get_param(params, "factor_col");
    if (col.empty()) throw std::invalid_argument("custom_cv needs parameter factor_col");
    ResamplingPlan plan = custom_cv(task, factor_column(task, col));
    plan.params["factor_col"] = col;
    return plan;
  }
  if (method == "spcv_env") {
    const std::string features = get_param(params, "features");
    if (features.empty()) throw std::invalid_argument("spcv_env needs parameter features");
    return spcv_env(task, split_list(features), get_int(params, "folds", 5), seed);
  }
  if (method == "sptcv_cstf") {
    std::optional<std::string> space_var, time_var;
    if (params.count("space_var")) space_var = get_param(params, "space_var");
    if (params.count("time_var")) time_var = get_param(params, "time_var");
    return sptcv_cstf(task, get_int(params, "folds", 5), space_var, time_var, seed);
  }
  throw std::invalid_argument("unknown resampling method: " + method);
}

}  // namespace detail

/// r independent instantiations of `method`, each drawn from the
/// sub-stream derive_seed(seed, repeat). Methods without a random
/// mechanism refuse r > 1 since every repetition would be identical.
inline ResamplingPlan repeat_plan(const Task& task, const std::string& method,
                                  const ParamMap& params, int repeats, std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (repeats > 1 && !method_traits(method, params).randomized)
    throw std::invalid_argument("deterministic method '" + method +
                                "' does not support repetition");
  ResamplingPlan plan;
  for (int rep = 1; rep <= repeats; ++rep) {
    ResamplingPlan once =
        detail::make_single(task, method, params, derive_seed(seed, static_cast<std::uint64_t>(rep)));
    if (rep == 1) {
      plan.method = once.method;
      plan.params = once.params;
      plan.k_per_repeat = once.k_per_repeat;
    } else if (once.k_per_repeat != plan.k_per_repeat) {
      throw std::logic_error("repetition changed the fold count");
    }
    for (Fold& fold : once.folds) {
      fold.repeat = rep;
      plan.folds.push_back(std::move(fold));
    }
  }
  plan.seed = seed;
  plan.repeats = repeats;
  return plan;
}

/// String-addressable plan construction; the entry point used by the CLI
/// and by nested resampling.
inline ResamplingPlan make_plan(const Task& task, const std::string& method,
                                const ParamMap& params, std::uint64_t seed,
                                int repeats = 1) {
  return repeat_plan(task, method, params, repeats, seed);
}

/// Block outlines for plotting, recomputed from a plan's method/params.
/// Only grid-based methods have geometry.
inline std::optional<BlockSet> block_geometry(const Task& task, const std::string& method,
                                              const ParamMap& params, std::uint64_t seed) {
  if (method == "spcv_block") {
    BlockSpec spec;
    if (params.count("range")) spec.range = detail::get_double(params, "range", 0.0);
    if (params.count("rows_cols")) {
      const auto p = detail::split_list(detail::get_param(params, "rows_cols"));
      spec.rows_cols = {static_cast<int>(*parse_int(p.at(0))),
                        static_cast<int>(*parse_int(p.at(1)))};
    }
    spec.folds = detail::get_int(params, "folds", 5);
    const std::string sel = detail::get_param(params, "selection", "random");
    spec.selection = sel == "systematic"     ? BlockSpec::Selection::systematic
                     : sel == "checkerboard" ? BlockSpec::Selection::checkerboard
                                             : BlockSpec::Selection::random;
    return spcv_block_blocks(task, spec, seed).blocks;
  }
  if (method == "spcv_tiles") {
    TileSpec spec;
    if (params.count("nsplit")) {
      const auto p = detail::split_list(detail::get_param(params, "nsplit"));
      spec.nsplit = {static_cast<int>(*parse_int(p.at(0))),
                     static_cast<int>(*parse_int(p.at(1)))};
    }
    if (params.count("dsplit")) {
      const auto p = detail::split_list(detail::get_param(params, "dsplit"));
      spec.dsplit = {*parse_double(p.at(0)), *parse_double(p.at(1))};
    }
    spec.rotation_deg = detail::get_double(params, "rotation", 0.0);
    if (params.count("min_n")) spec.min_n = detail::get_int(params, "min_n", 0);
    if (params.count("min_frac")) spec.min_frac = detail::get_double(params, "min_frac", 0.0);
    return spcv_tiles_blocks(task, spec, seed).blocks;
  }
  return std::nullopt;
}

}  // namespace stcv
