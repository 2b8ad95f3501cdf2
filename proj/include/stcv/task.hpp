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
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stcv/geometry.hpp"
#include "stcv/table.hpp"

namespace stcv {

enum class ResponseKind { categorical, numeric };

enum class ColumnRole { group, time, location };

/// Observation table with modeling roles attached: a response, a numeric
/// feature matrix, planar coordinates, and optional time / group / location
/// identifiers. Immutable after construction; row indices are 0-based in
/// memory and 1-based in serialized artifacts.
struct Task {
  std::string id;

  ResponseKind response_kind = ResponseKind::categorical;
  std::vector<std::string> labels;  // categorical response (size n or empty)
  std::vector<double> values;       // numeric response (size n or empty)
  std::optional<std::string> positive_label;

  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;  // column-major: features[j][i]

  std::vector<Point> coords;
  bool coords_as_features = false;

  std::optional<std::vector<std::int64_t>> time;
  std::optional<std::vector<std::string>> group;
  std::optional<std::vector<std::string>> location;

  // Original column names, kept for serialization and error messages.
  std::string response_name = "response";
  std::string x_name = "x";
  std::string y_name = "y";
  std::optional<std::string> time_name, group_name, location_name;

  std::size_t n() const { return coords.size(); }
  std::size_t n_features() const { return features.size(); }

  int feature_index(const std::string& name) const {
    for (std::size_t j = 0; j < feature_names.size(); ++j)
      if (feature_names[j] == name) return static_cast<int>(j);
    return -1;
  }

  const std::vector<double>& feature(const std::string& name) const {
    const int j = feature_index(name);
    if (j < 0) throw std::invalid_argument("unknown feature: " + name);
    return features[static_cast<std::size_t>(j)];
  }

  /// Dense feature row (0-based), in feature_names order.
  std::vector<double> feature_row(std::size_t i) const {
    std::vector<double> row(features.size());
    for (std::size_t j = 0; j < features.size(); ++j) row[j] = features[j][i];
    return row;
  }

  /// Distinct response labels, sorted. Categorical tasks only.
  std::vector<std::string> classes() const {
    std::set<std::string> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
  }
};

/// Column-role map handed to build_task.
struct TaskSchema {
  std::string id = "task";
  std::string response;
  std::string x;
  std::string y;
  std::optional<std::string> time, group, location;
  std::optional<std::string> positive_label;
  bool coords_as_features = false;
  // Explicit feature subset; empty means "all remaining columns".
  std::vector<std::string> feature_columns;
};

namespace detail {

inline std::vector<double> numeric_column(const Table& t,
                                          const std::string& name) {
  const auto& raw = t.column(name);
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto v = parse_double(raw[i]);
    if (!v)
      throw std::invalid_argument("column '" + name + "' has non-numeric value '" +
                                  raw[i] + "' at row " + std::to_string(i + 1));
    if (!std::isfinite(*v))
      throw std::invalid_argument("column '" + name + "' has non-finite value at row " +
                                  std::to_string(i + 1));
    out[i] = *v;
  }
  return out;
}

inline bool column_is_numeric(const std::vector<std::string>& raw) {
  for (const auto& s : raw)
    if (!parse_double(s)) return false;
  return true;
}

}  // namespace detail

/// Builds a validated Task from a raw table and a role map.
///
/// The response is categorical when a positive label is given or when any
/// value fails numeric parsing; otherwise numeric. Coordinates join the
/// feature matrix only when schema.coords_as_features is set.
inline Task build_task(const Table& table, const TaskSchema& schema) {
  if (schema.response.empty()) throw std::invalid_argument("missing response column in schema");
  if (schema.x.empty() || schema.y.empty())
    throw std::invalid_argument("missing coordinate columns in schema");
  if (table.rows() < 2) throw std::invalid_argument("task needs at least 2 observations");
  if (table.column_index(schema.response) < 0)
    throw std::invalid_argument("missing response column: " + schema.response);

  Task task;
  task.id = schema.id;
  task.coords_as_features = schema.coords_as_features;
  task.response_name = schema.response;
  task.x_name = schema.x;
  task.y_name = schema.y;

  const std::size_t n = table.rows();

  const auto xs = detail::numeric_column(table, schema.x);
  const auto ys = detail::numeric_column(table, schema.y);
  task.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) task.coords[i] = {xs[i], ys[i]};

  const auto& resp = table.column(schema.response);
  if (schema.positive_label || !detail::column_is_numeric(resp)) {
    task.response_kind = ResponseKind::categorical;
    task.labels = resp;
    if (schema.positive_label) {
      bool found = false;
      for (const auto& l : resp) found = found || (l == *schema.positive_label);
      if (!found)
        throw std::invalid_argument("positive label '" + *schema.positive_label +
                                    "' does not occur in response");
      task.positive_label = schema.positive_label;
    }
  } else {
    task.response_kind = ResponseKind::numeric;
    task.values = detail::numeric_column(table, schema.response);
  }

  if (schema.time) {
    const auto& raw = table.column(*schema.time);
    std::vector<std::int64_t> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = parse_time_key(raw[i]);
      if (!k)
        throw std::invalid_argument("time column '" + *schema.time +
                                    "' has unparseable value '" + raw[i] + "'");
      keys[i] = *k;
    }
    task.time = std::move(keys);
    task.time_name = schema.time;
  }
  if (schema.group) {
    task.group = table.column(*schema.group);
    task.group_name = schema.group;
  }
  if (schema.location) {
    task.location = table.column(*schema.location);
    task.location_name = schema.location;
  }

  // Everything not claimed by a role becomes a feature.
  std::set<std::string> taken = {schema.response, schema.x, schema.y};
  if (schema.time) taken.insert(*schema.time);
  if (schema.group) taken.insert(*schema.group);
  if (schema.location) taken.insert(*schema.location);

  std::vector<std::string> feature_names;
  if (!schema.feature_columns.empty()) {
    feature_names = schema.feature_columns;
  } else {
    for (const auto& name : table.names)
      if (!taken.count(name)) feature_names.push_back(name);
  }
  for (const auto& name : feature_names) {
    task.feature_names.push_back(name);
    task.features.push_back(detail::numeric_column(table, name));
  }
  if (schema.coords_as_features) {
    task.feature_names.push_back(schema.x);
    task.features.push_back(xs);
    task.feature_names.push_back(schema.y);
    task.features.push_back(ys);
  }

  return task;
}

/// Reassigns an existing feature column to a grouping/time/location role,
/// removing it from the model features. Group and location values are the
/// canonical decimal rendering of the column; time values must be integral.
inline Task set_role(const Task& task, const std::string& column, ColumnRole role) {
  const int j = task.feature_index(column);
  if (j < 0) throw std::invalid_argument("unknown column: " + column);
  if (role == ColumnRole::group && task.group)
    throw std::invalid_argument("group role already assigned");
  if (role == ColumnRole::time && task.time)
    throw std::invalid_argument("time role already assigned");
  if (role == ColumnRole::location && task.location)
    throw std::invalid_argument("location role already assigned");

  Task out = task;
  const std::vector<double> col = out.features[static_cast<std::size_t>(j)];
  out.features.erase(out.features.begin() + j);
  out.feature_names.erase(out.feature_names.begin() + j);

  if (role == ColumnRole::time) {
    std::vector<std::int64_t> keys(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] != std::floor(col[i]))
        throw std::invalid_argument("time column '" + column + "' has non-integer value");
      keys[i] = static_cast<std::int64_t>(col[i]);
    }
    out.time = std::move(keys);
    out.time_name = column;
  } else {
    std::vector<std::string> cats(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == std::floor(col[i]) && std::abs(col[i]) < 9.0e15)
        cats[i] = std::to_string(static_cast<std::int64_t>(col[i]));
      else
        cats[i] = format_double(col[i]);
    }
    if (role == ColumnRole::group) {
      out.group = std::move(cats);
      out.group_name = column;
    } else {
      out.location = std::move(cats);
      out.location_name = column;
    }
  }
  return out;
}

/// Row subset (0-based indices), preserving roles and flags. Used to run an
/// inner resampling on an outer training set.
inline Task subset_task(const Task& task, const std::vector<int>& rows) {
  Task out;
  out.id = task.id;
  out.response_kind = task.response_kind;
  out.positive_label = task.positive_label;
  out.feature_names = task.feature_names;
  out.coords_as_features = task.coords_as_features;
  out.response_name = task.response_name;
  out.x_name = task.x_name;
  out.y_name = task.y_name;
  out.time_name = task.time_name;
  out.group_name = task.group_name;
  out.location_name = task.location_name;

  const std::size_t m = rows.size();
  auto take = [&](const auto& src, auto& dst) {
    dst.resize(m);
    for (std::size_t i = 0; i < m; ++i) dst[i] = src[static_cast<std::size_t>(rows[i])];
  };

  take(task.coords, out.coords);
  if (task.response_kind == ResponseKind::categorical)
    take(task.labels, out.labels);
  else
    take(task.values, out.values);
  out.features.resize(task.features.size());
  for (std::size_t j = 0; j < task.features.size(); ++j) take(task.features[j], out.features[j]);
  if (task.time) {
    out.time.emplace();
    take(*task.time, *out.time);
  }
  if (task.group) {
    out.group.emplace();
    take(*task.group, *out.group);
  }
  if (task.location) {
    out.location.emplace();
    take(*task.location, *out.location);
  }
  return out;
}

}  // namespace stcv
