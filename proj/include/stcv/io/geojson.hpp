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

#include <fstream>

#include <json.hpp>

#include "stcv/table.hpp"
#include "stcv/task.hpp"

namespace stcv::io {

/// Reads a GeoJSON FeatureCollection of Point features into a table:
/// geometry becomes the "x"/"y" columns, properties become the remaining
/// columns. Every feature must carry the same property set.
inline Table read_geojson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("geojson parse error: " + std::string(e.what()));
  }
  if (doc.value("type", "") != "FeatureCollection")
    throw std::invalid_argument("geojson: expected a FeatureCollection");
  const auto& features = doc.at("features");
  if (!features.is_array() || features.empty())
    throw std::invalid_argument("geojson: no features");

  Table table;
  table.names = {"x", "y"};
  table.columns.resize(2);

  auto cell_string = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number()) return format_double(v.get<double>());
    throw std::invalid_argument("geojson: unsupported property type");
  };

  bool first = true;
  for (const auto& feature : features) {
    const auto& geometry = feature.at("geometry");
    if (geometry.value("type", "") != "Point")
      throw std::invalid_argument("geojson: points only, found " +
                                  geometry.value("type", "?") + " geometry");
    const auto& coords = geometry.at("coordinates");
    table.columns[0].push_back(format_double(coords.at(0).get<double>()));
    table.columns[1].push_back(format_double(coords.at(1).get<double>()));

    const auto& props = feature.at("properties");
    if (first) {
      for (auto it = props.begin(); it != props.end(); ++it) {
        if (it.key() == "x" || it.key() == "y")
          throw std::invalid_argument("geojson: property name '" + it.key() + "' is reserved");
        table.names.push_back(it.key());
        table.columns.emplace_back();
      }
      first = false;
    }
    std::size_t col = 2;
    for (auto it = props.begin(); it != props.end(); ++it, ++col) {
      if (col >= table.names.size() || table.names[col] != it.key())
        throw std::invalid_argument("geojson: mixed property schemas");
      table.columns[col].push_back(cell_string(it.value()));
    }
    if (col != table.names.size())
      throw std::invalid_argument("geojson: mixed property schemas");
  }
  return table;
}

/// GeoJSON ingestion; schema.x/schema.y must be "x"/"y" (the synthesized
/// geometry columns).
inline Task load_task_geojson(const std::string& path, TaskSchema schema) {
  schema.x = "x";
  schema.y = "y";
  return build_task(read_geojson(path), schema);
}

}  // namespace stcv::io
