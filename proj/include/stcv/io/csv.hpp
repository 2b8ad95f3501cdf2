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
#include <sstream>

#include "stcv/table.hpp"
#include "stcv/task.hpp"

namespace stcv::io {

/// Minimal RFC-4180 CSV: comma separator, optional double-quoted fields
/// with "" escapes, UTF-8, dot decimal. Parse failures carry the line
/// number.
inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty())
        throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                    ": quote inside unquoted field");
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted)
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

inline Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && line_no > 1) continue;
    const auto fields = split_csv_line(line, line_no);
    if (line_no == 1) {
      table.names = fields;
      table.columns.resize(fields.size());
      continue;
    }
    if (fields.size() != table.names.size())
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.names.size()) + " fields, got " +
                                  std::to_string(fields.size()));
    for (std::size_t j = 0; j < fields.size(); ++j) table.columns[j].push_back(fields[j]);
  }
  if (table.names.empty()) throw std::invalid_argument("csv: empty file");
  return table;
}

inline Table read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return read_csv(in);
}

inline Task load_task_csv(const std::string& path, const TaskSchema& schema) {
  return build_task(read_csv_file(path), schema);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

/// Serializes a task back to its CSV form: coordinates, response, role
/// columns, then features (coordinate copies are skipped when
/// coords_as_features is set). Doubles use the shortest lossless decimal
/// form so a reload is value-exact.
inline void save_task_csv(const Task& task, std::ostream& out) {
  std::vector<std::string> names = {task.x_name, task.y_name, task.response_name};
  if (task.time_name) names.push_back(*task.time_name);
  if (task.group_name) names.push_back(*task.group_name);
  if (task.location_name) names.push_back(*task.location_name);
  std::vector<std::size_t> feature_cols;
  for (std::size_t j = 0; j < task.feature_names.size(); ++j) {
    if (task.coords_as_features &&
        (task.feature_names[j] == task.x_name || task.feature_names[j] == task.y_name))
      continue;
    feature_cols.push_back(j);
    names.push_back(task.feature_names[j]);
  }

  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out << ',';
    out << csv_escape(names[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < task.n(); ++i) {
    out << format_double(task.coords[i].x) << ',' << format_double(task.coords[i].y) << ',';
    if (task.response_kind == ResponseKind::categorical)
      out << csv_escape(task.labels[i]);
    else
      out << format_double(task.values[i]);
    if (task.time) out << ',' << (*task.time)[i];
    if (task.group) out << ',' << csv_escape((*task.group)[i]);
    if (task.location) out << ',' << csv_escape((*task.location)[i]);
    for (std::size_t j : feature_cols) out << ',' << format_double(task.features[j][i]);
    out << '\n';
  }
}

inline void save_task_csv_file(const Task& task, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  save_task_csv(task, out);
}

/// Role map that reloads a CSV written by save_task_csv.
inline TaskSchema schema_of(const Task& task) {
  TaskSchema schema;
  schema.id = task.id;
  schema.response = task.response_name;
  schema.x = task.x_name;
  schema.y = task.y_name;
  schema.time = task.time_name;
  schema.group = task.group_name;
  schema.location = task.location_name;
  schema.positive_label = task.positive_label;
  schema.coords_as_features = task.coords_as_features;
  return schema;
}

}  // namespace stcv::io
