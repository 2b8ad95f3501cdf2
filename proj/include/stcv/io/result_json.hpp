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
#include <fstream>

#include <json.hpp>

#include "stcv/resample.hpp"

namespace stcv::io {

/// Result JSON schema:
///   {measure, aggregate, warnings, method, params{}, seed,
///    per_fold: [{repeat, fold, value, n_test}]}
/// Undefined fold values (and an all-undefined aggregate) serialize as
/// null.
inline nlohmann::ordered_json result_to_json(const EvaluationResult& result) {
  nlohmann::ordered_json doc;
  doc["measure"] = result.measure;
  if (std::isnan(result.aggregate))
    doc["aggregate"] = nullptr;
  else
    doc["aggregate"] = result.aggregate;
  doc["warnings"] = result.warnings;
  doc["method"] = result.method;
  doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : result.params) doc["params"][key] = value;
  doc["seed"] = result.seed;
  doc["per_fold"] = nlohmann::ordered_json::array();
  for (const FoldScore& fs : result.per_fold) {
    nlohmann::ordered_json f;
    f["repeat"] = fs.repeat;
    f["fold"] = fs.fold;
    if (fs.defined)
      f["value"] = fs.value;
    else
      f["value"] = nullptr;
    f["n_test"] = fs.n_test;
    doc["per_fold"].push_back(std::move(f));
  }
  return doc;
}

inline std::string result_to_string(const EvaluationResult& result) {
  return result_to_json(result).dump(2) + "\n";
}

inline void save_result(const EvaluationResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << result_to_string(result);
}

}  // namespace stcv::io
