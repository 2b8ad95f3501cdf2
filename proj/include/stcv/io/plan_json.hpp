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

#include "stcv/plan.hpp"

namespace stcv::io {

/// Plan JSON schema:
///   {method, params{}, seed, repeats, k_per_repeat,
///    folds: [{repeat, id, test[], train[], omitted[]}]}
/// Row indices are 1-based on disk (0-based in memory), arrays sorted
/// ascending. Output is byte-stable for identical plans.
inline nlohmann::ordered_json plan_to_json(const ResamplingPlan& plan) {
  nlohmann::ordered_json doc;
  doc["method"] = plan.method;
  doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : plan.params) doc["params"][key] = value;
  doc["seed"] = plan.seed;
  doc["repeats"] = plan.repeats;
  doc["k_per_repeat"] = plan.k_per_repeat;
  doc["folds"] = nlohmann::ordered_json::array();
  auto one_based = [](const std::vector<int>& v) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + 1;
    return out;
  };
  for (const Fold& fold : plan.folds) {
    nlohmann::ordered_json f;
    f["repeat"] = fold.repeat;
    f["id"] = fold.id;
    f["test"] = one_based(fold.test);
    f["train"] = one_based(fold.train);
    f["omitted"] = one_based(fold.omitted);
    doc["folds"].push_back(std::move(f));
  }
  return doc;
}

inline std::string plan_to_string(const ResamplingPlan& plan) {
  return plan_to_json(plan).dump(2) + "\n";
}

inline void save_plan(const ResamplingPlan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << plan_to_string(plan);
}

inline ResamplingPlan plan_from_json(const nlohmann::json& doc) {
  ResamplingPlan plan;
  plan.method = doc.at("method").get<std::string>();
  if (doc.contains("params"))
    for (auto it = doc.at("params").begin(); it != doc.at("params").end(); ++it)
      plan.params[it.key()] = it.value().is_string()
                                  ? it.value().get<std::string>()
                                  : it.value().dump();
  plan.seed = doc.value("seed", std::uint64_t{0});
  plan.repeats = doc.value("repeats", 1);
  plan.k_per_repeat = doc.value("k_per_repeat", 0);
  auto zero_based = [](const nlohmann::json& arr) {
    std::vector<int> out;
    for (const auto& v : arr) out.push_back(v.get<int>() - 1);
    return out;
  };
  for (const auto& f : doc.at("folds")) {
    Fold fold;
    fold.repeat = f.value("repeat", 1);
    fold.id = f.at("id").get<int>();
    fold.test = zero_based(f.at("test"));
    fold.train = zero_based(f.at("train"));
    if (f.contains("omitted")) fold.omitted = zero_based(f.at("omitted"));
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

inline ResamplingPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("plan parse error: " + std::string(e.what()));
  }
  return plan_from_json(doc);
}

}  // namespace stcv::io
