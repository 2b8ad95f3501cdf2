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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stcv/task.hpp"

namespace stcv {

enum class PredictType { response, probability };

/// k-nearest-neighbor learner; Euclidean distance, distance ties broken by
/// row order. Classifies by neighbor vote, regresses by neighbor mean.
struct KnnLearner {
  int k_neighbors = 1;
  PredictType predict_type = PredictType::probability;
};

/// L2-regularized logistic regression fit by full-batch gradient descent.
struct LogisticLearner {
  double lambda = 1e-3;
  int epochs = 200;
  double learn_rate = 0.1;
  PredictType predict_type = PredictType::probability;
};

using Learner = std::variant<KnnLearner, LogisticLearner>;

inline std::string learner_name(const Learner& learner) {
  return std::holds_alternative<KnnLearner>(learner) ? "knn" : "logistic";
}

/// Predictions for a set of rows. `score` is the positive-class
/// probability for classification and the predicted value for regression;
/// `label` is filled for classification (score >= 0.5 -> positive).
struct Predictions {
  std::vector<double> score;
  std::vector<std::string> label;
};

/// The label treated as "positive": the task's positive_label when set,
/// otherwise the lexicographically largest class.
inline std::string positive_class(const Task& task) {
  if (task.positive_label) return *task.positive_label;
  const auto classes = task.classes();
  if (classes.empty()) throw std::invalid_argument("task has no categorical response");
  return classes.back();
}

namespace detail {

struct KnnModel {
  std::vector<std::vector<double>> rows;
  std::vector<double> targets;  // 0/1 for classification, value for regression
  int k = 1;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
};

}  // namespace detail

/// Fitted model; classification models score the task's positive class.
struct Model {
  std::variant<detail::KnnModel, detail::LogisticModel> impl;
  bool classification = true;
  std::string positive, negative;
  std::size_t n_features = 0;
};

inline Model train(const Learner& learner, const Task& task, const std::vector<int>& train_rows) {
  if (train_rows.empty()) throw std::invalid_argument("train: empty training set");
  const bool classification = task.response_kind == ResponseKind::categorical;

  Model model;
  model.classification = classification;
  model.n_features = task.n_features();

  std::vector<double> targets(train_rows.size());
  if (classification) {
    model.positive = positive_class(task);
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      const auto& label = task.labels[static_cast<std::size_t>(train_rows[i])];
      targets[i] = label == model.positive ? 1.0 : 0.0;
      if (label != model.positive) model.negative = label;
    }
    if (model.negative.empty()) {
      // Single-class training set; pick any other class of the task so
      // response-mode prediction still has a name for "not positive".
      for (const auto& c : task.classes())
        if (c != model.positive) model.negative = c;
    }
  } else {
    for (std::size_t i = 0; i < train_rows.size(); ++i)
      targets[i] = task.values[static_cast<std::size_t>(train_rows[i])];
  }

  if (std::holds_alternative<KnnLearner>(learner)) {
    const auto& spec = std::get<KnnLearner>(learner);
    if (spec.k_neighbors < 1) throw std::invalid_argument("knn: k_neighbors must be positive");
    if (spec.k_neighbors > static_cast<int>(train_rows.size()))
      throw std::invalid_argument("knn: k_neighbors exceeds training set size");
    detail::KnnModel knn;
    knn.k = spec.k_neighbors;
    knn.targets = std::move(targets);
    knn.rows.reserve(train_rows.size());
    for (int r : train_rows) knn.rows.push_back(task.feature_row(static_cast<std::size_t>(r)));
    model.impl = std::move(knn);
    return model;
  }

  const auto& spec = std::get<LogisticLearner>(learner);
  if (!classification)
    throw std::invalid_argument("logistic: requires a categorical response");
  bool has_pos = false, has_neg = false;
  for (double t : targets) (t > 0.5 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw std::invalid_argument("logistic: training set contains a single class");

  const std::size_t p = task.n_features();
  const std::size_t m = train_rows.size();
  detail::LogisticModel lm;
  lm.weights.assign(p, 0.0);
  std::vector<std::vector<double>> rows(m);
  for (std::size_t i = 0; i < m; ++i)
    rows[i] = task.feature_row(static_cast<std::size_t>(train_rows[i]));

  std::vector<double> grad(p);
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double z = lm.bias;
      for (std::size_t j = 0; j < p; ++j) z += lm.weights[j] * rows[i][j];
      const double err = 1.0 / (1.0 + std::exp(-z)) - targets[i];
      for (std::size_t j = 0; j < p; ++j) grad[j] += err * rows[i][j];
      grad_b += err;
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < p; ++j)
      lm.weights[j] -= spec.learn_rate * (grad[j] * inv_m + spec.lambda * lm.weights[j]);
    lm.bias -= spec.learn_rate * grad_b * inv_m;
  }
  model.impl = std::move(lm);
  return model;
}

inline Predictions predict(const Model& model, const Task& task, const std::vector<int>& test_rows) {
  if (task.n_features() != model.n_features)
    throw std::invalid_argument("predict: feature count mismatch");
  Predictions out;
  out.score.reserve(test_rows.size());

  for (int r : test_rows) {
    const std::vector<double> x = task.feature_row(static_cast<std::size_t>(r));
    double score = 0.0;
    if (std::holds_alternative<detail::KnnModel>(model.impl)) {
      const auto& knn = std::get<detail::KnnModel>(model.impl);
      // (squared distance, train row) pairs; partial sort keeps ties in
      // row order for determinism.
      std::vector<std::pair<double, std::size_t>> d(knn.rows.size());
      for (std::size_t i = 0; i < knn.rows.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
          const double diff = x[j] - knn.rows[i][j];
          s += diff * diff;
        }
        d[i] = {s, i};
      }
      std::partial_sort(d.begin(), d.begin() + knn.k, d.end());
      double sum = 0.0;
      for (int t = 0; t < knn.k; ++t) sum += knn.targets[d[static_cast<std::size_t>(t)].second];
      score = sum / knn.k;
    } else {
      const auto& lm = std::get<detail::LogisticModel>(model.impl);
      double z = lm.bias;
      for (std::size_t j = 0; j < x.size(); ++j) z += lm.weights[j] * x[j];
      score = 1.0 / (1.0 + std::exp(-z));
    }
    out.score.push_back(score);
    if (model.classification)
      out.label.push_back(score >= 0.5 ? model.positive : model.negative);
  }
  return out;
}

}  // namespace stcv
