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

#include <Eigen/Dense>

#include "stcv/rng.hpp"
#include "stcv/task.hpp"

namespace stcv {

/// A Gaussian random field sample on uniform points in the unit square,
/// with exponential covariance C(d) = sigma2 * exp(-d / rho) plus a nugget
/// on the diagonal. The effective range (95% decorrelation) is about
/// 3 * rho.
struct SyntheticField {
  std::vector<Point> coords;
  std::vector<double> values;
  double sigma2 = 1.0;
  double rho = 0.1;
  double nugget = 0.0;
  std::uint64_t seed = 0;
};

/// Draws a field by dense symmetric factorization of the covariance
/// matrix; a 1e-10 diagonal jitter is retried once if the factorization
/// fails. n is capped at 3000.
inline SyntheticField sample_grf(int n, double sigma2, double rho, double nugget,
                                 std::uint64_t seed) {
  if (n < 1 || n > 3000) throw std::invalid_argument("sample_grf: n must be in [1, 3000]");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sample_grf: sigma2 must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("sample_grf: rho must be positive");
  if (nugget < 0.0) throw std::invalid_argument("sample_grf: nugget must be non-negative");

  SyntheticField field;
  field.sigma2 = sigma2;
  field.rho = rho;
  field.nugget = nugget;
  field.seed = seed;

  Rng rng(seed);
  field.coords.resize(static_cast<std::size_t>(n));
  for (auto& p : field.coords) {
    p.x = rng.real01();
    p.y = rng.real01();
  }

  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    cov(i, i) = sigma2 + nugget;
    for (int j = i + 1; j < n; ++j) {
      const double c = sigma2 * std::exp(-dist(field.coords[static_cast<std::size_t>(i)],
                                               field.coords[static_cast<std::size_t>(j)]) /
                                         rho);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    cov.diagonal().array() += 1e-10;
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("sample_grf: covariance not factorizable");
  }

  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = rng.normal();
  const Eigen::VectorXd v = llt.matrixL() * z;
  field.values.assign(v.data(), v.data() + n);
  return field;
}

/// Binary classification task from a field. The label is positive with
/// probability logistic(5 * value): label patches follow the field's
/// spatial structure while residual label noise keeps the best attainable
/// AUROC strictly below 1. Features are a "signal" column (field value
/// plus iid N(0, (0.5*sigma)^2) measurement noise) and
/// `p_extra_noise_features` response-independent nuisance columns, drawn
/// as smooth random wave fields over the coordinates with a much larger
/// amplitude than the signal, like the raw terrain covariates that
/// dominate nearest-neighbor metrics in geodata.
inline Task make_classification_task(const SyntheticField& field, int p_extra_noise_features,
                                     std::uint64_t seed) {
  if (p_extra_noise_features < 0)
    throw std::invalid_argument("make_classification_task: negative feature count");
  const std::size_t n = field.values.size();
  Rng rng(seed);

  Table table;
  table.names = {"x", "y", "class", "signal"};
  table.columns.resize(4);
  for (auto& c : table.columns) c.reserve(n);

  const double noise_sd = 0.5 * std::sqrt(field.sigma2);
  for (std::size_t i = 0; i < n; ++i) {
    table.columns[0].push_back(format_double(field.coords[i].x));
    table.columns[1].push_back(format_double(field.coords[i].y));
    const double p = 1.0 / (1.0 + std::exp(-5.0 * field.values[i]));
    table.columns[2].push_back(rng.real01() < p ? "pos" : "neg");
    table.columns[3].push_back(format_double(field.values[i] + noise_sd * rng.normal()));
  }
  // Smooth nuisance fields: sums of random plane waves with 0.5-2 cycles
  // across the unit square, scaled to (8*sigma)^2 marginal variance.
  const int n_waves = 8;
  const double two_pi = 6.283185307179586476925286766559;
  for (int j = 0; j < p_extra_noise_features; ++j) {
    std::vector<double> values(n, 0.0);
    for (int w = 0; w < n_waves; ++w) {
      const double angle = rng.real01() * two_pi;
      const double freq = (0.5 + 1.5 * rng.real01()) * two_pi;
      const double phase = rng.real01() * two_pi;
      const double wx = std::cos(angle) * freq;
      const double wy = std::sin(angle) * freq;
      for (std::size_t i = 0; i < n; ++i)
        values[i] += std::cos(wx * field.coords[i].x + wy * field.coords[i].y + phase);
    }
    const double scale = 8.0 * std::sqrt(field.sigma2) * std::sqrt(2.0 / n_waves);
    table.names.push_back("noise" + std::to_string(j + 1));
    auto& col = table.columns.emplace_back();
    col.reserve(n);
    for (std::size_t i = 0; i < n; ++i) col.push_back(format_double(scale * values[i]));
  }

  TaskSchema schema;
  schema.id = "synthetic";
  schema.response = "class";
  schema.x = "x";
  schema.y = "y";
  bool has_pos = false, has_neg = false;
  for (const auto& label : table.columns[2]) (label == "pos" ? has_pos : has_neg) = true;
  if (has_pos && has_neg) schema.positive_label = "pos";
  return build_task(table, schema);
}

}  // namespace stcv
