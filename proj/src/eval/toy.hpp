// Copyright 2026 the maxent-nn authors
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

// Two-input toy problems on the unit square, scored along the diagonal.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/params.hpp"
#include "eval/metrics.hpp"

namespace maxent::eval {

enum class ToyKind { regression, classification };

struct ToySpec {
  ToyKind kind = ToyKind::regression;
  std::size_t train_count = 500;
  std::size_t eval_count = 50;
  std::uint64_t seed = 7;

  /// Throws Error(invalid_input) for empty training or evaluation sets.
  void validate() const;
};

/// y1 = cos(x1 / 0.3) sin(x2), y2 = x1 x2.
std::array<double, 2> toy_regression_truth(double x1, double x2);
/// y1 = [x2 >= sin(5 pi x1)], y2 = [x2 >= cos(5 pi x1)].
std::array<double, 2> toy_classification_truth(double x1, double x2);

/// Euclidean distance from (x1, x2) to the part of the decision curve of
/// classification output `output` (0 or 1) that lies inside the unit square.
double decision_boundary_distance(int output, double x1, double x2);

struct ToyData {
  /// Row-major (x1, x2) pairs and (y1, y2) pairs.
  std::vector<double> train_x, train_y;
  std::vector<double> eval_x, eval_y;
};

/// Training inputs are drawn uniform in [0,1]^2 from Rng(seed), x1 then x2
/// per point; evaluation inputs sit at x1 = x2 = i / (eval_count - 1).
ToyData make_toy_data(const ToySpec& spec);

struct ToyPredictor {
  enum class Kind { maxent, wknn };
  Kind kind = Kind::maxent;
  core::MaxEntParams params;
  std::size_t k = 5;

  static ToyPredictor maxent(core::MaxEntParams params = {}) {
    return {Kind::maxent, params, 0};
  }
  static ToyPredictor wknn(std::size_t k) { return {Kind::wknn, {}, k}; }
};

struct ToyPoint {
  double x1 = 0.0, x2 = 0.0;
  std::array<double, 2> y_true{}, y_pred{};
  std::size_t n_neighbors = 0;
  /// Absent for predictors without a bandwidth.
  std::optional<double> h_star;
  std::string exit_reason;
};

struct ToyOutputSummary {
  std::string name;
  /// Absent when the diagonal targets are constant.
  std::optional<MetricReport> metrics;
  double mae = 0.0;
  /// Mean absolute error on 0.1 <= x <= 0.9 and on the remaining points.
  double interior_mae = 0.0;
  double boundary_mae = 0.0;
  double accuracy = 0.0;
  /// Accuracy over points farther than 0.05 from the decision boundary.
  double band_accuracy = 0.0;
  std::size_t band_count = 0;
};

struct ToyReport {
  ToySpec spec;
  std::string predictor;
  std::vector<ToyPoint> points;
  std::array<ToyOutputSummary, 2> outputs;

  /// x1,x2,y1_true,y2_true,y1_pred,y2_pred,n_neighbors,h_star,exit_reason
  std::string csv() const;
  std::string metrics_json() const;
};

inline constexpr double boundary_band = 0.05;

/// Errors from the predictor propagate.
ToyReport run_toy_experiment(const ToySpec& spec, const ToyPredictor& predictor,
                             unsigned parallelism = 1);

}  // namespace maxent::eval
