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

// Maximum-entropy nearest-neighbour predictor.
//
// For every query the predictor picks its own neighbourhood: a Gaussian RBF
// with bandwidth h scores each training point, the bandwidth that maximizes
// the mean Gibbs entropy -p ln p of the admitted points is kept, and the
// query is reconstructed as a non-negative, unit-sum combination of those
// neighbours. The same weights then interpolate the labels (regression) or
// the neighbourhood votes by mode (classification). Nothing is fitted ahead
// of time, so new training rows take effect immediately.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/params.hpp"

namespace maxent::core {

/// Training rows admitted by an RBF threshold, in ascending row order.
struct ConvexSubset {
  std::vector<std::size_t> indices;
  std::vector<double> rbf_values;
  std::vector<double> squared_distances;
  double bandwidth = 0.0;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
};

enum class WeightExit { converged, local_minimum, widen_filter };

struct WeightSolution {
  std::vector<double> weights;
  double residual_error = 0.0;
  double weight_sum_gap = 0.0;
  std::size_t iterations = 0;
  WeightExit exit = WeightExit::widen_filter;
};

enum class ExitReason { converged, local_minimum, round_cap };

const char* to_string(ExitReason reason) noexcept;

struct Diagnostics {
  ExitReason exit_reason = ExitReason::converged;
  /// Selected bandwidth; 0 when the query duplicated a training row.
  double h_star = 0.0;
  std::size_t subset_size = 0;
  /// Weight iterations of the final outer round.
  std::size_t iterations = 0;
  double residual_error = 0.0;
  double weight_sum_gap = 0.0;
  std::size_t rounds = 0;
  bool duplicate = false;
  std::vector<std::size_t> subset_indices;
  /// Raw solver weights, aligned with subset_indices (empty for classification).
  std::vector<double> weights;
};

struct Prediction {
  Task task = Task::regression;
  std::vector<double> value;
  std::int64_t class_id = 0;
  Diagnostics diagnostics;
};

struct BandwidthChoice {
  double h_star = 0.0;
  double mean_entropy = 0.0;
  ConvexSubset subset;
};

/// exp(-|point - query|^2 / h^2).
double rbf_value(std::span<const double> query, std::span<const double> point, double h);

/// Rows whose RBF at bandwidth h strictly exceeds the threshold.
ConvexSubset filter_convex(const Dataset& dataset, std::span<const double> query, double h,
                           double threshold);

/// Same filter over precomputed squared distances (one per dataset row).
ConvexSubset filter_convex(std::span<const double> squared_distances, double h,
                           double threshold);

double mean_entropy(std::span<const double> rbf_values);
double mean_entropy(const ConvexSubset& subset);

/// Log-spaced candidates between 0.25x the smallest nonzero and 4x the
/// largest query-to-member distance of the prefilter.
std::vector<double> bandwidth_grid(const ConvexSubset& prefilter, std::size_t points);

/// Brute-force sweep of the grid; ties keep the smallest bandwidth.
BandwidthChoice optimize_bandwidth(const ConvexSubset& prefilter, const MaxEntParams& params);

/// |query - estimate| / |query|, or the absolute distance when |query| = 0.
double interpolation_error(std::span<const double> query, std::span<const double> estimate);

/// Error of the combination `points * weights`; `points` holds one neighbour
/// per column.
double interpolation_error(std::span<const double> query, std::span<const double> weights,
                           const Eigen::MatrixXd& points);

/// Projected-gradient solve of [X; 1] u = [query; 1], u >= 0, run until one
/// of the stopping rules fires. `points` holds one neighbour per column and
/// `initial_weights` one entry per column.
WeightSolution solve_weights(const Eigen::MatrixXd& points, std::span<const double> query,
                             std::span<const double> initial_weights,
                             const MaxEntParams& params);

/// Sum of weights[i] * labels.row(i), per label column.
std::vector<double> predict_regression(std::span<const double> weights,
                                       const Eigen::MatrixXd& labels);

/// Mode of the labels. Ties go to the class of the nearest tied neighbour,
/// then to the smallest class id.
std::int64_t predict_classification(std::span<const std::int64_t> labels,
                                    std::span<const double> squared_distances);

Prediction predict_point(const Dataset& dataset, std::span<const double> query,
                         const MaxEntParams& params);

using BatchResult = std::variant<Prediction, Error>;

/// Predicts every row of `queries` (row-major, dataset.dim() wide). Errors
/// are reported per query. Output is independent of `parallelism`.
std::vector<BatchResult> predict_batch(const Dataset& dataset, std::span<const double> queries,
                                       const MaxEntParams& params, unsigned parallelism = 1);

}  // namespace maxent::core
