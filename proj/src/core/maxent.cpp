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

#include "core/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "core/parallel.hpp"

namespace maxent::core {

const char* to_string(ExitReason reason) noexcept {
  switch (reason) {
    case ExitReason::converged: return "converged";
    case ExitReason::local_minimum: return "local_minimum";
    case ExitReason::round_cap: return "round_cap";
  }
  return "unknown";
}

namespace {

void check_bandwidth(double h) {
  if (!(std::isfinite(h) && h > 0.0)) {
    fail(ErrorCode::parameter, "bandwidth must be a positive finite number");
  }
}

double rbf_from_squared(double squared_distance, double h) {
  return std::exp(-squared_distance / (h * h));
}

// Neighbours of the subset as matrix columns.
Eigen::MatrixXd gather_columns(const Dataset& dataset, const ConvexSubset& subset) {
  Eigen::MatrixXd points(dataset.dim(), subset.size());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto p = dataset.point(subset.indices[j]);
    for (std::size_t r = 0; r < p.size(); ++r) points(r, j) = p[r];
  }
  return points;
}

Prediction duplicate_prediction(const Dataset& dataset, std::size_t row) {
  Prediction out;
  out.task = dataset.task();
  if (dataset.task() == Task::regression) {
    const auto t = dataset.target(row);
    out.value.assign(t.begin(), t.end());
  } else {
    out.class_id = dataset.class_of(row);
  }
  auto& d = out.diagnostics;
  d.exit_reason = ExitReason::converged;
  d.duplicate = true;
  d.subset_size = 1;
  d.subset_indices = {row};
  if (dataset.task() == Task::regression) d.weights = {1.0};
  return out;
}

// Distance to the nearest training point. Duplicates are handled before
// this is called, so the result is positive.
double initial_filter_bandwidth(std::span<const double> squared_distances) {
  return std::sqrt(*std::min_element(squared_distances.begin(), squared_distances.end()));
}

}  // namespace

double rbf_value(std::span<const double> query, std::span<const double> point, double h) {
  check_bandwidth(h);
  if (query.size() != point.size()) {
    fail(ErrorCode::invalid_input, "rbf_value: dimension mismatch");
  }
  require_finite(query, "query");
  require_finite(point, "point");
  return rbf_from_squared(squared_distance(query, point), h);
}

ConvexSubset filter_convex(std::span<const double> squared_distances, double h,
                           double threshold) {
  check_bandwidth(h);
  if (!(threshold > 0.0 && threshold < 1.0)) {
    fail(ErrorCode::parameter, "filter threshold must lie strictly between 0 and 1");
  }
  ConvexSubset subset;
  subset.bandwidth = h;
  for (std::size_t i = 0; i < squared_distances.size(); ++i) {
    const double rbf = rbf_from_squared(squared_distances[i], h);
    if (rbf > threshold) {
      subset.indices.push_back(i);
      subset.rbf_values.push_back(rbf);
      subset.squared_distances.push_back(squared_distances[i]);
    }
  }
  return subset;
}

ConvexSubset filter_convex(const Dataset& dataset, std::span<const double> query, double h,
                           double threshold) {
  if (query.size() != dataset.dim()) {
    fail(ErrorCode::invalid_input, "query dimension does not match the dataset");
  }
  require_finite(query, "query");
  std::vector<double> d2(dataset.rows());
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    d2[i] = squared_distance(dataset.point(i), query);
  }
  return filter_convex(d2, h, threshold);
}

double mean_entropy(std::span<const double> rbf_values) {
  if (rbf_values.empty()) {
    fail(ErrorCode::degenerate_neighborhood, "mean entropy of an empty subset");
  }
  double sum = 0.0;
  for (double p : rbf_values) {
    if (!(p > 0.0 && p <= 1.0)) {
      fail(ErrorCode::invalid_input, "RBF values must lie in (0, 1]");
    }
    sum -= p * std::log(p);
  }
  return sum / static_cast<double>(rbf_values.size());
}

double mean_entropy(const ConvexSubset& subset) { return mean_entropy(subset.rbf_values); }

std::vector<double> bandwidth_grid(const ConvexSubset& prefilter, std::size_t points) {
  if (prefilter.empty()) {
    fail(ErrorCode::degenerate_neighborhood, "bandwidth sweep over an empty prefilter");
  }
  if (points < 2) fail(ErrorCode::parameter, "sweep needs at least two points");

  double d2_min = std::numeric_limits<double>::infinity();
  double d2_max = 0.0;
  for (double d2 : prefilter.squared_distances) {
    if (d2 > 0.0) d2_min = std::min(d2_min, d2);
    d2_max = std::max(d2_max, d2);
  }
  if (d2_max == 0.0) {
    fail(ErrorCode::degenerate_neighborhood, "every prefilter member coincides with the query");
  }

  const double lo = std::log(0.25 * std::sqrt(d2_min));
  const double hi = std::log(4.0 * std::sqrt(d2_max));
  std::vector<double> grid(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(points - 1);
    grid[j] = std::exp(lo + t * (hi - lo));
  }
  return grid;
}

BandwidthChoice optimize_bandwidth(const ConvexSubset& prefilter, const MaxEntParams& params) {
  const auto grid = bandwidth_grid(prefilter, params.sweep_points);

  double best_entropy = -1.0;
  double best_h = 0.0;
  for (double h : grid) {
    double sum = 0.0;
    std::size_t admitted = 0;
    for (double d2 : prefilter.squared_distances) {
      const double p = rbf_from_squared(d2, h);
      if (p > params.threshold_entropy) {
        sum -= p * std::log(p);
        ++admitted;
      }
    }
    if (admitted == 0) continue;
    const double entropy = sum / static_cast<double>(admitted);
    if (entropy > best_entropy) {
      best_entropy = entropy;
      best_h = h;
    }
  }
  if (best_h == 0.0) {
    fail(ErrorCode::degenerate_neighborhood, "no bandwidth candidate admitted any point");
  }

  BandwidthChoice choice;
  choice.h_star = best_h;
  choice.mean_entropy = best_entropy;
  choice.subset.bandwidth = best_h;
  for (std::size_t j = 0; j < prefilter.size(); ++j) {
    const double p = rbf_from_squared(prefilter.squared_distances[j], best_h);
    if (p > params.threshold_entropy) {
      choice.subset.indices.push_back(prefilter.indices[j]);
      choice.subset.rbf_values.push_back(p);
      choice.subset.squared_distances.push_back(prefilter.squared_distances[j]);
    }
  }
  return choice;
}

double interpolation_error(std::span<const double> query, std::span<const double> estimate) {
  if (query.size() != estimate.size()) {
    fail(ErrorCode::invalid_input, "interpolation_error: dimension mismatch");
  }
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < query.size(); ++i) {
    const double d = query[i] - estimate[i];
    diff += d * d;
    scale += query[i] * query[i];
  }
  if (!std::isfinite(diff) || !std::isfinite(scale)) {
    fail(ErrorCode::numerical_failure, "interpolation_error: non-finite input");
  }
  diff = std::sqrt(diff);
  return scale > 0.0 ? diff / std::sqrt(scale) : diff;
}

double interpolation_error(std::span<const double> query, std::span<const double> weights,
                           const Eigen::MatrixXd& points) {
  if (static_cast<std::size_t>(points.cols()) != weights.size() ||
      static_cast<std::size_t>(points.rows()) != query.size()) {
    fail(ErrorCode::invalid_input, "interpolation_error: shape mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> u(weights.data(),
                                            static_cast<Eigen::Index>(weights.size()));
  const Eigen::VectorXd estimate = points * u;
  return interpolation_error(query, std::span<const double>(estimate.data(), query.size()));
}

WeightSolution solve_weights(const Eigen::MatrixXd& points, std::span<const double> query,
                             std::span<const double> initial_weights,
                             const MaxEntParams& params) {
  const auto n = points.rows();
  const auto k = points.cols();
  if (k == 0) fail(ErrorCode::degenerate_neighborhood, "solve_weights: empty neighbourhood");
  if (static_cast<std::size_t>(n) != query.size()) {
    fail(ErrorCode::invalid_input, "solve_weights: query dimension mismatch");
  }
  if (initial_weights.size() != static_cast<std::size_t>(k)) {
    fail(ErrorCode::invalid_input, "solve_weights: one initial weight per neighbour required");
  }

  const Eigen::Map<const Eigen::VectorXd> q(query.data(), n);

  // A neighbour sitting exactly on the query is an exact convex representation.
  for (Eigen::Index j = 0; j < k; ++j) {
    if ((points.col(j).array() == q.array()).all()) {
      WeightSolution exact;
      exact.weights.assign(static_cast<std::size_t>(k), 0.0);
      exact.weights[static_cast<std::size_t>(j)] = 1.0;
      exact.exit = WeightExit::converged;
      return exact;
    }
  }

  // Augmented system K u = b with K = [X; 1^T], b = [q; 1]. The gradient of
  // 0.5 |K u - b|^2 is X^T X u + sum(u) - X^T q - 1, and the residual norm
  // follows from the same products: |X u - q|^2 = u.X^T X u - 2 u.X^T q + |q|^2.
  const Eigen::MatrixXd gram = points.transpose() * points;
  const Eigen::VectorXd xtq = points.transpose() * q;
  const double q_sq = q.squaredNorm();
  const double lipschitz = points.squaredNorm() + static_cast<double>(k);
  const double step = 1.0 / lipschitz;

  Eigen::VectorXd u(k);
  for (Eigen::Index j = 0; j < k; ++j) u(j) = std::max(0.0, initial_weights[j]);

  const double q_norm = std::sqrt(q_sq);
  WeightSolution sol;
  double error_old = params.q1_initial_error;
  Eigen::VectorXd gu = gram * u;
  for (std::size_t iter = 1;; ++iter) {
    u -= step * (gu.array() + (u.sum() - 1.0) - xtq.array()).matrix();
    u = u.cwiseMax(0.0);
    gu.noalias() = gram * u;

    const double residual = std::sqrt(std::max(0.0, u.dot(gu) - 2.0 * u.dot(xtq) + q_sq));
    const double error = q_norm > 0.0 ? residual / q_norm : residual;
    const double gap = std::abs(1.0 - u.sum());
    const double total = error + gap;
    if (!std::isfinite(total)) {
      fail(ErrorCode::numerical_failure, "solve_weights: iteration diverged");
    }

    sol.iterations = iter;
    sol.residual_error = error;
    sol.weight_sum_gap = gap;
    if (total < params.convergence_tolerance && iter > params.it_convergence) {
      sol.exit = WeightExit::converged;
      break;
    }
    if (iter > params.it_local_min) {
      sol.exit = std::abs(total - error_old) < params.local_min_tolerance
                     ? WeightExit::local_minimum
                     : WeightExit::widen_filter;
      break;
    }
    error_old = total;
  }
  sol.weights.assign(u.data(), u.data() + k);
  sol.residual_error = interpolation_error(query, sol.weights, points);
  return sol;
}

std::vector<double> predict_regression(std::span<const double> weights,
                                       const Eigen::MatrixXd& labels) {
  if (static_cast<std::size_t>(labels.rows()) != weights.size()) {
    fail(ErrorCode::invalid_input, "predict_regression: one weight per label row required");
  }
  std::vector<double> out(static_cast<std::size_t>(labels.cols()), 0.0);
  for (Eigen::Index c = 0; c < labels.cols(); ++c) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < labels.rows(); ++i) sum += weights[i] * labels(i, c);
    out[c] = sum;
  }
  return out;
}

std::int64_t predict_classification(std::span<const std::int64_t> labels,
                                    std::span<const double> squared_distances) {
  if (labels.empty()) {
    fail(ErrorCode::degenerate_neighborhood, "mode of an empty neighbourhood");
  }
  if (!squared_distances.empty() && squared_distances.size() != labels.size()) {
    fail(ErrorCode::invalid_input, "predict_classification: one distance per label required");
  }

  struct Tally {
    std::size_t count = 0;
    double nearest = std::numeric_limits<double>::infinity();
  };
  std::map<std::int64_t, Tally> tally;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& t = tally[labels[i]];
    ++t.count;
    if (!squared_distances.empty()) t.nearest = std::min(t.nearest, squared_distances[i]);
  }

  // std::map iterates in ascending class id, so strict comparisons keep the
  // smallest id on a complete tie.
  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    if (it->second.count > best->second.count ||
        (it->second.count == best->second.count && it->second.nearest < best->second.nearest)) {
      best = it;
    }
  }
  return best->first;
}

Prediction predict_point(const Dataset& dataset, std::span<const double> query,
                         const MaxEntParams& params) {
  params.validate();
  if (dataset.empty()) fail(ErrorCode::invalid_input, "dataset is empty");
  if (query.size() != dataset.dim()) {
    fail(ErrorCode::invalid_input, "query has dimension " + std::to_string(query.size()) +
                                       ", dataset expects " + std::to_string(dataset.dim()));
  }
  require_finite(query, "query");

  const std::size_t m = dataset.rows();
  std::vector<double> d2(m);
  for (std::size_t i = 0; i < m; ++i) {
    d2[i] = squared_distance(dataset.point(i), query);
    if (d2[i] == 0.0) return duplicate_prediction(dataset, i);
  }

  double h_filter = initial_filter_bandwidth(d2);
  const double increment = params.q2_hfilter_increment.value_or(0.25 * h_filter);

  Prediction out;
  out.task = dataset.task();
  auto& diag = out.diagnostics;

  bool have_solution = false;
  WeightSolution solution;
  BandwidthChoice choice;
  WeightSolution best_solution;
  BandwidthChoice best_choice;
  double best_total = 0.0;
  std::vector<std::size_t> previous_members;
  std::size_t round = 0;
  for (round = 1; round <= params.max_minconvex_rounds; ++round, h_filter += increment) {
    ConvexSubset prefilter = filter_convex(d2, h_filter, params.threshold_filter);
    if (prefilter.empty()) continue;

    // The rest of the round depends only on which rows were admitted, so a
    // repeat of the previous membership would reproduce the previous outcome.
    if (have_solution && prefilter.indices == previous_members) {
      round = params.max_minconvex_rounds;
      break;
    }
    previous_members = prefilter.indices;

    choice = optimize_bandwidth(prefilter, params);
    const ConvexSubset& subset = choice.subset;

    if (dataset.task() == Task::classification) {
      std::vector<std::int64_t> labels(subset.size());
      for (std::size_t j = 0; j < subset.size(); ++j) {
        labels[j] = dataset.class_of(subset.indices[j]);
      }
      out.class_id = predict_classification(labels, subset.squared_distances);
      diag.exit_reason = ExitReason::converged;
      diag.h_star = choice.h_star;
      diag.subset_size = subset.size();
      diag.subset_indices = subset.indices;
      diag.rounds = round;
      return out;
    }

    const Eigen::MatrixXd points = gather_columns(dataset, subset);
    solution = solve_weights(points, query, subset.rbf_values, params);
    if (solution.exit != WeightExit::widen_filter) {
      best_solution = std::move(solution);
      best_choice = std::move(choice);
      have_solution = true;
      break;
    }
    const double total = solution.residual_error + solution.weight_sum_gap;
    if (!have_solution || total < best_total) {
      best_total = total;
      best_solution = solution;
      best_choice = choice;
    }
    have_solution = true;
  }
  // A capped run reports the round whose weights came closest to the query.
  solution = std::move(best_solution);
  choice = std::move(best_choice);

  if (!have_solution) {
    fail(ErrorCode::degenerate_neighborhood,
         "no training point passed the prefilter in any round");
  }

  const ConvexSubset& subset = choice.subset;
  diag.exit_reason = solution.exit == WeightExit::converged       ? ExitReason::converged
                     : solution.exit == WeightExit::local_minimum ? ExitReason::local_minimum
                                                                  : ExitReason::round_cap;
  diag.h_star = choice.h_star;
  diag.subset_size = subset.size();
  diag.iterations = solution.iterations;
  diag.residual_error = solution.residual_error;
  diag.weight_sum_gap = solution.weight_sum_gap;
  diag.rounds = std::min(round, params.max_minconvex_rounds);
  diag.subset_indices = subset.indices;
  diag.weights = solution.weights;

  // Labels are interpolated with the weights rescaled to unit sum, which keeps
  // every output inside the envelope of the neighbour labels.
  std::vector<double> normalized = solution.weights;
  double total = 0.0;
  for (double w : normalized) total += w;
  if (!(total > 0.0)) {
    normalized = subset.rbf_values;
    total = 0.0;
    for (double w : normalized) total += w;
  }
  for (double& w : normalized) w /= total;

  Eigen::MatrixXd labels(subset.size(), dataset.label_width());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto t = dataset.target(subset.indices[j]);
    for (std::size_t c = 0; c < t.size(); ++c) labels(j, c) = t[c];
  }
  out.value = predict_regression(normalized, labels);
  return out;
}

std::vector<BatchResult> predict_batch(const Dataset& dataset, std::span<const double> queries,
                                       const MaxEntParams& params, unsigned parallelism) {
  const std::size_t dim = dataset.dim();
  if (queries.size() % dim != 0) {
    fail(ErrorCode::invalid_input, "query buffer is not a multiple of the dataset dimension");
  }
  const std::size_t count = queries.size() / dim;
  std::vector<BatchResult> results(count, Error(ErrorCode::invalid_input, "not evaluated"));
  parallel_for(count, parallelism, [&](std::size_t i) {
    try {
      results[i] = predict_point(dataset, queries.subspan(i * dim, dim), params);
    } catch (const Error& e) {
      results[i] = e;
    }
  });
  return results;
}

}  // namespace maxent::core
