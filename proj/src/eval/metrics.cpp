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

#include "eval/metrics.hpp"

#include <string>

#include "core/error.hpp"

namespace maxent::eval {

namespace {

void check_lengths(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) {
    fail(ErrorCode::invalid_input, "length mismatch: " + std::to_string(y_true.size()) +
                                       " targets vs " + std::to_string(y_pred.size()) +
                                       " predictions");
  }
  if (y_true.empty()) fail(ErrorCode::invalid_input, "no points to score");
  require_finite(y_true, "y_true");
  require_finite(y_pred, "y_pred");
}

}  // namespace

MetricReport compute_metrics(std::span<const double> y_true, std::span<const double> y_pred) {
  check_lengths(y_true, y_pred);
  const auto n = y_true.size();
  double mean = 0.0;
  for (double y : y_true) mean += y;
  mean /= static_cast<double>(n);

  MetricReport rep;
  rep.n = n;
  rep.residuals.resize(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rep.residuals[i] = y_true[i] - y_pred[i];
    ss_res += rep.residuals[i] * rep.residuals[i];
    ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
  }
  if (!(ss_tot > 0.0)) fail(ErrorCode::undefined_metric, "R^2 is undefined for constant targets");
  rep.mse = ss_res / static_cast<double>(n);
  rep.r2 = 1.0 - ss_res / ss_tot;
  return rep;
}

double accuracy(std::span<const double> y_true, std::span<const double> y_pred) {
  check_lengths(y_true, y_pred);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) hits += y_true[i] == y_pred[i];
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

}  // namespace maxent::eval
