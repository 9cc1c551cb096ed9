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

#include <cstddef>
#include <span>
#include <vector>

namespace maxent::eval {

struct MetricReport {
  double r2 = 0.0;
  double mse = 0.0;
  std::size_t n = 0;
  /// y_true - y_pred, per point.
  std::vector<double> residuals;
};

/// R^2 = 1 - SS_res / SS_tot and MSE. Lengths must match and be nonzero;
/// a constant y_true raises Error(undefined_metric).
MetricReport compute_metrics(std::span<const double> y_true, std::span<const double> y_pred);

/// Fraction of positions where the two label sequences agree.
double accuracy(std::span<const double> y_true, std::span<const double> y_pred);

}  // namespace maxent::eval
