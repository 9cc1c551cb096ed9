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
#include <optional>

namespace maxent::core {

/// Tolerances and iteration caps of the maximum-entropy predictor.
///
/// The defaults are the published ones and assume the inputs were normalized
/// so that most coordinates fall inside [-1, 1].
struct MaxEntParams {
  /// RBF threshold of the coarse prefilter around the query.
  double threshold_filter = 0.01;
  /// RBF threshold applied while sweeping the bandwidth.
  double threshold_entropy = 0.01;
  /// Bound on interpolation error plus |1 - sum(u)| for a converged exit.
  double convergence_tolerance = 0.01;
  /// Iterations that must elapse before a converged exit is accepted.
  std::size_t it_convergence = 20;
  /// Stall bound on consecutive error changes for a local-minimum exit.
  double local_min_tolerance = 1e-9;
  /// Iterations that must elapse before the stall test runs.
  std::size_t it_local_min = 1000;
  /// Starting value of the "previous error" used by the stall test.
  double q1_initial_error = 1e6;
  /// Growth of the prefilter bandwidth per outer round; unset means a quarter
  /// of the initial prefilter bandwidth, which is the nearest-neighbour distance.
  std::optional<double> q2_hfilter_increment;
  /// Number of log-spaced bandwidth candidates.
  std::size_t sweep_points = 64;
  /// Cap on outer (prefilter-widening) rounds.
  std::size_t max_minconvex_rounds = 20;

  /// Throws Error(parameter) naming the first offending field.
  void validate() const;
};

}  // namespace maxent::core
