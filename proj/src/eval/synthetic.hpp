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

// Synthetic stand-in for the fatigue feature table: 530 columns with the
// real layout, generated from a few hidden drivers, and a target that is a
// known smooth function of 15 of the columns plus noise.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pipeline/feature_table.hpp"

namespace maxent::eval {

struct SyntheticSpec {
  /// Rows per reference layup 1..3.
  std::array<std::size_t, 3> rows_per_layup{516, 452, 524};
  std::uint64_t seed = 2024;
  /// Standard deviation of the noise added to every channel feature.
  double feature_noise = 0.0005;
  /// Standard deviation of the noise added to the target.
  double target_noise = 0.002;
};

struct SyntheticTable {
  pipeline::FeatureTable table;
  /// The 15 columns the target is planted on, ascending.
  std::vector<std::size_t> planted_columns;
  /// Noise-free target per row.
  std::vector<double> clean_target;
};

/// Each row draws a damage level s in [0, 1], an environmental drift e in
/// [-0.5, 0.5], a condition and, for loaded rows, a load. Channel c responds
/// as
///
///   pw_c = g_{L,c} exp(-b_c s) (1 + v_c e) + k_{cond,c}            + noise
///   cc_c = 1 - a_c s^{p_c} + 0.1 v_c e^2   + 0.02 k_{cond,c}       + noise
///
/// with per-channel constants drawn once from the seed and g depending on
/// the layup L. Stiffness columns hold the reference laminate terms. The
/// target is
///
///   D = sum_j w_j x_j + 0.5 (x_{j1} - x_{j2})^2 + noise
///
/// over the planted columns, shifted and scaled so the clean target spans
/// [0, 1] across the generated rows, then clipped to [0, 1] after the noise.
SyntheticTable make_synthetic_table(const SyntheticSpec& spec);

}  // namespace maxent::eval
