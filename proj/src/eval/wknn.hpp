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

// Inverse-distance weighted k-nearest-neighbour baseline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"

namespace maxent::eval {

struct WknnPrediction {
  std::vector<double> value;
  std::int64_t class_id = 0;
  /// Chosen rows, nearest first; equal distances keep row order.
  std::vector<std::size_t> neighbors;
};

/// Weights 1/d over the k nearest rows. If any of them coincides with the
/// query, only the coincident rows count, equally weighted. Classification
/// picks the class with the largest total weight, ties to the smallest id.
/// k must lie in 1..rows.
WknnPrediction wknn_predict(const core::Dataset& dataset, std::span<const double> query,
                            std::size_t k);

using WknnResult = std::variant<WknnPrediction, Error>;

std::vector<WknnResult> wknn_batch(const core::Dataset& dataset, std::span<const double> queries,
                                   std::size_t k, unsigned parallelism = 1);

}  // namespace maxent::eval
