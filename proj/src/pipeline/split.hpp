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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pipeline/feature_table.hpp"

namespace maxent::pipeline {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded shuffle split. The test set holds round(test_fraction * rows)
/// rows. When `strata` is given (one key per row) every stratum contributes
/// its proportional share, rounded by largest remainder so that the total is
/// exact and each stratum is within one row of its ideal share. Both index
/// lists come back in ascending order.
SplitIndices split_indices(std::size_t rows, double test_fraction, std::uint64_t seed,
                           std::span<const int> strata = {});

/// Splits a feature table, stratified by layup unless told otherwise.
std::pair<FeatureTable, FeatureTable> split(const FeatureTable& table, double test_fraction,
                                            std::uint64_t seed, bool stratified = true);

}  // namespace maxent::pipeline
