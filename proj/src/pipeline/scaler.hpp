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
#include <vector>

#include "pipeline/feature_table.hpp"

namespace maxent::pipeline {

enum class ScalerKind { standard, minmax_pm1 };

const char* to_string(ScalerKind kind) noexcept;
ScalerKind parse_scaler_kind(std::string_view text);

/// Per-column affine map y = (x - offset) / scale, fitted on training rows.
/// `standard` centres on the mean with unit population variance;
/// `minmax_pm1` sends the training min/max to -1/+1. Constant columns map
/// to 0 and are flagged.
class Scaler {
 public:
  static Scaler fit(std::span<const double> rows, std::size_t width, ScalerKind kind);

  ScalerKind kind() const noexcept { return kind_; }
  std::size_t width() const noexcept { return offset_.size(); }
  bool is_constant(std::size_t column) const { return constant_[column] != 0; }
  std::size_t constant_columns() const;

  void transform(std::span<double> row) const;
  /// Exact inverse on non-constant columns; constant columns return the
  /// fitted value.
  void inverse(std::span<double> row) const;

 private:
  ScalerKind kind_ = ScalerKind::standard;
  std::vector<double> offset_;
  std::vector<double> scale_;
  std::vector<std::uint8_t> constant_;
};

/// Fills masked cells with the training-column median of the observed cells
/// (0 when a column was never observed).
class MedianImputer {
 public:
  static MedianImputer fit(const FeatureTable& table);

  void apply(std::span<double> row, std::span<const std::uint8_t> missing) const;
  double median(std::size_t column) const { return medians_[column]; }

 private:
  std::vector<double> medians_;
};

/// Imputation followed by scaling, both fitted on the same training table.
class Preprocessor {
 public:
  static Preprocessor fit(const FeatureTable& table, ScalerKind kind);

  std::vector<double> transform(std::span<const double> row,
                                std::span<const std::uint8_t> missing) const;
  const Scaler& scaler() const noexcept { return scaler_; }
  const MedianImputer& imputer() const noexcept { return imputer_; }

 private:
  MedianImputer imputer_;
  Scaler scaler_;
};

}  // namespace maxent::pipeline
