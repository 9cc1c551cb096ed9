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

#include "pipeline/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace maxent::pipeline {

const char* to_string(ScalerKind kind) noexcept {
  return kind == ScalerKind::standard ? "standard" : "minmax_pm1";
}

ScalerKind parse_scaler_kind(std::string_view text) {
  if (text == "standard") return ScalerKind::standard;
  if (text == "minmax_pm1" || text == "minmax") return ScalerKind::minmax_pm1;
  fail(ErrorCode::parameter, "unknown scaler '" + std::string(text) + "'");
}

Scaler Scaler::fit(std::span<const double> rows, std::size_t width, ScalerKind kind) {
  if (width == 0 || rows.size() % width != 0) {
    fail(ErrorCode::invalid_input, "scaler: buffer is not a whole number of rows");
  }
  const std::size_t m = rows.size() / width;
  if (m == 0) fail(ErrorCode::invalid_input, "scaler: no training rows");

  Scaler s;
  s.kind_ = kind;
  s.offset_.assign(width, 0.0);
  s.scale_.assign(width, 1.0);
  s.constant_.assign(width, 0);
  for (std::size_t c = 0; c < width; ++c) {
    double lo = rows[c], hi = rows[c], sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = rows[i * width + c];
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
    }
    if (lo == hi) {
      s.offset_[c] = lo;
      s.constant_[c] = 1;
      continue;
    }
    if (kind == ScalerKind::minmax_pm1) {
      s.offset_[c] = 0.5 * (lo + hi);
      s.scale_[c] = 0.5 * (hi - lo);
    } else {
      const double mean = sum / static_cast<double>(m);
      double ss = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = rows[i * width + c] - mean;
        ss += d * d;
      }
      s.offset_[c] = mean;
      s.scale_[c] = std::sqrt(ss / static_cast<double>(m));
      if (!(s.scale_[c] > 0.0)) {
        s.scale_[c] = 1.0;
        s.constant_[c] = 1;
      }
    }
  }
  return s;
}

std::size_t Scaler::constant_columns() const {
  return static_cast<std::size_t>(std::count(constant_.begin(), constant_.end(), 1));
}

void Scaler::transform(std::span<double> row) const {
  if (row.size() != width()) fail(ErrorCode::invalid_input, "scaler: row width mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) {
    row[c] = constant_[c] ? 0.0 : (row[c] - offset_[c]) / scale_[c];
  }
}

void Scaler::inverse(std::span<double> row) const {
  if (row.size() != width()) fail(ErrorCode::invalid_input, "scaler: row width mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) {
    row[c] = constant_[c] ? offset_[c] : row[c] * scale_[c] + offset_[c];
  }
}

MedianImputer MedianImputer::fit(const FeatureTable& table) {
  MedianImputer imp;
  imp.medians_.assign(feature_width, 0.0);
  std::vector<double> observed;
  observed.reserve(table.rows());
  for (std::size_t c = 0; c < feature_width; ++c) {
    observed.clear();
    for (std::size_t i = 0; i < table.rows(); ++i) {
      if (!table.missing(i)[c]) observed.push_back(table.row(i)[c]);
    }
    if (observed.empty()) continue;
    std::sort(observed.begin(), observed.end());
    const std::size_t mid = observed.size() / 2;
    imp.medians_[c] = observed.size() % 2 ? observed[mid]
                                          : 0.5 * (observed[mid - 1] + observed[mid]);
  }
  return imp;
}

void MedianImputer::apply(std::span<double> row, std::span<const std::uint8_t> missing) const {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (missing[c]) row[c] = medians_[c];
  }
}

Preprocessor Preprocessor::fit(const FeatureTable& table, ScalerKind kind) {
  Preprocessor p;
  p.imputer_ = MedianImputer::fit(table);
  std::vector<double> imputed(table.rows() * feature_width);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    std::span<double> out(imputed.data() + i * feature_width, feature_width);
    const auto r = table.row(i);
    std::copy(r.begin(), r.end(), out.begin());
    p.imputer_.apply(out, table.missing(i));
  }
  p.scaler_ = Scaler::fit(imputed, feature_width, kind);
  return p;
}

std::vector<double> Preprocessor::transform(std::span<const double> row,
                                            std::span<const std::uint8_t> missing) const {
  std::vector<double> out(row.begin(), row.end());
  imputer_.apply(out, missing);
  scaler_.transform(out);
  return out;
}

}  // namespace maxent::pipeline
