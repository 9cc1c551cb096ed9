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

// The 530-column model input: per-channel power ratio and correlation
// coefficient, the 18 laminate stiffness terms, one-hot condition and
// layup, and the applied load, followed by the damage-index target.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "laminate/laminate.hpp"
#include "pipeline/record.hpp"

namespace maxent::pipeline {

inline constexpr std::size_t feature_width = 530;
inline constexpr std::size_t pw_offset = 0;
inline constexpr std::size_t cc_offset = 252;
inline constexpr std::size_t stiffness_offset = 504;
inline constexpr std::size_t condition_offset = 522;
inline constexpr std::size_t layup_offset = 526;
inline constexpr std::size_t load_offset = 529;
inline constexpr std::size_t layup_count = 3;

/// pw_c1..pw_c252, cc_c1..cc_c252, A_11..D_66, condition_0..3, layup_1..3, load.
const std::vector<std::string>& feature_names();
inline constexpr const char* target_name = "D";

struct FeatureRow {
  std::vector<double> values = std::vector<double>(feature_width, 0.0);
  /// 1 where the cell could not be computed (absent or dead channel).
  std::vector<std::uint8_t> missing = std::vector<std::uint8_t>(feature_width, 0);
  double target = 0.0;
};

class FeatureTable {
 public:
  explicit FeatureTable(bool has_targets = true) : has_targets_(has_targets) {}

  void append(const FeatureRow& row);

  std::size_t rows() const noexcept { return targets_.size(); }
  bool has_targets() const noexcept { return has_targets_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * feature_width, feature_width};
  }
  std::span<const std::uint8_t> missing(std::size_t i) const {
    return {missing_.data() + i * feature_width, feature_width};
  }
  double target(std::size_t i) const { return targets_[i]; }
  std::span<const double> targets() const noexcept { return targets_; }

  /// 1..3 from the layup one-hot group, 0 if the group is not one-hot.
  int layup_of(std::size_t i) const;
  std::size_t masked_cells() const;

  FeatureTable select(std::span<const std::size_t> rows) const;

 private:
  bool has_targets_;
  std::vector<double> values_;
  std::vector<std::uint8_t> missing_;
  std::vector<double> targets_;
};

struct IngestionContext {
  std::map<int, laminate::Layup> layups = laminate::reference_layups();
  /// Cycles to failure per coupon id; a record's own failure_cycles wins.
  std::map<std::string, std::uint64_t> failure_cycles;
};

/// Reads {"<coupon>": <cycles to failure>, ...}.
std::map<std::string, std::uint64_t> parse_failure_cycles(std::istream& in);

/// Features and damage-index target of one record. Channels that are absent
/// or whose baseline is degenerate are masked; unknown layups or coupons
/// without a failure count raise Error(ingestion).
FeatureRow build_feature_row(const MeasurementRecord& record, const IngestionContext& context);

struct IngestReport {
  std::size_t lines = 0;
  std::size_t rows = 0;
  std::size_t masked_cells = 0;
  std::size_t warnings = 0;
  std::vector<std::string> messages;
};

/// One record per line; blank lines are ignored. Strict mode throws on the
/// first bad line, lenient mode skips it and records a warning.
FeatureTable ingest_records(std::istream& in, const IngestionContext& context, bool lenient,
                            IngestReport* report = nullptr);

/// 531-column CSV (530 features then D). Masked cells are written empty.
void write_csv(const FeatureTable& table, std::ostream& out);

/// Accepts the 531-column layout or the 530-column feature-only layout.
/// The header must match exactly; a mismatch raises Error(ingestion) listing
/// the first differing columns.
FeatureTable read_csv(std::istream& in);

}  // namespace maxent::pipeline
