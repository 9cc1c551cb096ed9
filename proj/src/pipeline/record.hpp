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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signals/signal_features.hpp"

namespace maxent::pipeline {

/// Measurement context; the numeric values are the one-hot column offsets.
enum class Condition { baseline = 0, clamped = 1, traction_free = 2, loaded = 3 };

const char* to_string(Condition condition) noexcept;
Condition parse_condition(std::string_view text);

/// One structural-health measurement of a coupon. `load` is nonzero only for
/// loaded measurements.
struct MeasurementRecord {
  std::string coupon;
  int layup_id = 1;
  std::uint64_t cycles = 0;
  Condition condition = Condition::baseline;
  double load = 0.0;
  /// Cycles at which this coupon failed, when the record carries it.
  std::optional<std::uint64_t> failure_cycles;
  std::vector<signals::ChannelMeasurement> channels;
};

/// Parses one line of the record file:
///
///   {"coupon": "L1S11", "layup": 1, "cycles": 40000,
///    "condition": "baseline" | "clamped" | "traction_free" | "loaded",
///    "load": 0.0, "failure_cycles": 177309 (optional),
///    "channels": [{"id": 27, "signal": [...], "baseline": [...]}, ...]}
///
/// Throws Error(ingestion) describing the first problem found.
MeasurementRecord parse_record(std::string_view json_line);

/// Inverse of parse_record (single line, no trailing newline).
std::string to_json_line(const MeasurementRecord& record);

}  // namespace maxent::pipeline
