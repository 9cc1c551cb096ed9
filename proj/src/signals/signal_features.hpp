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

// Lamb-wave features comparing a received signal with its zero-cycle
// baseline, and the Palmgren-Miner damage index used as the target.
//
// Stored signals are 0-indexed; the symmetric -N..N indexing of the
// textbook power formula has no numerical effect, so power is simply the
// mean of squared samples.

#include <cstdint>
#include <span>
#include <vector>

namespace maxent::signals {

struct ChannelMeasurement {
  /// 1..252: 36 emitter/receiver paths times 7 excitation frequencies.
  int channel_id = 0;
  std::vector<double> signal;
  std::vector<double> baseline;
};

inline constexpr int channel_count = 252;

struct FatigueState {
  std::uint64_t cycles_endured = 0;
  std::uint64_t cycles_to_failure = 0;
};

/// Mean of squared samples.
double signal_power(std::span<const double> signal);

/// P(signal) / P(baseline); degenerate_baseline when the baseline is silent.
double power_ratio(std::span<const double> signal, std::span<const double> baseline);
double power_ratio(const ChannelMeasurement& measurement);

/// Pearson correlation with population (1/N) moments, clamped to [-1, 1].
double correlation_coefficient(std::span<const double> signal, std::span<const double> baseline);
double correlation_coefficient(const ChannelMeasurement& measurement);

/// n / N for a single loading frequency.
double miner_damage_index(const FatigueState& state);

/// Sum of n_i / N_i over loading frequencies.
double miner_damage_index(std::span<const FatigueState> states);

}  // namespace maxent::signals
