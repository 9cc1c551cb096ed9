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

#include "signals/signal_features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace maxent::signals {

namespace {

void check_signal(std::span<const double> s, const char* what) {
  if (s.empty()) fail(ErrorCode::invalid_input, std::string(what) + " has no samples");
  require_finite(s, what);
}

double mean(std::span<const double> s) {
  double sum = 0.0;
  for (double x : s) sum += x;
  return sum / static_cast<double>(s.size());
}

}  // namespace

double signal_power(std::span<const double> signal) {
  check_signal(signal, "signal");
  double sum = 0.0;
  for (double x : signal) sum += x * x;
  return sum / static_cast<double>(signal.size());
}

double power_ratio(std::span<const double> signal, std::span<const double> baseline) {
  const double p = signal_power(signal);
  const double p_base = signal_power(baseline);
  if (!(p_base > 0.0)) fail(ErrorCode::degenerate_baseline, "baseline signal has zero power");
  return p / p_base;
}

double power_ratio(const ChannelMeasurement& m) { return power_ratio(m.signal, m.baseline); }

double correlation_coefficient(std::span<const double> signal, std::span<const double> baseline) {
  check_signal(signal, "signal");
  check_signal(baseline, "baseline");
  if (signal.size() != baseline.size()) {
    fail(ErrorCode::invalid_input, "signal and baseline lengths differ (" +
                                       std::to_string(signal.size()) + " vs " +
                                       std::to_string(baseline.size()) + ")");
  }
  const double mx = mean(signal);
  const double my = mean(baseline);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double dx = signal[i] - mx;
    const double dy = baseline[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double n = static_cast<double>(signal.size());
  const double var_x = sxx / n, var_y = syy / n;
  if (!(var_x > 0.0) || !(var_y > 0.0)) {
    fail(ErrorCode::degenerate_baseline, "correlation needs non-constant signals");
  }
  return std::clamp((sxy / n) / std::sqrt(var_x * var_y), -1.0, 1.0);
}

double correlation_coefficient(const ChannelMeasurement& m) {
  return correlation_coefficient(m.signal, m.baseline);
}

double miner_damage_index(const FatigueState& state) {
  if (state.cycles_to_failure == 0) {
    fail(ErrorCode::invalid_input, "cycles to failure must be positive");
  }
  if (state.cycles_endured > state.cycles_to_failure) {
    fail(ErrorCode::invalid_input, "cycles endured exceed cycles to failure");
  }
  return static_cast<double>(state.cycles_endured) / static_cast<double>(state.cycles_to_failure);
}

double miner_damage_index(std::span<const FatigueState> states) {
  double total = 0.0;
  for (const auto& s : states) total += miner_damage_index(s);
  return total;
}

}  // namespace maxent::signals
