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

#include <string>

#include "core/maxent.hpp"

namespace maxent::core {

/// Compact JSON object describing how a prediction was reached:
///
///   {"exit_reason": "converged" | "local_minimum" | "round_cap",
///    "h_star": <real>, "subset_size": <int>, "iterations": <int>,
///    "residual": <real>, "weight_sum_gap": <real>, "rounds": <int>,
///    "duplicate": <bool>}
std::string diagnostics_json(const Diagnostics& diagnostics);

}  // namespace maxent::core
