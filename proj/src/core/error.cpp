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

#include "core/error.hpp"

#include <cmath>

namespace maxent {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::degenerate_neighborhood: return "degenerate_neighborhood";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::invalid_material: return "invalid_material";
    case ErrorCode::degenerate_baseline: return "degenerate_baseline";
    case ErrorCode::ingestion: return "ingestion";
    case ErrorCode::undefined_metric: return "undefined_metric";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(ErrorCode::invalid_input,
           std::string(what) + ": non-finite value at coordinate " + std::to_string(i));
    }
  }
}

}  // namespace maxent
