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

#include "core/diagnostics.hpp"

#include <json.hpp>

namespace maxent::core {

std::string diagnostics_json(const Diagnostics& d) {
  nlohmann::ordered_json j;
  j["exit_reason"] = to_string(d.exit_reason);
  j["h_star"] = d.h_star;
  j["subset_size"] = d.subset_size;
  j["iterations"] = d.iterations;
  j["residual"] = d.residual_error;
  j["weight_sum_gap"] = d.weight_sum_gap;
  j["rounds"] = d.rounds;
  j["duplicate"] = d.duplicate;
  return j.dump();
}

}  // namespace maxent::core
