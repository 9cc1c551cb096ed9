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

#include "core/params.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace maxent::core {

namespace {

void positive(double value, const char* name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    fail(ErrorCode::parameter, std::string(name) + " must be a positive finite number");
  }
}

void open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    fail(ErrorCode::parameter, std::string(name) + " must lie strictly between 0 and 1");
  }
}

void at_least_one(std::size_t value, const char* name) {
  if (value < 1) fail(ErrorCode::parameter, std::string(name) + " must be at least 1");
}

}  // namespace

void MaxEntParams::validate() const {
  open_unit(threshold_filter, "threshold_filter");
  open_unit(threshold_entropy, "threshold_entropy");
  positive(convergence_tolerance, "convergence_tolerance");
  at_least_one(it_convergence, "it_convergence");
  positive(local_min_tolerance, "local_min_tolerance");
  at_least_one(it_local_min, "it_local_min");
  positive(q1_initial_error, "q1_initial_error");
  if (q2_hfilter_increment) positive(*q2_hfilter_increment, "q2_hfilter_increment");
  if (sweep_points < 2) fail(ErrorCode::parameter, "sweep_points must be at least 2");
  at_least_one(max_minconvex_rounds, "max_minconvex_rounds");
}

}  // namespace maxent::core
