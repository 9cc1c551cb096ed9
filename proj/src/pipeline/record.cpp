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

#include "pipeline/record.hpp"

#include <cmath>
#include <json.hpp>
#include <set>

#include "core/error.hpp"

namespace maxent::pipeline {

using nlohmann::json;

const char* to_string(Condition condition) noexcept {
  switch (condition) {
    case Condition::baseline: return "baseline";
    case Condition::clamped: return "clamped";
    case Condition::traction_free: return "traction_free";
    case Condition::loaded: return "loaded";
  }
  return "unknown";
}

Condition parse_condition(std::string_view text) {
  if (text == "baseline") return Condition::baseline;
  if (text == "clamped") return Condition::clamped;
  if (text == "traction_free") return Condition::traction_free;
  if (text == "loaded") return Condition::loaded;
  fail(ErrorCode::ingestion, "unknown condition '" + std::string(text) + "'");
}

namespace {

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(ErrorCode::ingestion, std::string("missing field '") + name + "'");
  return *it;
}

std::vector<double> samples(const json& arr, const std::string& what) {
  if (!arr.is_array()) fail(ErrorCode::ingestion, what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) fail(ErrorCode::ingestion, what + " must be an array of numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorCode::ingestion, what + " contains a non-finite sample");
    out.push_back(x);
  }
  return out;
}

std::uint64_t count_field(const json& v, const char* name) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(ErrorCode::ingestion, std::string("'") + name + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

MeasurementRecord parse_record(std::string_view json_line) {
  json obj;
  try {
    obj = json::parse(json_line);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ingestion, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) fail(ErrorCode::ingestion, "record must be a JSON object");

  MeasurementRecord rec;
  try {
    const auto& coupon = field(obj, "coupon");
    if (!coupon.is_string()) fail(ErrorCode::ingestion, "'coupon' must be a string");
    rec.coupon = coupon.get<std::string>();

    const auto& layup = field(obj, "layup");
    if (!layup.is_number_integer()) fail(ErrorCode::ingestion, "'layup' must be an integer");
    rec.layup_id = layup.get<int>();

    rec.cycles = count_field(field(obj, "cycles"), "cycles");

    const auto& condition = field(obj, "condition");
    if (!condition.is_string()) fail(ErrorCode::ingestion, "'condition' must be a string");
    rec.condition = parse_condition(condition.get<std::string>());

    if (auto it = obj.find("load"); it != obj.end() && !it->is_null()) {
      if (!it->is_number()) fail(ErrorCode::ingestion, "'load' must be a number");
      rec.load = it->get<double>();
      if (!std::isfinite(rec.load)) fail(ErrorCode::ingestion, "'load' is not finite");
    }
    if (rec.condition != Condition::loaded && rec.load != 0.0) {
      fail(ErrorCode::ingestion, "'load' is only allowed for loaded measurements");
    }

    if (auto it = obj.find("failure_cycles"); it != obj.end() && !it->is_null()) {
      rec.failure_cycles = count_field(*it, "failure_cycles");
    }

    const auto& channels = field(obj, "channels");
    if (!channels.is_array()) fail(ErrorCode::ingestion, "'channels' must be an array");
    std::set<int> seen;
    for (const auto& ch : channels) {
      if (!ch.is_object()) fail(ErrorCode::ingestion, "channel entries must be objects");
      const auto& id = field(ch, "id");
      if (!id.is_number_integer()) fail(ErrorCode::ingestion, "channel 'id' must be an integer");
      signals::ChannelMeasurement m;
      m.channel_id = id.get<int>();
      if (m.channel_id < 1 || m.channel_id > signals::channel_count) {
        fail(ErrorCode::ingestion, "channel id " + std::to_string(m.channel_id) +
                                       " outside 1.." + std::to_string(signals::channel_count));
      }
      if (!seen.insert(m.channel_id).second) {
        fail(ErrorCode::ingestion, "channel " + std::to_string(m.channel_id) + " repeated");
      }
      const std::string tag = "channel " + std::to_string(m.channel_id);
      m.signal = samples(field(ch, "signal"), tag + " signal");
      m.baseline = samples(field(ch, "baseline"), tag + " baseline");
      rec.channels.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ingestion, std::string("bad record field: ") + e.what());
  }
  return rec;
}

std::string to_json_line(const MeasurementRecord& rec) {
  nlohmann::ordered_json obj;
  obj["coupon"] = rec.coupon;
  obj["layup"] = rec.layup_id;
  obj["cycles"] = rec.cycles;
  obj["condition"] = to_string(rec.condition);
  obj["load"] = rec.load;
  if (rec.failure_cycles) obj["failure_cycles"] = *rec.failure_cycles;
  auto channels = nlohmann::ordered_json::array();
  for (const auto& m : rec.channels) {
    channels.push_back({{"id", m.channel_id}, {"signal", m.signal}, {"baseline", m.baseline}});
  }
  obj["channels"] = std::move(channels);
  return obj.dump();
}

}  // namespace maxent::pipeline
