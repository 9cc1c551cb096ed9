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

#include "pipeline/feature_table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace maxent::pipeline {

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    out.reserve(feature_width);
    for (int c = 1; c <= signals::channel_count; ++c) out.push_back("pw_c" + std::to_string(c));
    for (int c = 1; c <= signals::channel_count; ++c) out.push_back("cc_c" + std::to_string(c));
    for (const auto& n : laminate::stiffness_feature_names()) out.push_back(n);
    for (int c = 0; c < 4; ++c) out.push_back("condition_" + std::to_string(c));
    for (int l = 1; l <= 3; ++l) out.push_back("layup_" + std::to_string(l));
    out.push_back("load");
    return out;
  }();
  return names;
}

void FeatureTable::append(const FeatureRow& row) {
  if (row.values.size() != feature_width || row.missing.size() != feature_width) {
    fail(ErrorCode::ingestion, "feature row must have exactly " + std::to_string(feature_width) +
                                   " cells");
  }
  values_.insert(values_.end(), row.values.begin(), row.values.end());
  missing_.insert(missing_.end(), row.missing.begin(), row.missing.end());
  targets_.push_back(has_targets_ ? row.target : 0.0);
}

int FeatureTable::layup_of(std::size_t i) const {
  const auto r = row(i);
  int found = 0;
  for (std::size_t l = 0; l < layup_count; ++l) {
    if (r[layup_offset + l] == 1.0) {
      if (found != 0) return 0;
      found = static_cast<int>(l) + 1;
    } else if (r[layup_offset + l] != 0.0) {
      return 0;
    }
  }
  return found;
}

std::size_t FeatureTable::masked_cells() const {
  std::size_t n = 0;
  for (auto m : missing_) n += m;
  return n;
}

FeatureTable FeatureTable::select(std::span<const std::size_t> rows) const {
  FeatureTable out(has_targets_);
  out.values_.reserve(rows.size() * feature_width);
  out.missing_.reserve(rows.size() * feature_width);
  for (auto i : rows) {
    const auto r = row(i);
    const auto m = missing(i);
    out.values_.insert(out.values_.end(), r.begin(), r.end());
    out.missing_.insert(out.missing_.end(), m.begin(), m.end());
    out.targets_.push_back(targets_[i]);
  }
  return out;
}

std::map<std::string, std::uint64_t> parse_failure_cycles(std::istream& in) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ingestion, std::string("failure-cycle file: ") + e.what());
  }
  if (!obj.is_object()) fail(ErrorCode::ingestion, "failure-cycle file must be a JSON object");
  std::map<std::string, std::uint64_t> out;
  for (const auto& [coupon, v] : obj.items()) {
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
      fail(ErrorCode::ingestion, "failure cycles of '" + coupon + "' must be a positive integer");
    }
    out[coupon] = v.get<std::uint64_t>();
  }
  return out;
}

FeatureRow build_feature_row(const MeasurementRecord& record, const IngestionContext& context) {
  const auto layup = context.layups.find(record.layup_id);
  if (layup == context.layups.end() || record.layup_id < 1 ||
      record.layup_id > static_cast<int>(layup_count)) {
    fail(ErrorCode::ingestion, "unknown layup " + std::to_string(record.layup_id));
  }

  std::uint64_t failure = 0;
  if (record.failure_cycles) {
    failure = *record.failure_cycles;
  } else if (auto it = context.failure_cycles.find(record.coupon);
             it != context.failure_cycles.end()) {
    failure = it->second;
  } else {
    fail(ErrorCode::ingestion, "no cycles-to-failure known for coupon '" + record.coupon + "'");
  }

  FeatureRow row;
  try {
    row.target = signals::miner_damage_index({record.cycles, failure});
  } catch (const Error& e) {
    fail(ErrorCode::ingestion, std::string("coupon '") + record.coupon + "': " + e.what());
  }

  std::fill(row.missing.begin(), row.missing.begin() + stiffness_offset, std::uint8_t{1});
  for (const auto& ch : record.channels) {
    const auto c = static_cast<std::size_t>(ch.channel_id - 1);
    try {
      row.values[pw_offset + c] = signals::power_ratio(ch);
      row.missing[pw_offset + c] = 0;
    } catch (const Error&) {
      row.values[pw_offset + c] = 0.0;
    }
    try {
      row.values[cc_offset + c] = signals::correlation_coefficient(ch);
      row.missing[cc_offset + c] = 0;
    } catch (const Error&) {
      row.values[cc_offset + c] = 0.0;
    }
  }

  const auto stiffness = laminate::stiffness_feature_row(laminate::abd_matrices(layup->second));
  std::copy(stiffness.begin(), stiffness.end(), row.values.begin() + stiffness_offset);
  row.values[condition_offset + static_cast<std::size_t>(record.condition)] = 1.0;
  row.values[layup_offset + static_cast<std::size_t>(record.layup_id - 1)] = 1.0;
  row.values[load_offset] = record.condition == Condition::loaded ? record.load : 0.0;
  return row;
}

FeatureTable ingest_records(std::istream& in, const IngestionContext& context, bool lenient,
                            IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  FeatureTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++rep.lines;
    try {
      table.append(build_feature_row(parse_record(line), context));
    } catch (const Error& e) {
      const std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
      if (!lenient) fail(ErrorCode::ingestion, msg);
      ++rep.warnings;
      rep.messages.push_back(msg);
    }
  }
  rep.rows = table.rows();
  rep.masked_cells = table.masked_cells();
  return table;
}

namespace {

void write_number(std::ostream& out, double v) { out << format_number(v); }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

void write_csv(const FeatureTable& table, std::ostream& out) {
  const auto& names = feature_names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  if (table.has_targets()) out << ',' << target_name;
  out << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto r = table.row(i);
    const auto m = table.missing(i);
    for (std::size_t c = 0; c < feature_width; ++c) {
      if (c) out << ',';
      if (!m[c]) write_number(out, r[c]);
    }
    if (table.has_targets()) {
      out << ',';
      write_number(out, table.target(i));
    }
    out << '\n';
  }
}

FeatureTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ingestion, "feature CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split(line);
  const auto& names = feature_names();
  const bool with_target = header.size() == feature_width + 1;
  if (header.size() != feature_width && !with_target) {
    fail(ErrorCode::ingestion, "feature CSV has " + std::to_string(header.size()) +
                                   " columns, expected " + std::to_string(feature_width) +
                                   " or " + std::to_string(feature_width + 1));
  }
  std::string diff;
  std::size_t differences = 0;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string_view expected =
        c < feature_width ? std::string_view(names[c]) : std::string_view(target_name);
    if (header[c] != expected) {
      if (++differences <= 5) {
        diff += "\n  column " + std::to_string(c + 1) + ": got '" + std::string(header[c]) +
                "', expected '" + std::string(expected) + "'";
      }
    }
  }
  if (differences) {
    fail(ErrorCode::ingestion,
         "feature CSV header differs in " + std::to_string(differences) + " column(s):" + diff);
  }

  FeatureTable table(with_target);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::ingestion, "line " + std::to_string(line_no) + ": " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
    }
    FeatureRow row;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = fields[c];
      if (f.empty() && c < feature_width) {
        row.missing[c] = 1;
        continue;
      }
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(v)) {
        fail(ErrorCode::ingestion, "line " + std::to_string(line_no) + ", column " +
                                       std::to_string(c + 1) + ": bad number '" +
                                       std::string(f) + "'");
      }
      if (c < feature_width) {
        row.values[c] = v;
      } else {
        row.target = v;
      }
    }
    table.append(row);
  }
  return table;
}

}  // namespace maxent::pipeline
