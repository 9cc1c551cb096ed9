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

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "core/error.hpp"
#include "laminate/laminate.hpp"
#include "pipeline/feature_table.hpp"
#include "pipeline/online_store.hpp"
#include "pipeline/record.hpp"
#include "pipeline/scaler.hpp"
#include "pipeline/split.hpp"
#include "test_support.hpp"

using namespace maxent;
using namespace maxent::pipeline;

namespace {

std::vector<double> burst(std::mt19937_64& gen, std::size_t n, double amp) {
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = amp * std::sin(0.3 * static_cast<double>(i)) + noise(gen);
  return s;
}

MeasurementRecord make_record(std::mt19937_64& gen, Condition condition, int layup,
                              std::uint64_t cycles, std::vector<int> channel_ids,
                              bool identical = false) {
  MeasurementRecord r;
  r.coupon = "L" + std::to_string(layup) + "S11";
  r.layup_id = layup;
  r.cycles = cycles;
  r.condition = condition;
  r.load = condition == Condition::loaded ? 22.5 : 0.0;
  for (int id : channel_ids) {
    signals::ChannelMeasurement m;
    m.channel_id = id;
    m.baseline = burst(gen, 41, 1.0);
    m.signal = identical ? m.baseline : burst(gen, 41, 0.8);
    r.channels.push_back(std::move(m));
  }
  return r;
}

IngestionContext context_with(std::map<std::string, std::uint64_t> failures) {
  IngestionContext ctx;
  ctx.failure_cycles = std::move(failures);
  return ctx;
}

std::vector<int> all_channels() {
  std::vector<int> ids(signals::channel_count);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

FeatureRow plain_row(std::vector<std::pair<std::size_t, double>> cells, double target) {
  FeatureRow row;
  for (auto [c, v] : cells) row.values[c] = v;
  row.target = target;
  return row;
}

}  // namespace

TEST_SUITE("records") {
  TEST_CASE("json round trip") {
    std::mt19937_64 gen(101);
    auto rec = make_record(gen, Condition::loaded, 2, 40000, {1, 17, 252});
    rec.failure_cycles = 177309;
    const auto line = to_json_line(rec);
    CHECK(line.find('\n') == std::string::npos);
    const auto back = parse_record(line);
    CHECK(back.coupon == rec.coupon);
    CHECK(back.layup_id == 2);
    CHECK(back.cycles == 40000);
    CHECK(back.condition == Condition::loaded);
    CHECK(back.load == 22.5);
    CHECK(back.failure_cycles == std::optional<std::uint64_t>(177309));
    REQUIRE(back.channels.size() == 3);
    CHECK(back.channels[2].channel_id == 252);
    CHECK(back.channels[1].signal == rec.channels[1].signal);
    CHECK(back.channels[1].baseline == rec.channels[1].baseline);
  }

  TEST_CASE("conditions") {
    for (auto c : {Condition::baseline, Condition::clamped, Condition::traction_free,
                   Condition::loaded}) {
      CHECK(parse_condition(to_string(c)) == c);
    }
    CHECK(test::error_code([] { parse_condition("wet"); }) == ErrorCode::ingestion);
  }

  TEST_CASE("malformed records are ingestion errors") {
    const char* base = R"("coupon":"C","layup":1,"cycles":0,"condition":"baseline")";
    const std::string ch = R"("channels":[{"id":1,"signal":[1,2],"baseline":[1,2]}])";
    for (const std::string& line : {
             std::string("not json"),
             std::string("[1,2]"),
             std::string("{") + base + "}",
             std::string(R"({"layup":1,"cycles":0,"condition":"baseline",)") + ch + "}",
             std::string(R"({"coupon":"C","layup":1,"cycles":-5,"condition":"baseline",)") + ch + "}",
             std::string(R"({"coupon":"C","layup":"1","cycles":0,"condition":"baseline",)") + ch + "}",
             std::string("{") + base + R"(,"load":3.0,)" + ch + "}",
             std::string("{") + base + R"(,"channels":[{"id":0,"signal":[1],"baseline":[1]}]})",
             std::string("{") + base + R"(,"channels":[{"id":253,"signal":[1],"baseline":[1]}]})",
             std::string("{") + base +
                 R"(,"channels":[{"id":4,"signal":[1],"baseline":[1]},{"id":4,"signal":[1],"baseline":[1]}]})",
             std::string("{") + base + R"(,"channels":[{"id":4,"signal":["a"],"baseline":[1]}]})",
             std::string("{") + base + R"(,"channels":[{"id":4,"baseline":[1]}]})",
         }) {
      CAPTURE(line);
      CHECK(test::error_code([&] { parse_record(line); }) == ErrorCode::ingestion);
    }
  }
}

TEST_SUITE("feature rows") {
  TEST_CASE("layout") {
    const auto& names = feature_names();
    REQUIRE(names.size() == feature_width);
    CHECK(names[0] == "pw_c1");
    CHECK(names[251] == "pw_c252");
    CHECK(names[252] == "cc_c1");
    CHECK(names[503] == "cc_c252");
    CHECK(names[504] == "A_11");
    CHECK(names[521] == "D_66");
    CHECK(names[522] == "condition_0");
    CHECK(names[525] == "condition_3");
    CHECK(names[526] == "layup_1");
    CHECK(names[528] == "layup_3");
    CHECK(names[529] == "load");
  }

  TEST_CASE("baseline record has unit features and zero damage") {
    std::mt19937_64 gen(103);
    const auto rec = make_record(gen, Condition::baseline, 1, 0, all_channels(), true);
    const auto row = build_feature_row(rec, context_with({{"L1S11", 177309}}));
    for (std::size_t c = 0; c < 504; ++c) {
      CHECK(row.missing[c] == 0);
      CHECK(row.values[c] == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(row.target == 0.0);
  }

  TEST_CASE("one-hot groups, stiffness and target") {
    std::mt19937_64 gen(107);
    const auto rec = make_record(gen, Condition::loaded, 1, 40000, {5, 6});
    const auto row = build_feature_row(rec, context_with({{"L1S11", 177309}}));
    CHECK(row.target == 40000.0 / 177309.0);
    CHECK(std::abs(row.target - 0.2256) < 5e-5);
    for (int c = 0; c < 4; ++c) CHECK(row.values[condition_offset + c] == (c == 3 ? 1.0 : 0.0));
    for (int l = 0; l < 3; ++l) CHECK(row.values[layup_offset + l] == (l == 0 ? 1.0 : 0.0));
    CHECK(row.values[load_offset] == 22.5);
    const auto expected = laminate::stiffness_feature_row(
        laminate::abd_matrices(laminate::reference_layups().at(1)));
    for (std::size_t i = 0; i < 18; ++i) CHECK(row.values[stiffness_offset + i] == expected[i]);
    std::size_t masked = 0;
    for (auto m : row.missing) masked += m;
    CHECK(masked == 2 * (signals::channel_count - 2));
    CHECK(row.missing[pw_offset + 4] == 0);
    CHECK(row.missing[cc_offset + 5] == 0);
  }

  TEST_CASE("dead channels are masked, not fatal") {
    std::mt19937_64 gen(109);
    auto rec = make_record(gen, Condition::clamped, 2, 10, {1, 2});
    std::fill(rec.channels[0].baseline.begin(), rec.channels[0].baseline.end(), 0.0);
    rec.channels[1].signal.pop_back();
    const auto row = build_feature_row(rec, context_with({{"L2S11", 100}}));
    CHECK(row.missing[pw_offset + 0] == 1);
    CHECK(row.missing[cc_offset + 0] == 1);
    CHECK(row.missing[pw_offset + 1] == 0);
    CHECK(row.missing[cc_offset + 1] == 1);
  }

  TEST_CASE("failure cycles from the record win over the map") {
    std::mt19937_64 gen(113);
    auto rec = make_record(gen, Condition::baseline, 3, 50, {1});
    rec.failure_cycles = 100;
    CHECK(build_feature_row(rec, context_with({{"L3S11", 1000}})).target == 0.5);
  }

  TEST_CASE("ingestion errors") {
    std::mt19937_64 gen(127);
    auto rec = make_record(gen, Condition::baseline, 1, 50, {1});
    CHECK(test::error_code([&] { build_feature_row(rec, context_with({})); }) ==
          ErrorCode::ingestion);
    CHECK(test::error_code([&] { build_feature_row(rec, context_with({{"L1S11", 10}})); }) ==
          ErrorCode::ingestion);
    rec.layup_id = 4;
    CHECK(test::error_code([&] { build_feature_row(rec, context_with({{"L1S11", 100}})); }) ==
          ErrorCode::ingestion);
  }

  TEST_CASE("failure cycle file") {
    std::istringstream good(R"({"L1S11": 177309, "L2S3": 5})");
    const auto m = parse_failure_cycles(good);
    CHECK(m.at("L1S11") == 177309);
    CHECK(m.at("L2S3") == 5);
    std::istringstream bad(R"({"L1S11": -1})");
    CHECK(test::error_code([&] { parse_failure_cycles(bad); }) == ErrorCode::ingestion);
    std::istringstream broken("{");
    CHECK(test::error_code([&] { parse_failure_cycles(broken); }) == ErrorCode::ingestion);
  }
}

TEST_SUITE("ingestion") {
  std::string record_lines(std::mt19937_64& gen) {
    std::string text;
    text += to_json_line(make_record(gen, Condition::baseline, 1, 0, {1, 2}, true)) + "\n";
    text += "\n";
    text += "{broken\n";
    text += to_json_line(make_record(gen, Condition::loaded, 2, 500, {3})) + "\n";
    return text;
  }

  TEST_CASE("strict mode stops at the first bad line") {
    std::mt19937_64 gen(131);
    std::istringstream in(record_lines(gen));
    try {
      ingest_records(in, context_with({{"L1S11", 1000}, {"L2S11", 1000}}), false);
      FAIL("expected an ingestion error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ingestion);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("lenient mode skips and reports") {
    std::mt19937_64 gen(131);
    std::istringstream in(record_lines(gen));
    IngestReport report;
    const auto table = ingest_records(in, context_with({{"L1S11", 1000}, {"L2S11", 1000}}), true,
                                      &report);
    CHECK(table.rows() == 2);
    CHECK(report.lines == 3);
    CHECK(report.rows == 2);
    CHECK(report.warnings == 1);
    REQUIRE(report.messages.size() == 1);
    CHECK(report.messages[0].find("line 3") == 0);
    CHECK(report.masked_cells == table.masked_cells());
    CHECK(table.target(1) == 0.5);
    CHECK(table.layup_of(0) == 1);
    CHECK(table.layup_of(1) == 2);
  }
}

TEST_SUITE("feature csv") {
  TEST_CASE("round trip keeps values and masks") {
    std::mt19937_64 gen(137);
    FeatureTable table;
    for (int i = 0; i < 5; ++i) {
      FeatureRow row;
      for (auto& v : row.values) v = std::uniform_real_distribution<double>(-1e3, 1e3)(gen);
      row.missing[static_cast<std::size_t>(i) * 7] = 1;
      row.values[static_cast<std::size_t>(i) * 7] = 0.0;
      row.target = 0.1 * i + 1.0 / 3.0;
      table.append(row);
    }
    std::stringstream buf;
    write_csv(table, buf);
    const auto text = buf.str();
    const auto back = read_csv(buf);
    REQUIRE(back.rows() == 5);
    CHECK(back.has_targets());
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::equal(back.row(i).begin(), back.row(i).end(), table.row(i).begin()));
      CHECK(std::equal(back.missing(i).begin(), back.missing(i).end(), table.missing(i).begin()));
      CHECK(back.target(i) == table.target(i));
    }
    std::stringstream again;
    write_csv(back, again);
    CHECK(again.str() == text);
    CHECK(text.substr(0, text.find('\n')).find(",load,D") != std::string::npos);
  }

  TEST_CASE("feature-only and header-only files") {
    FeatureTable queries(false);
    queries.append(plain_row({{0, 2.0}}, 0.0));
    std::stringstream buf;
    write_csv(queries, buf);
    const auto header = buf.str().substr(0, buf.str().find('\n') + 1);
    CHECK(header.find(",D\n") == std::string::npos);
    const auto back = read_csv(buf);
    CHECK_FALSE(back.has_targets());
    CHECK(back.rows() == 1);
    CHECK(back.row(0)[0] == 2.0);

    std::istringstream only(header);
    const auto empty = read_csv(only);
    CHECK(empty.rows() == 0);
  }

  TEST_CASE("header mismatch lists the differing columns") {
    FeatureTable t;
    t.append(plain_row({}, 0.5));
    std::stringstream buf;
    write_csv(t, buf);
    std::string text = buf.str();
    text.replace(text.find("cc_c7"), 5, "cc_c8");
    std::istringstream in(text);
    try {
      read_csv(in);
      FAIL("expected an ingestion error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ingestion);
      const std::string msg = e.what();
      CHECK(msg.find("column 259") != std::string::npos);
      CHECK(msg.find("got 'cc_c8'") != std::string::npos);
      CHECK(msg.find("expected 'cc_c7'") != std::string::npos);
    }
  }

  TEST_CASE("bad files") {
    std::istringstream empty("");
    CHECK(test::error_code([&] { read_csv(empty); }) == ErrorCode::ingestion);
    std::istringstream narrow("a,b,c\n1,2,3\n");
    CHECK(test::error_code([&] { read_csv(narrow); }) == ErrorCode::ingestion);

    FeatureTable t;
    t.append(plain_row({}, 0.5));
    std::stringstream buf;
    write_csv(t, buf);
    std::string text = buf.str();
    std::string bad_number = text;
    bad_number.replace(bad_number.find('\n') + 1, 1, "x");
    std::istringstream in1(bad_number);
    CHECK(test::error_code([&] { read_csv(in1); }) == ErrorCode::ingestion);
    std::string short_row = text.substr(0, text.find('\n') + 1) + "1,2\n";
    std::istringstream in2(short_row);
    CHECK(test::error_code([&] { read_csv(in2); }) == ErrorCode::ingestion);
  }
}

TEST_SUITE("scaling") {
  TEST_CASE("minmax and standard examples") {
    const std::vector<double> rows{0.0, 5.0, 10.0, 5.0};
    const auto mm = Scaler::fit(rows, 2, ScalerKind::minmax_pm1);
    std::vector<double> a{0.0, 5.0}, b{10.0, 5.0};
    mm.transform(a);
    mm.transform(b);
    CHECK(a == std::vector<double>{-1.0, 0.0});
    CHECK(b == std::vector<double>{1.0, 0.0});
    CHECK(mm.is_constant(1));
    CHECK_FALSE(mm.is_constant(0));
    CHECK(mm.constant_columns() == 1);

    const auto st = Scaler::fit(std::vector<double>{1.0, 3.0, 5.0}, 1, ScalerKind::standard);
    std::vector<double> x{3.0}, y{5.0};
    st.transform(x);
    st.transform(y);
    CHECK(x[0] == 0.0);
    CHECK(y[0] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  }

  TEST_CASE("inverse round trip") {
    std::mt19937_64 gen(139);
    const std::size_t width = 6;
    auto rows = test::uniform_vector(gen, 40 * width, -50.0, 50.0);
    for (std::size_t i = 0; i < 40; ++i) rows[i * width + 3] = 7.0;
    for (auto kind : {ScalerKind::standard, ScalerKind::minmax_pm1}) {
      const auto s = Scaler::fit(rows, width, kind);
      for (std::size_t i = 0; i < 40; ++i) {
        std::vector<double> r(rows.begin() + i * width, rows.begin() + (i + 1) * width);
        const auto orig = r;
        s.transform(r);
        CHECK(r[3] == 0.0);
        s.inverse(r);
        for (std::size_t c = 0; c < width; ++c) {
          CHECK(std::abs(r[c] - orig[c]) <= 1e-12 * std::max(1.0, std::abs(orig[c])));
        }
      }
    }
  }

  TEST_CASE("errors and names") {
    CHECK(test::error_code([] { Scaler::fit(std::vector<double>{}, 2, ScalerKind::standard); }) ==
          ErrorCode::invalid_input);
    CHECK(test::error_code([] {
            Scaler::fit(std::vector<double>{1.0, 2.0, 3.0}, 2, ScalerKind::standard);
          }) == ErrorCode::invalid_input);
    CHECK(parse_scaler_kind("standard") == ScalerKind::standard);
    CHECK(parse_scaler_kind("minmax_pm1") == ScalerKind::minmax_pm1);
    CHECK(test::error_code([] { parse_scaler_kind("quantile"); }) == ErrorCode::parameter);
  }

  TEST_CASE("median imputation uses observed training cells") {
    FeatureTable t;
    for (double v : {4.0, 1.0, 100.0, 2.0}) t.append(plain_row({{0, v}, {1, v}}, 0.0));
    FeatureRow masked = plain_row({{0, 3.0}}, 0.0);
    masked.missing[1] = 1;
    t.append(masked);
    const auto imp = MedianImputer::fit(t);
    CHECK(imp.median(0) == 3.0);
    CHECK(imp.median(1) == 3.0);
    std::vector<double> row(feature_width, 9.0);
    std::vector<std::uint8_t> miss(feature_width, 0);
    miss[1] = 1;
    imp.apply(row, miss);
    CHECK(row[0] == 9.0);
    CHECK(row[1] == 3.0);
  }
}

TEST_SUITE("split") {
  TEST_CASE("full-size stratified split") {
    std::vector<int> strata(1492);
    for (std::size_t i = 0; i < strata.size(); ++i) strata[i] = i < 516 ? 1 : i < 968 ? 2 : 3;
    const auto s = split_indices(1492, 0.2, 42, strata);
    CHECK(s.train.size() == 1194);
    CHECK(s.test.size() == 298);
    CHECK(std::is_sorted(s.train.begin(), s.train.end()));
    CHECK(std::is_sorted(s.test.begin(), s.test.end()));
    std::vector<std::size_t> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);

    std::map<int, std::size_t> total, in_test;
    for (int k : strata) ++total[k];
    for (auto i : s.test) ++in_test[strata[i]];
    for (auto [k, n] : total) {
      CHECK(std::abs(static_cast<double>(in_test[k]) - 0.2 * static_cast<double>(n)) <= 1.0);
    }

    const auto again = split_indices(1492, 0.2, 42, strata);
    CHECK(again.test == s.test);
    CHECK(split_indices(1492, 0.2, 43, strata).test != s.test);
    CHECK(split_indices(1492, 0.2, 42).test.size() == 298);
  }

  TEST_CASE("random strata stay within one row") {
    std::mt19937_64 gen(149);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t rows = 10 + gen() % 300;
      std::vector<int> strata(rows);
      for (auto& k : strata) k = static_cast<int>(gen() % 4);
      const double frac = std::uniform_real_distribution<double>(0.05, 0.6)(gen);
      SplitIndices s;
      try {
        s = split_indices(rows, frac, gen(), strata);
      } catch (const Error&) {
        continue;
      }
      CHECK(s.test.size() == static_cast<std::size_t>(std::floor(frac * rows + 0.5)));
      std::map<int, double> total, in_test;
      for (int k : strata) total[k] += 1.0;
      for (auto i : s.test) in_test[strata[i]] += 1.0;
      for (auto [k, n] : total) CHECK(std::abs(in_test[k] - frac * n) < 1.0 + 1e-9);
    }
  }

  TEST_CASE("degenerate requests") {
    CHECK(test::error_code([] { split_indices(10, 0.0, 1); }) == ErrorCode::invalid_input);
    CHECK(test::error_code([] { split_indices(10, 1.0, 1); }) == ErrorCode::invalid_input);
    CHECK(test::error_code([] { split_indices(10, 0.01, 1); }) == ErrorCode::invalid_input);
    CHECK(test::error_code([] { split_indices(1, 0.5, 1); }) == ErrorCode::invalid_input);
    CHECK(test::error_code([] { split_indices(4, 0.5, 1, std::vector<int>{1, 2}); }) ==
          ErrorCode::invalid_input);
  }

  TEST_CASE("table split is stratified by layup") {
    FeatureTable t;
    for (int i = 0; i < 30; ++i) {
      t.append(plain_row({{0, static_cast<double>(i)}, {layup_offset + static_cast<std::size_t>(i % 3), 1.0}}, 0.0));
    }
    const auto [train, test_part] = split(t, 0.2, 5);
    CHECK(train.rows() == 24);
    CHECK(test_part.rows() == 6);
    std::map<int, int> counts;
    for (std::size_t i = 0; i < test_part.rows(); ++i) ++counts[test_part.layup_of(i)];
    CHECK(counts[1] == 2);
    CHECK(counts[2] == 2);
    CHECK(counts[3] == 2);
  }
}

TEST_SUITE("online store") {
  const core::MaxEntParams params;

  FeatureTable grid_table(std::mt19937_64& gen, std::size_t rows) {
    FeatureTable t;
    for (std::size_t i = 0; i < rows; ++i) {
      const double a = std::uniform_real_distribution<double>(0.0, 10.0)(gen);
      const double b = std::uniform_real_distribution<double>(-3.0, 3.0)(gen);
      t.append(plain_row({{0, a}, {1, b}, {load_offset, a * b}}, 0.05 * a + 0.01 * b));
    }
    return t;
  }

  TEST_CASE("append then predict returns the appended target without refit") {
    std::mt19937_64 gen(151);
    OnlineStore store(grid_table(gen, 60), ScalerKind::minmax_pm1);
    CHECK(store.refit_count() == 1);
    const auto row = plain_row({{0, 4.321}, {1, 1.234}, {load_offset, 7.0}}, 0.777);
    CHECK(store.append(row) == 60);
    CHECK(store.rows() == 61);
    CHECK(store.refit_count() == 1);
    FeatureTable q(false);
    q.append(row);
    const auto res = store.predict(q, params);
    REQUIRE(std::holds_alternative<core::Prediction>(res[0]));
    CHECK(std::get<core::Prediction>(res[0]).value[0] == 0.777);
    const auto wk = store.predict_wknn(q, 5);
    CHECK(std::get<eval::WknnPrediction>(wk[0]).value[0] == 0.777);
  }

  TEST_CASE("indices follow append order and old rows never change") {
    std::mt19937_64 gen(157);
    OnlineStore store(grid_table(gen, 20), ScalerKind::standard);
    const auto before = store.table();
    const auto snap_before = store.snapshot();
    for (int i = 0; i < 10; ++i) {
      CHECK(store.append(plain_row({{0, 1.0 * i}}, 0.1)) == 20u + i);
    }
    const auto after = store.table();
    REQUIRE(after.rows() == 30);
    for (std::size_t i = 0; i < before.rows(); ++i) {
      CHECK(std::equal(before.row(i).begin(), before.row(i).end(), after.row(i).begin()));
      CHECK(before.target(i) == after.target(i));
      const auto p0 = snap_before->dataset.point(i);
      const auto p1 = store.snapshot()->dataset.point(i);
      CHECK(std::equal(p0.begin(), p0.end(), p1.begin()));
    }
    CHECK(snap_before->dataset.rows() == 20);
    CHECK(after.row(29)[0] == 9.0);
  }

  TEST_CASE("refresh mode refits on every append") {
    std::mt19937_64 gen(163);
    OnlineStore store(grid_table(gen, 20), ScalerKind::minmax_pm1);
    store.set_refresh_on_append(true);
    store.append(plain_row({{0, 100.0}}, 0.5));
    store.append(plain_row({{0, 200.0}}, 0.5));
    CHECK(store.refit_count() == 3);
    const auto snap = store.snapshot();
    CHECK(snap->dataset.point(21)[0] == doctest::Approx(1.0));
  }

  TEST_CASE("predictions drift toward appended neighbours") {
    std::mt19937_64 gen(167);
    FeatureTable t;
    // A ring of zero-target rows around the query.
    for (int i = 0; i < 24; ++i) {
      const double a = 2.0 * 3.14159265358979 * i / 24.0;
      t.append(plain_row({{0, std::cos(a)}, {1, std::sin(a)}}, 0.0));
    }
    OnlineStore store(t, ScalerKind::minmax_pm1);
    FeatureTable q(false);
    q.append(plain_row({{0, 0.013}, {1, -0.007}}, 0.0));

    auto predict = [&] {
      return std::get<core::Prediction>(store.predict(q, params)[0]).value[0];
    };
    std::vector<double> path{predict()};
    for (int k = 0; k < 100; ++k) {
      const double r = 0.9 * std::pow(0.96, k);
      const double a = 2.399963 * k;
      store.append(plain_row({{0, 0.013 + r * std::cos(a)}, {1, -0.007 + r * std::sin(a)}}, 1.0));
      path.push_back(predict());
    }
    CHECK(path.front() == doctest::Approx(0.0));
    CHECK(path.back() > 0.99);
    // Once the prediction is within a few solver tolerances of the limit it
    // may jitter at that level; before that every append must move it up.
    const double band = 3.0 * params.convergence_tolerance;
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i - 1] < 1.0 - band) {
        CHECK(path[i] > path[i - 1]);
      } else {
        CHECK(path[i] >= 1.0 - band);
      }
    }
    CHECK(store.refit_count() == 1);
  }

  TEST_CASE("minmax predictions ignore affine column transforms") {
    std::mt19937_64 gen(173);
    const auto raw = grid_table(gen, 80);
    FeatureTable moved;
    for (std::size_t i = 0; i < raw.rows(); ++i) {
      FeatureRow r;
      std::copy(raw.row(i).begin(), raw.row(i).end(), r.values.begin());
      r.values[0] = 4.0 * r.values[0] - 3.0;
      r.values[1] = 0.5 * r.values[1] + 1000.0;
      r.target = raw.target(i);
      moved.append(r);
    }
    FeatureTable q_raw(false), q_moved(false);
    for (int i = 0; i < 10; ++i) {
      const double a = 0.5 + i, b = -2.5 + 0.5 * i;
      q_raw.append(plain_row({{0, a}, {1, b}, {load_offset, a * b}}, 0.0));
      q_moved.append(plain_row({{0, 4.0 * a - 3.0}, {1, 0.5 * b + 1000.0}, {load_offset, a * b}}, 0.0));
    }
    OnlineStore s1(raw, ScalerKind::minmax_pm1), s2(moved, ScalerKind::minmax_pm1);
    const auto p1 = s1.predict(q_raw, params);
    const auto p2 = s2.predict(q_moved, params);
    for (std::size_t i = 0; i < p1.size(); ++i) {
      CHECK(std::get<core::Prediction>(p1[i]).value[0] ==
            doctest::Approx(std::get<core::Prediction>(p2[i]).value[0]).epsilon(1e-9));
    }
  }

  TEST_CASE("readers see whole snapshots while a writer appends") {
    std::mt19937_64 gen(179);
    OnlineStore store(grid_table(gen, 30), ScalerKind::minmax_pm1);
    std::atomic<bool> done{false};
    std::atomic<int> bad{0};
    std::thread reader([&] {
      std::size_t last = 0;
      while (!done) {
        const auto snap = store.snapshot();
        const auto rows = snap->dataset.rows();
        if (rows < last || snap->dataset.points().size() != rows * feature_width) ++bad;
        last = rows;
      }
    });
    for (int i = 0; i < 200; ++i) store.append(plain_row({{0, 0.01 * i}}, 0.3));
    done = true;
    reader.join();
    CHECK(bad == 0);
    CHECK(store.rows() == 230);
  }

  TEST_CASE("store errors") {
    CHECK(test::error_code([] { OnlineStore(FeatureTable(), ScalerKind::standard); }) ==
          ErrorCode::invalid_input);
    FeatureTable no_targets(false);
    no_targets.append(plain_row({}, 0.0));
    CHECK(test::error_code([&] { OnlineStore(no_targets, ScalerKind::standard); }) ==
          ErrorCode::invalid_input);
  }
}
