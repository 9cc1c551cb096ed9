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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <maxent/maxent.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "maxent_capi_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

maxent_dataset* unit_segment() {
  maxent_dataset* ds = nullptr;
  REQUIRE(maxent_dataset_create_regression(1, 1, &ds) == MAXENT_OK);
  for (double x : {0.0, 1.0}) {
    const double y = x;
    REQUIRE(maxent_dataset_add_regression(ds, &x, &y) == MAXENT_OK);
  }
  return ds;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(maxent_version()).size() > 0);
  CHECK(std::string(maxent_status_name(MAXENT_OK)) == "ok");
  CHECK(std::string(maxent_status_name(MAXENT_ERR_PARSE)) == "parse");
  CHECK(std::string(maxent_status_name(static_cast<maxent_status>(999))) == "unknown");
}

TEST_CASE("params") {
  maxent_params p;
  maxent_params_default(&p);
  CHECK(p.threshold_filter == 0.01);
  CHECK(p.threshold_entropy == 0.01);
  CHECK(maxent_params_validate(&p) == MAXENT_OK);
  p.threshold_filter = 1.5;
  CHECK(maxent_params_validate(&p) == MAXENT_ERR_PARAMETER);
  CHECK(std::string(maxent_last_error()).size() > 0);
  CHECK(maxent_params_validate(nullptr) == MAXENT_ERR_NULL_ARGUMENT);
}

TEST_CASE("dataset handles") {
  maxent_dataset* ds = nullptr;
  CHECK(maxent_dataset_create_regression(0, 1, &ds) != MAXENT_OK);
  CHECK(ds == nullptr);
  ds = unit_segment();
  CHECK(maxent_dataset_rows(ds) == 2);
  CHECK(maxent_dataset_dim(ds) == 1);
  const double bad = NAN, y = 0.0;
  CHECK(maxent_dataset_add_regression(ds, &bad, &y) == MAXENT_ERR_INVALID_INPUT);
  CHECK(maxent_dataset_add_class(ds, &y, 3) != MAXENT_OK);
  CHECK(maxent_dataset_rows(ds) == 2);
  maxent_dataset_destroy(ds);
  maxent_dataset_destroy(nullptr);
}

TEST_CASE("predict batch through the C API") {
  maxent_dataset* ds = unit_segment();
  const double queries[] = {0.0, 0.5};
  maxent_params p;
  maxent_params_default(&p);
  p.convergence_tolerance = 1e-9;
  p.it_local_min = 200000;
  maxent_predictions* preds = nullptr;
  REQUIRE(maxent_predict_batch(ds, queries, 2, &p, 2, &preds) == MAXENT_OK);
  REQUIRE(maxent_predictions_count(preds) == 2);

  double v = -1.0;
  size_t written = 0;
  CHECK(maxent_prediction_value(preds, 0, &v, 1, &written) == MAXENT_OK);
  CHECK(written == 1);
  CHECK(v == 0.0);
  maxent_diagnostics d;
  CHECK(maxent_prediction_diagnostics(preds, 0, &d) == MAXENT_OK);
  CHECK(d.duplicate == 1);

  CHECK(maxent_prediction_value(preds, 1, &v, 1, &written) == MAXENT_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-8));
  const size_t* rows = nullptr;
  const double* weights = nullptr;
  size_t count = 0;
  CHECK(maxent_prediction_neighbors(preds, 1, &rows, &weights, &count) == MAXENT_OK);
  CHECK(count == 2);
  CHECK(weights != nullptr);
  CHECK(std::string(maxent_prediction_diagnostics_json(preds, 1)).find("h_star") !=
        std::string::npos);

  CHECK(maxent_prediction_value(preds, 5, &v, 1, &written) == MAXENT_ERR_OUT_OF_RANGE);

  const auto path = (scratch_dir() / "preds.csv").string();
  CHECK(maxent_predictions_write_csv(preds, path.c_str()) == MAXENT_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "row,D_pred,exit_reason,h_star,subset_size,iterations,residual,weight_sum_gap,rounds,"
        "duplicate,error");
  maxent_predictions_destroy(preds);

  CHECK(maxent_predict_batch(ds, nullptr, 2, &p, 1, &preds) == MAXENT_ERR_NULL_ARGUMENT);
  maxent_dataset_destroy(ds);
}

TEST_CASE("per-query failures are reported per query") {
  maxent_dataset* ds = nullptr;
  REQUIRE(maxent_dataset_create_regression(1, 1, &ds) == MAXENT_OK);
  const double x = 0.0, y = 1.0;
  REQUIRE(maxent_dataset_add_regression(ds, &x, &y) == MAXENT_OK);
  const double queries[] = {0.0, NAN};
  maxent_predictions* preds = nullptr;
  REQUIRE(maxent_predict_batch(ds, queries, 2, nullptr, 1, &preds) == MAXENT_OK);
  CHECK(maxent_prediction_status(preds, 0) == MAXENT_OK);
  CHECK(maxent_prediction_status(preds, 1) == MAXENT_ERR_INVALID_INPUT);
  CHECK(std::string(maxent_prediction_error(preds, 1)).size() > 0);
  maxent_predictions_destroy(preds);
  maxent_dataset_destroy(ds);
}

TEST_CASE("wknn through the C API") {
  maxent_dataset* ds = unit_segment();
  const double q = 0.25;
  maxent_predictions* preds = nullptr;
  REQUIRE(maxent_predict_wknn(ds, &q, 1, 2, 1, &preds) == MAXENT_OK);
  double v = 0.0;
  size_t written = 0;
  CHECK(maxent_prediction_value(preds, 0, &v, 1, &written) == MAXENT_OK);
  CHECK(v == doctest::Approx(0.25));
  maxent_diagnostics d;
  CHECK(maxent_prediction_diagnostics(preds, 0, &d) == MAXENT_ERR_INVALID_INPUT);
  maxent_predictions_destroy(preds);
  CHECK(maxent_predict_wknn(ds, &q, 1, 3, 1, &preds) == MAXENT_ERR_PARAMETER);
  maxent_dataset_destroy(ds);
}

TEST_CASE("classification through the C API") {
  maxent_dataset* ds = nullptr;
  REQUIRE(maxent_dataset_create_classification(1, &ds) == MAXENT_OK);
  const double xs[] = {0.0, 0.1, 0.2, 5.0};
  const int64_t cs[] = {4, 4, 4, 9};
  for (int i = 0; i < 4; ++i) REQUIRE(maxent_dataset_add_class(ds, &xs[i], cs[i]) == MAXENT_OK);
  const double q = 0.05;
  maxent_predictions* preds = nullptr;
  REQUIRE(maxent_predict_batch(ds, &q, 1, nullptr, 1, &preds) == MAXENT_OK);
  int64_t cls = 0;
  CHECK(maxent_prediction_class(preds, 0, &cls) == MAXENT_OK);
  CHECK(cls == 4);
  maxent_predictions_destroy(preds);
  maxent_dataset_destroy(ds);
}

TEST_CASE("clt through the C API") {
  maxent_abd abd;
  REQUIRE(maxent_clt("[0/90]_S", nullptr, &abd) == MAXENT_OK);
  CHECK(abd.plies == 4);
  for (double b : abd.b) CHECK(std::abs(b) < 1e-9);
  CHECK(abd.features[0] == abd.a[0]);
  CHECK(abd.features[5] == abd.a[8]);
  CHECK(std::string(maxent_stiffness_feature_name(17)) == "D_66");
  CHECK(std::string(maxent_stiffness_feature_name(18)).empty());

  CHECK(maxent_clt("[0/90", nullptr, &abd) == MAXENT_ERR_PARSE);
  CHECK(maxent_last_error_position() == 5);

  maxent_ply ply;
  maxent_ply_default(&ply);
  CHECK(ply.e1 == 137.5);
  ply.nu12 = 0.6;
  CHECK(maxent_clt("[0]", &ply, &abd) == MAXENT_ERR_INVALID_MATERIAL);
}

TEST_CASE("tables, split and store through the C API") {
  CHECK(maxent_feature_width() == 530);
  CHECK(std::string(maxent_feature_name(530)) == "D");
  CHECK(std::string(maxent_feature_name(531)).empty());

  const auto path = scratch_dir() / "table.csv";
  {
    std::ofstream out(path);
    for (size_t c = 0; c < 530; ++c) out << maxent_feature_name(c) << ',';
    out << "D\n";
    for (int r = 0; r < 10; ++r) {
      for (size_t c = 0; c < 530; ++c) out << (c == 0 ? r * 0.1 : 1.0) << ',';
      out << r * 0.1 << '\n';
    }
  }
  maxent_table* table = nullptr;
  REQUIRE(maxent_table_read_csv(path.string().c_str(), &table) == MAXENT_OK);
  CHECK(maxent_table_rows(table) == 10);
  CHECK(maxent_table_has_targets(table) == 1);
  std::vector<double> row(530);
  double target = -1.0;
  CHECK(maxent_table_row(table, 3, row.data(), &target) == MAXENT_OK);
  CHECK(row[0] == doctest::Approx(0.3));
  CHECK(target == doctest::Approx(0.3));

  maxent_table *train = nullptr, *test = nullptr;
  REQUIRE(maxent_table_split(table, 0.2, 1, 0, &train, &test) == MAXENT_OK);
  CHECK(maxent_table_rows(train) + maxent_table_rows(test) == 10);
  CHECK(maxent_table_rows(test) == 2);

  maxent_store* store = nullptr;
  REQUIRE(maxent_store_create(table, MAXENT_SCALER_MINMAX, &store) == MAXENT_OK);
  CHECK(maxent_store_rows(store) == 10);
  row[0] = 2.0;
  CHECK(maxent_store_append_row(store, row.data(), 0.777) == MAXENT_OK);
  CHECK(maxent_store_rows(store) == 11);
  CHECK(maxent_store_refit_count(store) == 1);

  maxent_table* snapshot = nullptr;
  REQUIRE(maxent_store_table(store, &snapshot) == MAXENT_OK);
  CHECK(maxent_table_rows(snapshot) == 11);
  maxent_predictions* preds = nullptr;
  REQUIRE(maxent_store_predict_wknn(store, snapshot, 1, 1, &preds) == MAXENT_OK);
  double v = 0.0;
  size_t written = 0;
  CHECK(maxent_prediction_value(preds, 10, &v, 1, &written) == MAXENT_OK);
  CHECK(v == 0.777);
  maxent_predictions_destroy(preds);

  maxent_table_destroy(snapshot);
  maxent_store_destroy(store);
  maxent_table_destroy(train);
  maxent_table_destroy(test);
  maxent_table_destroy(table);

  CHECK(maxent_table_read_csv((scratch_dir() / "missing.csv").string().c_str(), &table) ==
        MAXENT_ERR_IO);
}

TEST_CASE("metrics and toy runs through the C API") {
  const double t[] = {0, 1, 2}, p[] = {0, 1, 1};
  maxent_metrics m;
  REQUIRE(maxent_metrics_compute(t, p, 3, &m) == MAXENT_OK);
  CHECK(m.r2 == doctest::Approx(0.5));
  const double flat[] = {1, 1, 1};
  CHECK(maxent_metrics_compute(flat, p, 3, &m) == MAXENT_ERR_UNDEFINED_METRIC);

  maxent_toy_spec spec;
  maxent_toy_spec_default(&spec, MAXENT_TOY_REGRESSION);
  CHECK(spec.train_count == 500);
  spec.train_count = 60;
  spec.eval_count = 5;
  maxent_toy_report* rep = nullptr;
  REQUIRE(maxent_toy_run(&spec, MAXENT_PREDICTOR_WKNN, nullptr, 5, 1, &rep) == MAXENT_OK);
  const std::string csv = maxent_toy_report_csv(rep);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(std::string(maxent_toy_report_metrics_json(rep)).find("y1") != std::string::npos);
  maxent_toy_report_destroy(rep);
}
