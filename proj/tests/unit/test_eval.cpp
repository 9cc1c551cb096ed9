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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "eval/metrics.hpp"
#include "eval/synthetic.hpp"
#include "eval/toy.hpp"
#include "eval/wknn.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace maxent;
using namespace maxent::eval;

TEST_CASE("toy truth functions") {
  auto r = toy_regression_truth(0.0, 0.0);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(0.0));
  r = toy_regression_truth(0.3, std::numbers::pi / 2);
  CHECK(r[0] == doctest::Approx(std::cos(1.0)));
  CHECK(r[1] == doctest::Approx(0.3 * std::numbers::pi / 2));

  auto c = toy_classification_truth(0.1, 0.99);
  CHECK(c[0] == 0.0);  // sin(pi/2) = 1 > 0.99
  CHECK(c[1] == 1.0);
  c = toy_classification_truth(0.0, 0.0);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 0.0);
}

TEST_CASE("decision boundary distance") {
  // y2 boundary x2 = cos(5 pi x1) passes through (0.1, 0).
  CHECK(decision_boundary_distance(1, 0.1, 0.0) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(decision_boundary_distance(0, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-6));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double x1 = u(gen), x2 = u(gen);
    for (int out = 0; out < 2; ++out) {
      double best = 1e9;
      for (int i = 0; i <= 200000; ++i) {
        const double s = i / 200000.0;
        const double y = out == 0 ? std::sin(5 * std::numbers::pi * s)
                                  : std::cos(5 * std::numbers::pi * s);
        if (y < 0.0 || y > 1.0) continue;
        best = std::min(best, std::hypot(x1 - s, x2 - y));
      }
      CHECK(decision_boundary_distance(out, x1, x2) <= best + 1e-9);
      CHECK(decision_boundary_distance(out, x1, x2) >= best - 1e-4);
    }
  }
}

TEST_CASE("wknn examples") {
  auto ds = core::Dataset::regression({0.0, 1.0, 3.0}, 1, {0.0, 1.0, 3.0}, 1);
  const double q[] = {0.5};
  auto p = wknn_predict(ds, q, 2);
  CHECK(p.value[0] == doctest::Approx(0.5));
  REQUIRE(p.neighbors.size() == 2);
  CHECK(p.neighbors[0] == 0);  // equal distance keeps row order
  CHECK(p.neighbors[1] == 1);

  const double exact[] = {3.0};
  CHECK(wknn_predict(ds, exact, 3).value[0] == 3.0);

  CHECK(test::error_code([&] { wknn_predict(ds, q, 0); }) == ErrorCode::parameter);
  CHECK(test::error_code([&] { wknn_predict(ds, q, 4); }) == ErrorCode::parameter);
}

TEST_CASE("wknn with k = m and equal distances is the mean") {
  auto ds = core::Dataset::regression({1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0}, 2,
                                      {2.0, 4.0, 6.0, 8.0}, 1);
  const double q[] = {0.0, 0.0};
  CHECK(wknn_predict(ds, q, 4).value[0] == doctest::Approx(5.0));
}

TEST_CASE("wknn classification takes the heaviest class") {
  auto ds = core::Dataset::classification({0.0, 1.0, 1.1, 5.0}, 1, {7, 3, 3, 9});
  const double q[] = {0.2};
  CHECK(wknn_predict(ds, q, 3).class_id == 7);  // 1/0.2 beats 1/0.8 + 1/0.9
  const double q2[] = {0.5};
  CHECK(wknn_predict(ds, q2, 3).class_id == 3);
}

TEST_CASE("wknn matches the full-sort oracle") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t dim = 1 + t % 5, m = 20 + t;
    auto flat = test::uniform_vector(gen, m * dim, -1.0, 1.0);
    auto labels = test::uniform_vector(gen, m, 0.0, 1.0);
    std::vector<std::vector<double>> pts(m);
    for (std::size_t i = 0; i < m; ++i) pts[i].assign(flat.begin() + i * dim, flat.begin() + (i + 1) * dim);
    auto q = test::uniform_vector(gen, dim, -1.0, 1.0);
    auto ds = core::Dataset::regression(flat, dim, labels, 1);
    const std::size_t k = 1 + t % 10;
    CHECK(wknn_predict(ds, q, k).value[0] ==
          doctest::Approx(oracle::knn_full_sort(pts, labels, q, k)).epsilon(1e-12));
  }
}

TEST_CASE("wknn batch parallel equals sequential") {
  std::mt19937_64 gen(4);
  auto ds = core::Dataset::regression(test::uniform_vector(gen, 300, 0, 1), 3,
                                      test::uniform_vector(gen, 100, 0, 1), 1);
  auto qs = test::uniform_vector(gen, 60, 0, 1);
  auto a = wknn_batch(ds, qs, 5, 1);
  auto b = wknn_batch(ds, qs, 5, 4);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::get<WknnPrediction>(a[i]).value == std::get<WknnPrediction>(b[i]).value);
  }
}

TEST_CASE("metrics") {
  const std::vector<double> t{0, 1, 2}, p{0, 1, 1};
  auto r = compute_metrics(t, p);
  CHECK(r.mse == doctest::Approx(1.0 / 3.0));
  CHECK(r.r2 == doctest::Approx(0.5));
  CHECK(r.n == 3);
  CHECK(r.residuals == std::vector<double>{0, 0, 1});
  CHECK(compute_metrics(t, t).r2 == 1.0);

  const std::vector<double> flat{1, 1, 1};
  CHECK(test::error_code([&] { compute_metrics(flat, t); }) == ErrorCode::undefined_metric);
  CHECK(test::error_code([&] { compute_metrics(t, std::vector<double>{1}); }).has_value());
  CHECK(test::error_code([&] { compute_metrics(std::vector<double>{}, std::vector<double>{}); })
            .has_value());

  CHECK(accuracy(t, p) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("toy data is deterministic and shaped") {
  ToySpec spec;
  spec.train_count = 40;
  spec.eval_count = 5;
  auto a = make_toy_data(spec), b = make_toy_data(spec);
  CHECK(a.train_x == b.train_x);
  CHECK(a.train_x.size() == 80);
  CHECK(a.eval_x.size() == 10);
  CHECK(a.eval_x[2] == 0.25);
  CHECK(a.eval_x[3] == 0.25);
  for (double x : a.train_x) CHECK((x >= 0.0 && x < 1.0));
  spec.seed = 8;
  CHECK(make_toy_data(spec).train_x != a.train_x);

  spec.train_count = 0;
  CHECK(test::error_code([&] { spec.validate(); }) == ErrorCode::invalid_input);
}

TEST_CASE("toy regression stays inside the label envelope") {
  ToySpec spec;
  spec.train_count = 200;
  spec.eval_count = 11;
  auto data = make_toy_data(spec);
  auto rep = run_toy_experiment(spec, ToyPredictor::maxent());
  REQUIRE(rep.points.size() == 11);
  for (int o = 0; o < 2; ++o) {
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = o; i < data.train_y.size(); i += 2) {
      lo = std::min(lo, data.train_y[i]);
      hi = std::max(hi, data.train_y[i]);
    }
    for (const auto& pt : rep.points) {
      CHECK(pt.y_pred[o] >= lo - 1e-12);
      CHECK(pt.y_pred[o] <= hi + 1e-12);
    }
  }
  CHECK(rep.csv().rfind("x1,x2,y1_true,y2_true,y1_pred,y2_pred,n_neighbors,h_star,exit_reason", 0) ==
        0);
}

TEST_CASE("toy wknn and parallel runs agree") {
  ToySpec spec;
  spec.train_count = 150;
  spec.eval_count = 9;
  auto a = run_toy_experiment(spec, ToyPredictor::maxent(), 1);
  auto b = run_toy_experiment(spec, ToyPredictor::maxent(), 3);
  CHECK(a.csv() == b.csv());
  auto w = run_toy_experiment(spec, ToyPredictor::wknn(5));
  CHECK_FALSE(w.points.front().h_star.has_value());
}

TEST_CASE("synthetic table shape") {
  SyntheticSpec spec;
  spec.rows_per_layup = {20, 15, 10};
  auto s = make_synthetic_table(spec);
  CHECK(s.table.rows() == 45);
  CHECK(s.planted_columns.size() == 15);
  CHECK(std::is_sorted(s.planted_columns.begin(), s.planted_columns.end()));
  CHECK(s.table.row(0).size() == 530);
  for (double t : s.table.targets()) CHECK((t >= 0.0 && t <= 1.0));
  int counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < s.table.rows(); ++i) counts[s.table.layup_of(i)]++;
  CHECK(counts[1] == 20);
  CHECK(counts[2] == 15);
  CHECK(counts[3] == 10);
  auto again = make_synthetic_table(spec);
  CHECK(std::vector<double>(again.table.targets().begin(), again.table.targets().end()) ==
        std::vector<double>(s.table.targets().begin(), s.table.targets().end()));
}
