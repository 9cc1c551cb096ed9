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

#include "eval/toy.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/maxent.hpp"
#include "core/random.hpp"
#include "core/text.hpp"
#include "eval/wknn.hpp"

namespace maxent::eval {

void ToySpec::validate() const {
  if (train_count == 0) fail(ErrorCode::invalid_input, "toy training set must not be empty");
  if (eval_count == 0) fail(ErrorCode::invalid_input, "toy evaluation set must not be empty");
}

std::array<double, 2> toy_regression_truth(double x1, double x2) {
  return {std::cos(x1 / 0.3) * std::sin(x2), x1 * x2};
}

std::array<double, 2> toy_classification_truth(double x1, double x2) {
  const double w = 5.0 * std::numbers::pi * x1;
  return {x2 >= std::sin(w) ? 1.0 : 0.0, x2 >= std::cos(w) ? 1.0 : 0.0};
}

double decision_boundary_distance(int output, double x1, double x2) {
  constexpr std::size_t samples = 200000;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double w = 5.0 * std::numbers::pi * t;
    const double c = output == 0 ? std::sin(w) : std::cos(w);
    if (c < 0.0 || c > 1.0) continue;
    best = std::min(best, std::hypot(x1 - t, x2 - c));
  }
  return best;
}

ToyData make_toy_data(const ToySpec& spec) {
  spec.validate();
  auto truth = spec.kind == ToyKind::regression ? toy_regression_truth : toy_classification_truth;
  Rng rng(spec.seed);
  ToyData data;
  for (std::size_t i = 0; i < spec.train_count; ++i) {
    const double x1 = rng.uniform();
    const double x2 = rng.uniform();
    const auto y = truth(x1, x2);
    data.train_x.insert(data.train_x.end(), {x1, x2});
    data.train_y.insert(data.train_y.end(), y.begin(), y.end());
  }
  for (std::size_t i = 0; i < spec.eval_count; ++i) {
    const double x =
        spec.eval_count == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(spec.eval_count - 1);
    const auto y = truth(x, x);
    data.eval_x.insert(data.eval_x.end(), {x, x});
    data.eval_y.insert(data.eval_y.end(), y.begin(), y.end());
  }
  return data;
}

namespace {

template <class T>
const T& unwrap(const std::variant<T, Error>& result) {
  if (const auto* e = std::get_if<Error>(&result)) throw *e;
  return std::get<T>(result);
}

void fill_maxent(const ToyData& data, const ToySpec& spec, const ToyPredictor& predictor,
                 unsigned parallelism, std::vector<ToyPoint>& points) {
  auto record = [](ToyPoint& p, const core::Diagnostics& d) {
    p.n_neighbors = d.subset_size;
    p.h_star = d.h_star;
    p.exit_reason = core::to_string(d.exit_reason);
  };
  if (spec.kind == ToyKind::regression) {
    const auto ds = core::Dataset::regression(data.train_x, 2, data.train_y, 2);
    const auto results = core::predict_batch(ds, data.eval_x, predictor.params, parallelism);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pred = unwrap(results[i]);
      points[i].y_pred = {pred.value[0], pred.value[1]};
      record(points[i], pred.diagnostics);
    }
    return;
  }
  for (std::size_t out = 0; out < 2; ++out) {
    std::vector<std::int64_t> classes(spec.train_count);
    for (std::size_t i = 0; i < spec.train_count; ++i) {
      classes[i] = static_cast<std::int64_t>(data.train_y[2 * i + out]);
    }
    const auto ds = core::Dataset::classification(data.train_x, 2, classes);
    const auto results = core::predict_batch(ds, data.eval_x, predictor.params, parallelism);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pred = unwrap(results[i]);
      points[i].y_pred[out] = static_cast<double>(pred.class_id);
      if (out == 0) record(points[i], pred.diagnostics);
    }
  }
}

void fill_wknn(const ToyData& data, const ToySpec& spec, const ToyPredictor& predictor,
               unsigned parallelism, std::vector<ToyPoint>& points) {
  if (spec.kind == ToyKind::regression) {
    const auto ds = core::Dataset::regression(data.train_x, 2, data.train_y, 2);
    const auto results = wknn_batch(ds, data.eval_x, predictor.k, parallelism);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pred = unwrap(results[i]);
      points[i].y_pred = {pred.value[0], pred.value[1]};
      points[i].n_neighbors = predictor.k;
    }
    return;
  }
  for (std::size_t out = 0; out < 2; ++out) {
    std::vector<std::int64_t> classes(spec.train_count);
    for (std::size_t i = 0; i < spec.train_count; ++i) {
      classes[i] = static_cast<std::int64_t>(data.train_y[2 * i + out]);
    }
    const auto ds = core::Dataset::classification(data.train_x, 2, classes);
    const auto results = wknn_batch(ds, data.eval_x, predictor.k, parallelism);
    for (std::size_t i = 0; i < points.size(); ++i) {
      points[i].y_pred[out] = static_cast<double>(unwrap(results[i]).class_id);
      points[i].n_neighbors = predictor.k;
    }
  }
}

ToyOutputSummary summarize(const std::vector<ToyPoint>& points, std::size_t out, ToyKind kind) {
  ToyOutputSummary s;
  s.name = out == 0 ? "y1" : "y2";
  std::vector<double> yt, yp;
  double interior = 0.0, boundary = 0.0;
  std::size_t n_interior = 0, n_boundary = 0, hits = 0, band_hits = 0;
  for (const auto& p : points) {
    yt.push_back(p.y_true[out]);
    yp.push_back(p.y_pred[out]);
    const double err = std::abs(p.y_true[out] - p.y_pred[out]);
    s.mae += err;
    if (p.x1 >= 0.1 && p.x1 <= 0.9) {
      interior += err;
      ++n_interior;
    } else {
      boundary += err;
      ++n_boundary;
    }
    if (kind == ToyKind::classification) {
      const bool hit = p.y_true[out] == p.y_pred[out];
      hits += hit;
      if (decision_boundary_distance(static_cast<int>(out), p.x1, p.x2) > boundary_band) {
        ++s.band_count;
        band_hits += hit;
      }
    }
  }
  s.mae /= static_cast<double>(points.size());
  if (n_interior) s.interior_mae = interior / static_cast<double>(n_interior);
  if (n_boundary) s.boundary_mae = boundary / static_cast<double>(n_boundary);
  if (kind == ToyKind::classification) {
    s.accuracy = static_cast<double>(hits) / static_cast<double>(points.size());
    if (s.band_count) s.band_accuracy = static_cast<double>(band_hits) / static_cast<double>(s.band_count);
  }
  try {
    s.metrics = compute_metrics(yt, yp);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::undefined_metric) throw;
  }
  return s;
}

}  // namespace

ToyReport run_toy_experiment(const ToySpec& spec, const ToyPredictor& predictor,
                             unsigned parallelism) {
  const ToyData data = make_toy_data(spec);
  ToyReport rep;
  rep.spec = spec;
  rep.predictor = predictor.kind == ToyPredictor::Kind::maxent
                      ? "maxent"
                      : "wknn(k=" + std::to_string(predictor.k) + ")";
  rep.points.resize(spec.eval_count);
  for (std::size_t i = 0; i < spec.eval_count; ++i) {
    auto& p = rep.points[i];
    p.x1 = data.eval_x[2 * i];
    p.x2 = data.eval_x[2 * i + 1];
    p.y_true = {data.eval_y[2 * i], data.eval_y[2 * i + 1]};
  }
  if (predictor.kind == ToyPredictor::Kind::maxent) {
    fill_maxent(data, spec, predictor, parallelism, rep.points);
  } else {
    fill_wknn(data, spec, predictor, parallelism, rep.points);
  }
  rep.outputs = {summarize(rep.points, 0, spec.kind), summarize(rep.points, 1, spec.kind)};
  return rep;
}

std::string ToyReport::csv() const {
  std::ostringstream out;
  out << "x1,x2,y1_true,y2_true,y1_pred,y2_pred,n_neighbors,h_star,exit_reason\n";
  for (const auto& p : points) {
    out << format_number(p.x1) << ',' << format_number(p.x2) << ','
        << format_number(p.y_true[0]) << ',' << format_number(p.y_true[1]) << ','
        << format_number(p.y_pred[0]) << ',' << format_number(p.y_pred[1]) << ','
        << p.n_neighbors << ',' << (p.h_star ? format_number(*p.h_star) : std::string()) << ','
        << p.exit_reason << '\n';
  }
  return out.str();
}

std::string ToyReport::metrics_json() const {
  nlohmann::ordered_json j;
  j["kind"] = spec.kind == ToyKind::regression ? "regression" : "classification";
  j["predictor"] = predictor;
  j["seed"] = spec.seed;
  j["train"] = spec.train_count;
  j["eval"] = spec.eval_count;
  for (const auto& o : outputs) {
    nlohmann::ordered_json m;
    if (o.metrics) {
      m["r2"] = o.metrics->r2;
      m["mse"] = o.metrics->mse;
    } else {
      m["r2"] = nullptr;
      m["mse"] = nullptr;
    }
    m["n"] = points.size();
    m["mae"] = o.mae;
    m["interior_mae"] = o.interior_mae;
    m["boundary_mae"] = o.boundary_mae;
    if (spec.kind == ToyKind::classification) {
      m["accuracy"] = o.accuracy;
      m["band_accuracy"] = o.band_accuracy;
      m["band_n"] = o.band_count;
    }
    j[o.name] = std::move(m);
  }
  return j.dump(2) + "\n";
}

}  // namespace maxent::eval
