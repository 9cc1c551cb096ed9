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

#include "eval/wknn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "core/parallel.hpp"

namespace maxent::eval {

WknnPrediction wknn_predict(const core::Dataset& dataset, std::span<const double> query,
                            std::size_t k) {
  const std::size_t m = dataset.rows();
  if (k == 0 || k > m) {
    fail(ErrorCode::parameter, "k = " + std::to_string(k) + " must lie in 1.." +
                                   std::to_string(m));
  }
  if (query.size() != dataset.dim()) fail(ErrorCode::invalid_input, "query width mismatch");
  require_finite(query, "query");

  std::vector<double> d2(m);
  for (std::size_t i = 0; i < m; ++i) d2[i] = core::squared_distance(query, dataset.point(i));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto closer = [&](std::size_t a, std::size_t b) {
    return d2[a] < d2[b] || (d2[a] == d2[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    closer);
  order.resize(k);

  std::vector<double> w(k);
  const bool exact = d2[order.front()] == 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    if (exact) {
      w[j] = d2[order[j]] == 0.0 ? 1.0 : 0.0;
    } else {
      w[j] = 1.0 / std::sqrt(d2[order[j]]);
    }
  }

  WknnPrediction out;
  out.neighbors = order;
  if (dataset.task() == core::Task::regression) {
    out.value.assign(dataset.label_width(), 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto y = dataset.target(order[j]);
      for (std::size_t c = 0; c < y.size(); ++c) out.value[c] += w[j] * y[c];
      total += w[j];
    }
    for (double& v : out.value) v /= total;
  } else {
    std::map<std::int64_t, double> votes;
    for (std::size_t j = 0; j < k; ++j) votes[dataset.class_of(order[j])] += w[j];
    double best = -1.0;
    for (const auto& [cls, vote] : votes) {
      if (vote > best) {
        best = vote;
        out.class_id = cls;
      }
    }
    out.value = {static_cast<double>(out.class_id)};
  }
  return out;
}

std::vector<WknnResult> wknn_batch(const core::Dataset& dataset, std::span<const double> queries,
                                   std::size_t k, unsigned parallelism) {
  const std::size_t dim = dataset.dim();
  if (dim == 0 || queries.size() % dim != 0) {
    fail(ErrorCode::invalid_input, "query buffer is not a whole number of rows");
  }
  const std::size_t n = queries.size() / dim;
  std::vector<WknnResult> out(n, Error(ErrorCode::invalid_input, "not evaluated"));
  parallel_for(n, parallelism, [&](std::size_t i) {
    try {
      out[i] = wknn_predict(dataset, queries.subspan(i * dim, dim), k);
    } catch (const Error& e) {
      out[i] = e;
    }
  });
  return out;
}

}  // namespace maxent::eval
