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

#include "pipeline/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/error.hpp"
#include "core/random.hpp"

namespace maxent::pipeline {

SplitIndices split_indices(std::size_t rows, double test_fraction, std::uint64_t seed,
                           std::span<const int> strata) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    fail(ErrorCode::invalid_input, "test fraction must lie strictly between 0 and 1");
  }
  if (!strata.empty() && strata.size() != rows) {
    fail(ErrorCode::invalid_input, "one stratum key per row required");
  }
  const auto n_test =
      static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(rows) + 0.5));
  if (n_test == 0 || n_test >= rows) {
    fail(ErrorCode::invalid_input, "split of " + std::to_string(rows) +
                                       " rows leaves an empty train or test set");
  }

  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rows; ++i) groups[strata.empty() ? 0 : strata[i]].push_back(i);

  struct Quota {
    std::size_t take;
    double remainder;
  };
  std::vector<Quota> quotas;
  std::size_t assigned = 0;
  for (const auto& [key, members] : groups) {
    const double ideal = test_fraction * static_cast<double>(members.size());
    const auto take = static_cast<std::size_t>(std::floor(ideal));
    quotas.push_back({take, ideal - static_cast<double>(take)});
    assigned += take;
  }
  std::vector<std::size_t> order(quotas.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quotas[a].remainder > quotas[b].remainder;
  });
  for (std::size_t r = 0; assigned < n_test; ++r, ++assigned) ++quotas[order[r % order.size()]].take;
  for (std::size_t r = order.size(); assigned > n_test; ++r, --assigned) {
    auto& q = quotas[order[(r - 1) % order.size()]];
    if (q.take > 0) --q.take;
  }

  Rng rng(seed);
  SplitIndices out;
  std::size_t g = 0;
  for (auto& [key, members] : groups) {
    rng.shuffle(std::span<std::size_t>(members));
    const std::size_t take = std::min(quotas[g++].take, members.size());
    out.test.insert(out.test.end(), members.begin(), members.begin() + take);
    out.train.insert(out.train.end(), members.begin() + take, members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<FeatureTable, FeatureTable> split(const FeatureTable& table, double test_fraction,
                                            std::uint64_t seed, bool stratified) {
  std::vector<int> strata;
  if (stratified) {
    strata.resize(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i) strata[i] = table.layup_of(i);
  }
  const auto idx = split_indices(table.rows(), test_fraction, seed, strata);
  return {table.select(idx.train), table.select(idx.test)};
}

}  // namespace maxent::pipeline
