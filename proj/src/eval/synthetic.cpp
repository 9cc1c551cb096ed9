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

#include "eval/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/random.hpp"
#include "laminate/laminate.hpp"

namespace maxent::eval {

using namespace pipeline;

SyntheticTable make_synthetic_table(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  constexpr std::size_t channels = cc_offset - pw_offset;

  std::vector<double> b(channels), a(channels), p(channels), env(channels);
  std::array<std::vector<double>, 3> gain;
  std::array<std::vector<double>, 4> cond;
  for (std::size_t c = 0; c < channels; ++c) {
    b[c] = rng.uniform(0.2, 1.5);
    a[c] = rng.uniform(0.05, 0.4);
    p[c] = rng.uniform(0.7, 2.0);
    env[c] = rng.uniform(-0.3, 0.3);
  }
  for (auto& g : gain) {
    g.resize(channels);
    for (double& v : g) v = rng.uniform(0.8, 1.2);
  }
  for (std::size_t k = 0; k < cond.size(); ++k) {
    cond[k].resize(channels);
    for (double& v : cond[k]) v = k == 0 ? 0.0 : rng.uniform(-0.05, 0.05);
  }

  std::vector<std::size_t> pool(2 * channels);
  std::iota(pool.begin(), pool.end(), pw_offset);
  rng.shuffle(std::span<std::size_t>(pool));
  std::vector<std::size_t> planted(pool.begin(), pool.begin() + 15);
  std::sort(planted.begin(), planted.end());
  std::vector<double> w(planted.size());
  for (double& v : w) v = rng.uniform(-1.0, 1.0);

  const auto layups = laminate::reference_layups();
  std::vector<FeatureRow> rows;
  for (int layup = 1; layup <= 3; ++layup) {
    const auto stiff = laminate::stiffness_feature_row(laminate::abd_matrices(layups.at(layup)));
    for (std::size_t r = 0; r < spec.rows_per_layup[layup - 1]; ++r) {
      FeatureRow row;
      const double s = rng.uniform();
      const double e = rng.uniform() - 0.5;
      const auto condition = static_cast<std::size_t>(rng.below(4));
      const auto& g = gain[layup - 1];
      for (std::size_t c = 0; c < channels; ++c) {
        row.values[pw_offset + c] =
            g[c] * std::exp(-b[c] * s) * (1.0 + env[c] * e) + cond[condition][c] +
            spec.feature_noise * rng.normal();
        row.values[cc_offset + c] = 1.0 - a[c] * std::pow(s, p[c]) + 0.1 * env[c] * e * e +
                                    0.02 * cond[condition][c] + spec.feature_noise * rng.normal();
      }
      std::copy(stiff.begin(), stiff.end(), row.values.begin() + stiffness_offset);
      row.values[condition_offset + condition] = 1.0;
      row.values[layup_offset + static_cast<std::size_t>(layup - 1)] = 1.0;
      row.values[load_offset] = condition == 3 ? rng.uniform(10.0, 30.0) : 0.0;
      rows.push_back(std::move(row));
    }
  }

  std::vector<double> clean(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& x = rows[i].values;
    double y = 0.0;
    for (std::size_t j = 0; j < planted.size(); ++j) y += w[j] * x[planted[j]];
    const double d = x[planted[0]] - x[planted[1]];
    clean[i] = y + 0.5 * d * d;
  }
  const auto [lo, hi] = std::minmax_element(clean.begin(), clean.end());
  const double low = *lo, span = *hi - *lo > 0.0 ? *hi - *lo : 1.0;

  SyntheticTable out;
  out.planted_columns = planted;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    clean[i] = (clean[i] - low) / span;
    rows[i].target = std::clamp(clean[i] + spec.target_noise * rng.normal(), 0.0, 1.0);
    out.table.append(rows[i]);
  }
  out.clean_target = std::move(clean);
  return out;
}

}  // namespace maxent::eval
