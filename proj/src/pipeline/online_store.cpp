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

#include "pipeline/online_store.hpp"

#include <utility>

#include "core/error.hpp"

namespace maxent::pipeline {

OnlineStore::OnlineStore(FeatureTable training, ScalerKind scaler, bool refresh_on_append)
    : raw_(std::move(training)), kind_(scaler), refresh_(refresh_on_append) {
  if (!raw_.has_targets()) fail(ErrorCode::invalid_input, "training table has no targets");
  if (raw_.rows() == 0) fail(ErrorCode::invalid_input, "training table is empty");
  current_ = rebuild();
  refits_ = 1;
}

std::shared_ptr<const OnlineStore::Snapshot> OnlineStore::rebuild() const {
  auto pre = Preprocessor::fit(raw_, kind_);
  auto data = core::Dataset::regression(feature_width, 1);
  for (std::size_t i = 0; i < raw_.rows(); ++i) {
    const double y = raw_.target(i);
    data.add(pre.transform(raw_.row(i), raw_.missing(i)), std::span<const double>(&y, 1));
  }
  return std::make_shared<const Snapshot>(Snapshot{std::move(pre), std::move(data)});
}

std::size_t OnlineStore::append(const FeatureRow& row) {
  if (row.values.size() != feature_width || row.missing.size() != feature_width) {
    fail(ErrorCode::invalid_input, "feature row must have 530 cells");
  }
  std::lock_guard lock(mutex_);
  if (refresh_) {
    FeatureTable grown = raw_;
    grown.append(row);
    std::swap(raw_, grown);
    try {
      current_ = rebuild();
    } catch (...) {
      std::swap(raw_, grown);
      throw;
    }
    ++refits_;
    return raw_.rows() - 1;
  }
  auto next = std::make_shared<Snapshot>(*current_);
  const double y = row.target;
  next->dataset.add(next->preprocessor.transform(row.values, row.missing),
                    std::span<const double>(&y, 1));
  raw_.append(row);
  current_ = std::move(next);
  return raw_.rows() - 1;
}

std::size_t OnlineStore::append(const MeasurementRecord& record,
                                const IngestionContext& context) {
  return append(build_feature_row(record, context));
}

void OnlineStore::set_refresh_on_append(bool refresh) {
  std::lock_guard lock(mutex_);
  refresh_ = refresh;
}

std::shared_ptr<const OnlineStore::Snapshot> OnlineStore::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

FeatureTable OnlineStore::table() const {
  std::lock_guard lock(mutex_);
  return raw_;
}

std::size_t OnlineStore::rows() const {
  std::lock_guard lock(mutex_);
  return raw_.rows();
}

std::size_t OnlineStore::refit_count() const {
  std::lock_guard lock(mutex_);
  return refits_;
}

std::vector<double> OnlineStore::transform_queries(const Snapshot& snapshot,
                                                   const FeatureTable& queries) {
  std::vector<double> out;
  out.reserve(queries.rows() * feature_width);
  for (std::size_t i = 0; i < queries.rows(); ++i) {
    const auto row = snapshot.preprocessor.transform(queries.row(i), queries.missing(i));
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<core::BatchResult> OnlineStore::predict(const FeatureTable& queries,
                                                    const core::MaxEntParams& params,
                                                    unsigned parallelism) const {
  const auto snap = snapshot();
  const auto block = transform_queries(*snap, queries);
  return core::predict_batch(snap->dataset, block, params, parallelism);
}

std::vector<eval::WknnResult> OnlineStore::predict_wknn(const FeatureTable& queries,
                                                        std::size_t k,
                                                        unsigned parallelism) const {
  const auto snap = snapshot();
  const auto block = transform_queries(*snap, queries);
  return eval::wknn_batch(snap->dataset, block, k, parallelism);
}

}  // namespace maxent::pipeline
