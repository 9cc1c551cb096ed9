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

#pragma once

// Append-only training store for online prediction. Readers work on an
// immutable snapshot, so an append never disturbs a prediction in flight and
// the next prediction sees the new row without any refit.

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "core/dataset.hpp"
#include "core/maxent.hpp"
#include "eval/wknn.hpp"
#include "pipeline/feature_table.hpp"
#include "pipeline/scaler.hpp"

namespace maxent::pipeline {

class OnlineStore {
 public:
  struct Snapshot {
    Preprocessor preprocessor;
    /// Preprocessed training rows with D as the single label.
    core::Dataset dataset;
  };

  /// Fits the preprocessor on `training`. With `refresh_on_append` the
  /// preprocessor is refitted after every append and all rows are
  /// re-transformed; otherwise appended rows go through the existing fit.
  OnlineStore(FeatureTable training, ScalerKind scaler, bool refresh_on_append = false);

  /// Returns the index of the new row.
  std::size_t append(const FeatureRow& row);
  std::size_t append(const MeasurementRecord& record, const IngestionContext& context);

  void set_refresh_on_append(bool refresh);

  std::shared_ptr<const Snapshot> snapshot() const;
  FeatureTable table() const;
  std::size_t rows() const;
  /// Number of preprocessor fits so far, the constructor's included.
  std::size_t refit_count() const;

  /// Row-major preprocessed query block.
  static std::vector<double> transform_queries(const Snapshot& snapshot,
                                               const FeatureTable& queries);

  std::vector<core::BatchResult> predict(const FeatureTable& queries,
                                         const core::MaxEntParams& params,
                                         unsigned parallelism = 1) const;
  std::vector<eval::WknnResult> predict_wknn(const FeatureTable& queries, std::size_t k,
                                             unsigned parallelism = 1) const;

 private:
  std::shared_ptr<const Snapshot> rebuild() const;

  mutable std::mutex mutex_;
  FeatureTable raw_;
  ScalerKind kind_;
  bool refresh_;
  std::size_t refits_ = 0;
  std::shared_ptr<const Snapshot> current_;
};

}  // namespace maxent::pipeline
