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

#include "core/dataset.hpp"

#include <string>

#include "core/error.hpp"

namespace maxent::core {

Dataset::Dataset(Task task, std::size_t dim, std::size_t label_width)
    : task_(task), dim_(dim), label_width_(label_width) {
  if (dim == 0) fail(ErrorCode::invalid_input, "dataset dimension must be at least 1");
  if (task == Task::regression && label_width == 0) {
    fail(ErrorCode::invalid_input, "regression labels need at least one column");
  }
}

Dataset Dataset::regression(std::size_t dim, std::size_t label_width) {
  return Dataset(Task::regression, dim, label_width);
}

Dataset Dataset::classification(std::size_t dim) {
  return Dataset(Task::classification, dim, 1);
}

Dataset Dataset::regression(std::vector<double> points, std::size_t dim,
                            std::vector<double> targets, std::size_t label_width) {
  Dataset ds(Task::regression, dim, label_width);
  if (points.size() % dim != 0) {
    fail(ErrorCode::invalid_input, "point buffer is not a multiple of the dimension");
  }
  const std::size_t rows = points.size() / dim;
  if (targets.size() != rows * label_width) {
    fail(ErrorCode::invalid_input, "label count does not match point count");
  }
  require_finite(points, "dataset point");
  require_finite(targets, "dataset label");
  ds.points_ = std::move(points);
  ds.targets_ = std::move(targets);
  ds.rows_ = rows;
  return ds;
}

Dataset Dataset::classification(std::vector<double> points, std::size_t dim,
                                std::vector<std::int64_t> classes) {
  Dataset ds(Task::classification, dim, 1);
  if (points.size() % dim != 0) {
    fail(ErrorCode::invalid_input, "point buffer is not a multiple of the dimension");
  }
  const std::size_t rows = points.size() / dim;
  if (classes.size() != rows) {
    fail(ErrorCode::invalid_input, "label count does not match point count");
  }
  require_finite(points, "dataset point");
  ds.points_ = std::move(points);
  ds.classes_ = std::move(classes);
  ds.rows_ = rows;
  return ds;
}

void Dataset::check_point(std::span<const double> point) const {
  if (point.size() != dim_) {
    fail(ErrorCode::invalid_input, "point has dimension " + std::to_string(point.size()) +
                                       ", dataset expects " + std::to_string(dim_));
  }
  require_finite(point, "dataset point");
}

void Dataset::add(std::span<const double> point, std::span<const double> target) {
  if (task_ != Task::regression) fail(ErrorCode::invalid_input, "dataset holds class labels");
  check_point(point);
  if (target.size() != label_width_) {
    fail(ErrorCode::invalid_input, "label row has width " + std::to_string(target.size()) +
                                       ", dataset expects " + std::to_string(label_width_));
  }
  require_finite(target, "dataset label");
  points_.insert(points_.end(), point.begin(), point.end());
  targets_.insert(targets_.end(), target.begin(), target.end());
  ++rows_;
}

void Dataset::add(std::span<const double> point, std::int64_t class_id) {
  if (task_ != Task::classification) fail(ErrorCode::invalid_input, "dataset holds real labels");
  check_point(point);
  points_.insert(points_.end(), point.begin(), point.end());
  classes_.push_back(class_id);
  ++rows_;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace maxent::core
