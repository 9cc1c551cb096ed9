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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace maxent::core {

enum class Task { regression, classification };

/// Training points with their labels. Points are stored row-major and every
/// coordinate is finite; regression rows carry `label_width()` reals, while
/// classification rows carry one integer class id.
///
/// A Dataset is a value type. Concurrent readers may share one instance as
/// long as nobody appends to it.
class Dataset {
 public:
  static Dataset regression(std::size_t dim, std::size_t label_width);
  static Dataset classification(std::size_t dim);

  /// Bulk constructors; `points` holds rows*dim values.
  static Dataset regression(std::vector<double> points, std::size_t dim,
                            std::vector<double> targets, std::size_t label_width);
  static Dataset classification(std::vector<double> points, std::size_t dim,
                                std::vector<std::int64_t> classes);

  void add(std::span<const double> point, std::span<const double> target);
  void add(std::span<const double> point, std::int64_t class_id);

  Task task() const noexcept { return task_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t label_width() const noexcept { return label_width_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const double> point(std::size_t row) const {
    return {points_.data() + row * dim_, dim_};
  }
  std::span<const double> target(std::size_t row) const {
    return {targets_.data() + row * label_width_, label_width_};
  }
  std::int64_t class_of(std::size_t row) const { return classes_[row]; }

  std::span<const double> points() const noexcept { return points_; }

 private:
  Dataset(Task task, std::size_t dim, std::size_t label_width);
  void check_point(std::span<const double> point) const;

  Task task_;
  std::size_t dim_;
  std::size_t label_width_;
  std::size_t rows_ = 0;
  std::vector<double> points_;
  std::vector<double> targets_;
  std::vector<std::int64_t> classes_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace maxent::core
