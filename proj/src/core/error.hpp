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
#include <span>
#include <stdexcept>
#include <string>

namespace maxent {

enum class ErrorCode {
  invalid_input,
  parameter,
  degenerate_neighborhood,
  numerical_failure,
  invalid_material,
  degenerate_baseline,
  ingestion,
  undefined_metric,
  parse,
  io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by text parsers that can point at the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, std::string token)
      : Error(ErrorCode::parse, message), position_(position), token_(std::move(token)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

void require_finite(std::span<const double> values, const char* what);

}  // namespace maxent
