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

#include "laminate/layup_notation.hpp"

#include <cctype>
#include <string>

#include "core/error.hpp"

namespace maxent::laminate {

namespace {

constexpr std::size_t max_count = 10000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<double> parse() {
    expect('[');
    std::vector<double> group;
    do {
      const double angle = angle_token();
      std::size_t reps = 1;
      if (peek() == '_') {
        ++pos_;
        reps = count_token();
      }
      group.insert(group.end(), reps, angle);
    } while (accept('/'));
    expect(']');

    std::size_t repeat = 1;
    bool symmetric = false;
    if (accept('_')) {
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        repeat = count_token();
        symmetric = accept('S');
      } else {
        expect('S');
        symmetric = true;
      }
    } else {
      symmetric = accept('S');
    }
    if (pos_ != text_.size()) error("unexpected trailing input");

    std::vector<double> plies;
    plies.reserve(group.size() * repeat * (symmetric ? 2 : 1));
    for (std::size_t r = 0; r < repeat; ++r) plies.insert(plies.end(), group.begin(), group.end());
    if (symmetric) plies.insert(plies.end(), plies.rbegin(), plies.rend());
    return plies;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  [[noreturn]] void error(const std::string& what) const {
    const std::string token = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
    throw ParseError("layup notation: " + what + " at position " + std::to_string(pos_) +
                         " (found " + (pos_ < text_.size() ? "'" + token + "'" : token) + ")",
                     pos_, token);
  }

  std::size_t digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return pos_ - start;
  }

  double angle_token() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    const std::size_t length = digits();
    if (length == 0) error("expected a ply angle");
    if (length > 6) {
      pos_ = start;
      error("ply angle out of range");
    }
    if (accept('.') && digits() == 0) error("expected digits after decimal point");
    return std::stod(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t count_token() {
    const std::size_t start = pos_;
    const std::size_t length = digits();
    if (length == 0) error("expected a repetition count");
    if (length > 5) {
      pos_ = start;
      error("repetition count out of range");
    }
    const auto value = std::stoull(std::string(text_.substr(start, pos_ - start)));
    if (value < 1 || value > max_count) {
      pos_ = start;
      error("repetition count out of range");
    }
    return static_cast<std::size_t>(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<double> parse_layup_notation(std::string_view text) { return Parser(text).parse(); }

}  // namespace maxent::laminate
