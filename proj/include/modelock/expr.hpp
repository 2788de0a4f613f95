// Copyright 2026 The modelock Authors
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

#include <memory>
#include <string>
#include <string_view>

#include "modelock/precision.hpp"

namespace modelock {

/// Immutable real-valued expression, evaluable at any precision.
///
/// Accepted syntax: decimal literals, + - * / ^, parentheses, the constants
/// `pi`, `golden` ((sqrt(5)-1)/2) and `e`, and the functions sqrt, exp, log,
/// sin, cos. Map coefficients are kept symbolic so that pipelines can
/// re-materialize a map at a higher precision without loss.
class Expr {
 public:
  /// Throws Error(parse_error).
  static Expr parse(std::string_view text);
  /// Exact value (re-rounded when evaluated at a different precision).
  static Expr literal(const BigReal& value);
  static Expr integer(long value);

  BigReal eval(Bits bits) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expr(std::shared_ptr<const Node> root, std::string text)
      : root_(std::move(root)), text_(std::move(text)) {}

  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// The golden mean (sqrt(5) - 1) / 2.
BigReal golden_mean(Bits bits);

}  // namespace modelock
