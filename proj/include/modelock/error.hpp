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

#include <stdexcept>
#include <string>
#include <string_view>

namespace modelock {

enum class Errc {
  invalid_map,
  invalid_epsilon,
  strip_exceeded,
  tol_unreachable,
  precision_exhausted,
  out_of_range,
  bracket_failure,
  extrema_certification_failure,
  inconclusive,
  insufficient_spectrum,
  insufficient_rows,
  parse_error,
  config_error,
};

std::string_view to_string(Errc code);

/// Exception carrying a machine-readable error category.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_map: return "invalid-map";
    case Errc::invalid_epsilon: return "invalid-epsilon";
    case Errc::strip_exceeded: return "strip-exceeded";
    case Errc::tol_unreachable: return "tol-unreachable";
    case Errc::precision_exhausted: return "precision-exhausted";
    case Errc::out_of_range: return "out-of-range";
    case Errc::bracket_failure: return "bracket-failure";
    case Errc::extrema_certification_failure: return "extrema-certification-failure";
    case Errc::inconclusive: return "inconclusive";
    case Errc::insufficient_spectrum: return "insufficient-spectrum";
    case Errc::insufficient_rows: return "insufficient-rows";
    case Errc::parse_error: return "parse-error";
    case Errc::config_error: return "config-error";
  }
  return "unknown";
}

}  // namespace modelock
