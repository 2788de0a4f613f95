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

#include <gmpxx.h>

#include <vector>

#include "modelock/expr.hpp"
#include "modelock/precision.hpp"

namespace modelock {

/// Reduced fraction p/q with q > 0.
struct Rational {
  mpz_class p;
  mpz_class q;

  /// Normalizes sign and common factors. Throws Error(out_of_range) if q == 0.
  static Rational make(mpz_class p, mpz_class q);
  BigReal value(Bits bits) const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parses "p/q" (or a bare integer). Throws Error(parse_error).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

enum class CFStatus {
  complete,      // reached n_max
  terminated,    // remainder vanished at working precision (rational input)
  precision_exhausted,  // stopped at the last certified quotient
};

struct CFExpansion {
  std::vector<mpz_class> quotients;  // a_0; a_1, a_2, ...
  std::vector<Rational> convergents;
  CFStatus status = CFStatus::complete;

  size_t size() const { return convergents.size(); }
};

/// Continued fraction of x up to index n_max, using floor-and-reciprocal at
/// the precision of x. A quotient is accepted only while the accumulated
/// uncertainty of the running remainder stays below 2^(-P/2).
CFExpansion cf_expand(const BigReal& x, long n_max);
CFExpansion cf_expand(const Expr& x, long n_max, Bits bits);
/// Exact expansion of a rational.
CFExpansion cf_expand(const mpq_class& x, long n_max);

/// Throws Error(out_of_range) unless 0 <= n < cf.size().
const Rational& convergent(const CFExpansion& cf, long n);

}  // namespace modelock
