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

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace modelock {

/// Binary precision of a BigReal, in bits of significand.
struct Bits {
  long value;
};

inline constexpr long kMinBits = 53;

/// Arbitrary-precision real scalar backed by MPFR.
///
/// Every value carries its own precision. Binary operations round to the
/// larger of the operand precisions, so there is no ambient precision state.
/// Each elementary operation is correctly rounded (round-to-nearest), giving a
/// relative error of at most 2^(1-P).
class BigReal {
 public:
  explicit BigReal(Bits bits);
  BigReal(double value, Bits bits);
  template <std::integral I>
  BigReal(I value, Bits bits) : BigReal(bits) {
    mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
  }
  BigReal(const mpz_class& value, Bits bits);
  BigReal(const mpq_class& value, Bits bits);

  /// Parses a decimal or scientific literal. Throws Error(parse_error).
  static BigReal parse(std::string_view text, Bits bits);
  static BigReal pi(Bits bits);
  static BigReal nan(Bits bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  long bits() const { return mpfr_get_prec(v_); }
  /// Copy rounded (or exactly extended) to another precision.
  BigReal with_bits(Bits bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr raw() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Nearest integer, ties to even. Requires a finite value.
  mpz_class round_even() const;
  mpz_class floor_int() const;

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(double rhs);
  BigReal& operator-=(double rhs);
  BigReal& operator*=(double rhs);
  BigReal& operator/=(double rhs);
  template <std::integral I>
  BigReal& operator*=(I rhs) {
    mpfr_mul_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  BigReal& operator/=(I rhs) {
    mpfr_div_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  BigReal& operator+=(I rhs) {
    mpfr_add_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  BigReal& operator-=(I rhs) {
    mpfr_sub_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
    return *this;
  }

  BigReal operator-() const;

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, double b) { return !a.is_nan() && mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, double b) {
    if (a.is_nan() || b != b) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  mpfr_t v_;
};

// Binary operators round to max(bits(a), bits(b)).
BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);

inline BigReal operator+(BigReal a, double b) { return a += b; }
inline BigReal operator-(BigReal a, double b) { return a -= b; }
inline BigReal operator*(BigReal a, double b) { return a *= b; }
inline BigReal operator/(BigReal a, double b) { return a /= b; }
inline BigReal operator+(double a, BigReal b) { return b += a; }
inline BigReal operator*(double a, BigReal b) { return b *= a; }
BigReal operator-(double a, const BigReal& b);
BigReal operator/(double a, const BigReal& b);

template <std::integral I> BigReal operator+(BigReal a, I b) { return a += b; }
template <std::integral I> BigReal operator-(BigReal a, I b) { return a -= b; }
template <std::integral I> BigReal operator*(BigReal a, I b) { return a *= b; }
template <std::integral I> BigReal operator/(BigReal a, I b) { return a /= b; }
template <std::integral I> BigReal operator*(I a, BigReal b) { return b *= a; }
template <std::integral I> BigReal operator+(I a, BigReal b) { return b += a; }

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
void sin_cos(const BigReal& x, BigReal& s, BigReal& c);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal acosh(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal floor(const BigReal& x);
/// x - floor(x), in [0, 1).
BigReal frac(const BigReal& x);
/// 2^e at the given precision (exact).
BigReal ldexp2(long e, Bits bits);
const BigReal& min(const BigReal& a, const BigReal& b);
const BigReal& max(const BigReal& a, const BigReal& b);

/// Shortest decimal string that parses back to exactly the same value at
/// the value's own precision.
std::string to_string(const BigReal& x);
/// Decimal string with a fixed number of significant digits.
std::string to_string(const BigReal& x, int digits);
std::ostream& operator<<(std::ostream& os, const BigReal& x);

/// Per-denominator working precision: base + per_q * q + guard bits.
struct PrecisionPolicy {
  long base_bits = 64;
  long bits_per_q = 12;
  long guard_bits = 32;
};

/// Effective precision for a computation at denominator q (>= 53 always).
/// Throws Error(out_of_range) when q < 1.
long effective_bits(const PrecisionPolicy& policy, long q);

}  // namespace modelock
