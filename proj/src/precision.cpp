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

#include "modelock/precision.hpp"

#include <cstdlib>
#include <ostream>
#include <string>

#include "modelock/error.hpp"

namespace modelock {

namespace {

long clamp_bits(Bits bits) { return std::max<long>(bits.value, MPFR_PREC_MIN); }

}  // namespace

BigReal::BigReal(Bits bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double value, Bits bits) : BigReal(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

BigReal::BigReal(const mpz_class& value, Bits bits) : BigReal(bits) {
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const mpq_class& value, Bits bits) : BigReal(bits) {
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, Bits bits) {
  BigReal out(bits);
  std::string buf(text);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(out.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw Error(Errc::parse_error, "not a decimal number: '" + buf + "'");
  }
  return out;
}

BigReal BigReal::pi(Bits bits) {
  BigReal out(bits);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

BigReal BigReal::nan(Bits bits) {
  BigReal out(bits);
  mpfr_set_nan(out.v_);
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::with_bits(Bits bits) const {
  BigReal out(bits);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

mpz_class BigReal::round_even() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpz_class BigReal::floor_int() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(v_, rhs.bits(), MPFR_RNDN);
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(v_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(v_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(v_, rhs.bits(), MPFR_RNDN);
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator+=(double rhs) {
  mpfr_add_d(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(double rhs) {
  mpfr_sub_d(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(double rhs) {
  mpfr_mul_d(v_, v_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(double rhs) {
  mpfr_div_d(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(Bits{bits()});
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

namespace {

template <typename Op>
BigReal binary(const BigReal& a, const BigReal& b, Op op) {
  BigReal out(Bits{std::max(a.bits(), b.bits())});
  op(out.raw(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

template <typename Op>
BigReal unary(const BigReal& x, Op op) {
  BigReal out(Bits{x.bits()});
  op(out.raw(), x.get(), MPFR_RNDN);
  return out;
}

}  // namespace

BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }

BigReal operator-(double a, const BigReal& b) {
  BigReal out(Bits{b.bits()});
  mpfr_d_sub(out.raw(), a, b.get(), MPFR_RNDN);
  return out;
}

BigReal operator/(double a, const BigReal& b) {
  BigReal out(Bits{b.bits()});
  mpfr_d_div(out.raw(), a, b.get(), MPFR_RNDN);
  return out;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal acosh(const BigReal& x) { return unary(x, mpfr_acosh); }
BigReal atan2(const BigReal& y, const BigReal& x) { return binary(y, x, mpfr_atan2); }
BigReal pow(const BigReal& x, const BigReal& y) { return binary(x, y, mpfr_pow); }

void sin_cos(const BigReal& x, BigReal& s, BigReal& c) {
  if (s.bits() != x.bits()) s = BigReal(Bits{x.bits()});
  if (c.bits() != x.bits()) c = BigReal(Bits{x.bits()});
  mpfr_sin_cos(s.raw(), c.raw(), x.get(), MPFR_RNDN);
}

BigReal floor(const BigReal& x) {
  BigReal out(Bits{x.bits()});
  mpfr_floor(out.raw(), x.get());
  return out;
}

BigReal frac(const BigReal& x) {
  // x - floor(x) is exact in binary floating point.
  BigReal out(Bits{x.bits()});
  mpfr_floor(out.raw(), x.get());
  mpfr_sub(out.raw(), x.get(), out.get(), MPFR_RNDN);
  return out;
}

BigReal ldexp2(long e, Bits bits) {
  BigReal out(bits);
  mpfr_set_ui_2exp(out.raw(), 1, e, MPFR_RNDN);
  return out;
}

const BigReal& min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }
const BigReal& max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }

std::string to_string(const BigReal& x, int digits) {
  if (x.is_nan()) return "nan";
  if (mpfr_inf_p(x.get())) return x.sign() > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*RNg", digits, x.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string to_string(const BigReal& x) {
  if (!x.is_finite()) return to_string(x, 1);
  if (x.is_zero()) return mpfr_signbit(x.get()) ? "-0" : "0";
  const Bits bits{x.bits()};
  auto round_trips = [&](int digits) {
    BigReal back(bits);
    const std::string s = to_string(x, digits);
    mpfr_strtofr(back.raw(), s.c_str(), nullptr, 10, MPFR_RNDN);
    return back == x;
  };
  // Binary search on the digit count; the upper end always round-trips.
  int hi = static_cast<int>(static_cast<double>(bits.value) * 0.30103) + 3;
  int lo = 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (round_trips(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  // Monotonicity of round-tripping in the digit count is not guaranteed;
  // step down while shorter strings still round-trip.
  while (hi > 1 && round_trips(hi - 1)) --hi;
  return to_string(x, hi);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << to_string(x); }

long effective_bits(const PrecisionPolicy& policy, long q) {
  if (q < 1) throw Error(Errc::out_of_range, "effective_bits requires q >= 1");
  return std::max(kMinBits, policy.base_bits + policy.bits_per_q * q + policy.guard_bits);
}

}  // namespace modelock
