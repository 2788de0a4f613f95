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

#include "modelock/bigcomplex.hpp"

namespace modelock {

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigReal r = re * rhs.re - im * rhs.im;
  im = re * rhs.im + im * rhs.re;
  re = std::move(r);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex out = a;
  return out *= b;
}
BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigReal d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigReal abs(const BigComplex& z) {
  BigReal out(Bits{z.bits()});
  mpfr_hypot(out.raw(), z.re.get(), z.im.get(), MPFR_RNDN);
  return out;
}

BigReal norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigComplex expi(const BigReal& phi) {
  BigReal s(Bits{phi.bits()}), c(Bits{phi.bits()});
  sin_cos(phi, s, c);
  return {std::move(c), std::move(s)};
}

BigComplex exp(const BigComplex& z) {
  const BigReal m = exp(z.re);
  BigComplex out = expi(z.im);
  return out *= m;
}

// sin(x+iy) = sin x cosh y + i cos x sinh y
BigComplex sin(const BigComplex& z) {
  BigReal s(Bits{z.bits()}), c(Bits{z.bits()});
  sin_cos(z.re, s, c);
  return {s * cosh(z.im), c * sinh(z.im)};
}

// cos(x+iy) = cos x cosh y - i sin x sinh y
BigComplex cos(const BigComplex& z) {
  BigReal s(Bits{z.bits()}), c(Bits{z.bits()});
  sin_cos(z.re, s, c);
  return {c * cosh(z.im), -(s * sinh(z.im))};
}

}  // namespace modelock
