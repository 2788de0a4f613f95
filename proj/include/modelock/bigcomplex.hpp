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

#include "modelock/precision.hpp"

namespace modelock {

/// Complex number over BigReal; precision follows the real part.
struct BigComplex {
  BigReal re;
  BigReal im;

  explicit BigComplex(Bits bits) : re(bits), im(bits) {}
  BigComplex(BigReal real, BigReal imag) : re(std::move(real)), im(std::move(imag)) {}

  long bits() const { return std::max(re.bits(), im.bits()); }

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);
};

BigComplex operator+(BigComplex a, const BigComplex& b);
BigComplex operator-(BigComplex a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator*(BigComplex a, const BigReal& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a);

BigComplex conj(const BigComplex& z);
BigReal abs(const BigComplex& z);
BigReal norm(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// e^{i phi} for real phi.
BigComplex expi(const BigReal& phi);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);

}  // namespace modelock
