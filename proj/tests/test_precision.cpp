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

#include <doctest.h>

#include <random>

#include "modelock/error.hpp"
#include "modelock/expr.hpp"
#include "modelock/precision.hpp"

using namespace modelock;

TEST_CASE("effective bits follow the per-q policy") {
  const PrecisionPolicy policy{64, 12, 32};
  CHECK(effective_bits(policy, 1) == 108);
  CHECK(effective_bits(policy, 21) == 348);
  CHECK(effective_bits({53, 0, 0}, 100) == 53);
  CHECK(effective_bits({10, 0, 0}, 5) == 53);
  long prev = 0;
  for (long q = 1; q < 200; ++q) {
    CHECK(effective_bits(policy, q) >= prev);
    prev = effective_bits(policy, q);
  }
  CHECK_THROWS_AS(effective_bits(policy, 0), Error);
}

TEST_CASE("results round to the wider operand") {
  const BigReal a(1, Bits{64}), b(3, Bits{200});
  CHECK((a / b).bits() == 200);
  CHECK((b - a).bits() == 200);
  CHECK(BigReal(0.5, Bits{100}).with_bits(Bits{300}).bits() == 300);
}

TEST_CASE("elementary functions agree with a doubled-precision recomputation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  const long P = 160;
  const BigReal bound = ldexp2(2 - P, Bits{2 * P});
  using Fn = BigReal (*)(const BigReal&);
  const Fn fns[] = {exp, log, sin, cos, sinh, sqrt};
  for (int i = 0; i < 40; ++i) {
    const BigReal x(u(rng), Bits{P});
    const BigReal x2 = x.with_bits(Bits{2 * P});
    for (Fn f : fns) {
      const BigReal lo = f(x), hi = f(x2);
      CHECK(abs(lo.with_bits(Bits{2 * P}) - hi) <= abs(hi) * bound);
    }
    const BigReal y(u(rng), Bits{P});
    CHECK(abs((x * y).with_bits(Bits{2 * P}) - x2 * y.with_bits(Bits{2 * P})) <= abs(x2 * y) * bound);
    CHECK(abs((x / y).with_bits(Bits{2 * P}) - x2 / y.with_bits(Bits{2 * P})) <= abs(x2 / y) * bound);
  }
}

TEST_CASE("shortest decimal strings round-trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (long bits : {53L, 64L, 128L, 333L}) {
    for (int i = 0; i < 50; ++i) {
      const BigReal x = BigReal(u(rng), Bits{bits}) / 7;
      const std::string s = to_string(x);
      CHECK(BigReal::parse(s, Bits{bits}) == x);
    }
  }
  CHECK(to_string(BigReal(0.25, Bits{128})) == "0.25");
  CHECK(to_string(BigReal(0, Bits{128})) == "0");
  CHECK(to_string(BigReal(-3, Bits{90})) == "-3");
}

TEST_CASE("parsing rejects malformed literals") {
  CHECK_THROWS_AS(BigReal::parse("1.2.3", Bits{64}), Error);
  CHECK_THROWS_AS(BigReal::parse("", Bits{64}), Error);
  CHECK(BigReal::parse("1e-3", Bits{64}) == BigReal::parse("0.001", Bits{64}));
}

TEST_CASE("nearest integer breaks ties toward even") {
  CHECK(BigReal(2.5, Bits{64}).round_even() == 2);
  CHECK(BigReal(3.5, Bits{64}).round_even() == 4);
  CHECK(BigReal(-2.5, Bits{64}).round_even() == -2);
  CHECK(BigReal(-0.7, Bits{64}).floor_int() == -1);
}

TEST_CASE("expressions evaluate at the requested precision") {
  const Bits bits{200};
  const BigReal a = Expr::parse("1/(4*pi)").eval(bits);
  CHECK(abs(a * BigReal::pi(bits) * 4 - 1) < ldexp2(-195, bits));
  CHECK(a.bits() == 200);
  const BigReal g = Expr::parse("golden").eval(bits);
  CHECK(abs(g * g + g - 1) < ldexp2(-195, bits));
  CHECK(Expr::parse("2^10 - 3*2").eval(bits) == 1018);
  CHECK(Expr::parse("-2^2").eval(bits) == -4);
  CHECK(Expr::parse("sqrt(16) + exp(0) + log(1) + sin(0) + cos(0)").eval(bits) == 6);
  CHECK(Expr::parse("2.5e1").eval(bits) == 25);
  CHECK_THROWS_AS(Expr::parse("tau"), Error);
  CHECK_THROWS_AS(Expr::parse("(1+2"), Error);
  CHECK_THROWS_AS(Expr::parse("1 2"), Error);
}
