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

#include "modelock/error.hpp"
#include "modelock/extrema.hpp"
#include "modelock/rotation.hpp"
#include "oracles.hpp"

using namespace modelock;

namespace {

const Bits kBits{128};
BigReal num(const char* s) { return Expr::parse(s).eval(kBits); }
CircleLift standard_quarter() { return CircleLift::standard(Expr::parse("1/(4*pi)")); }

}  // namespace

TEST_CASE("translation number estimates") {
  const TranslatedLift rot(CircleLift::rotation(Expr::parse("0.37")), BigReal(kBits));
  for (long n : {1L, 10L, 1000L}) CHECK(abs(trans_estimate(rot, n) - num("0.37")) < ldexp2(-110, kBits));
  const TranslatedLift fixed(standard_quarter(), BigReal(kBits));
  CHECK(trans_estimate(fixed, 100).is_zero());

  const TranslatedLift m(standard_quarter(), num("0.3"));
  const Enclosure e = trans_enclosure(m, 21, default_extrema_grid(21), ldexp2(-40, kBits));
  const BigReal est = trans_estimate(m, 10000);
  CHECK(abs(est - e.mid()) <= e.width() + 1e-4);
  for (long n : {10L, 100L, 1000L}) {
    const BigReal slack(1.0 / static_cast<double>(n), kBits);
    CHECK(trans_estimate(m, n) >= e.lo - slack);
    CHECK(trans_estimate(m, n) <= e.hi + slack);
  }
}

TEST_CASE("enclosure closed forms") {
  const BigReal tol = ldexp2(-50, kBits);
  const TranslatedLift rot(CircleLift::rotation(Expr::parse("0.37")), BigReal(kBits));
  const Enclosure r = trans_enclosure(rot, 10, 640, tol);
  CHECK(abs(r.lo - num("0.37")) < ldexp2(-110, kBits));
  CHECK(r.lo == r.hi);

  const TranslatedLift m(standard_quarter(), BigReal(kBits));
  const Enclosure e = trans_enclosure(m, 1, default_extrema_grid(1), tol);
  const BigReal a = num("1/(4*pi)");
  CHECK(abs(e.lo + a) <= tol);
  CHECK(abs(e.hi - a) <= tol);
  CHECK(e.contains(BigReal(kBits)));
}

TEST_CASE("enclosures at t = 1/4 shrink with q and agree with a brute-force scan") {
  const BigReal tol = ldexp2(-60, kBits);
  const TranslatedLift m(standard_quarter(), num("0.25"));
  const double a = 1.0 / (4.0 * std::numbers::pi);
  auto f = [&](double x) { return x + 0.25 + a * std::sin(2.0 * std::numbers::pi * x); };
  std::vector<Enclosure> encl;
  for (long q : {8L, 13L, 21L}) {
    CAPTURE(q);
    const Enclosure e = trans_enclosure(m, q, default_extrema_grid(q), tol);
    const long p = centering_integer(m, q);
    const auto s = oracle::scan_extrema(
        [&](double x) {
          double y = x;
          for (long k = 0; k < q; ++k) y = f(y);
          return y - x - static_cast<double>(p);
        },
        200000);
    const double qd = static_cast<double>(q);
    CHECK(e.lo.to_double() == doctest::Approx((s.min_value + static_cast<double>(p)) / qd).epsilon(1e-9));
    CHECK(e.hi.to_double() == doctest::Approx((s.max_value + static_cast<double>(p)) / qd).epsilon(1e-9));
    CHECK(e.width() < BigReal(1.0 / qd, kBits));
    encl.push_back(e);
  }
  for (size_t i = 1; i < encl.size(); ++i) {
    CHECK(encl[i].width() < encl[i - 1].width());
    // Both contain the translation number, so they overlap.
    CHECK(encl[i].lo <= encl[i - 1].hi);
    CHECK(encl[i - 1].lo <= encl[i].hi);
  }
  const BigReal lo = max(max(encl[0].lo, encl[1].lo), encl[2].lo);
  const BigReal hi = min(min(encl[0].hi, encl[1].hi), encl[2].hi);
  CHECK(lo <= hi);
}

TEST_CASE("integer translation covariance") {
  const BigReal tol = ldexp2(-60, kBits);
  const TranslatedLift m0(standard_quarter(), num("0.41"));
  const TranslatedLift m1(standard_quarter(), num("1.41"));
  const Enclosure e0 = trans_enclosure(m0, 5, default_extrema_grid(5), tol);
  const Enclosure e1 = trans_enclosure(m1, 5, default_extrema_grid(5), tol);
  CHECK(centering_integer(m1, 5) == centering_integer(m0, 5) + 5);
  CHECK(abs(e1.lo - e0.lo - 1) <= tol);
  CHECK(abs(e1.hi - e0.hi - 1) <= tol);
}

TEST_CASE("staircase") {
  const BigReal tol = ldexp2(-40, kBits);
  SUBCASE("pure rotation is the identity staircase") {
    const auto pts = staircase(CircleLift::rotation(Expr::integer(0)), BigReal(kBits), BigReal(1, kBits), 11, 3,
                               64, tol);
    REQUIRE(pts.size() == 11);
    for (size_t i = 0; i < pts.size(); ++i) {
      CHECK(abs(pts[i].trans.lo - pts[i].t) < ldexp2(-120, kBits));
      CHECK(pts[i].trans.lo == pts[i].trans.hi);
    }
  }
  SUBCASE("standard family is monotone with a flat step at 1/2") {
    const auto pts = staircase(standard_quarter(), BigReal(kBits), BigReal(1, kBits), 41, 8,
                               default_extrema_grid(8), tol);
    REQUIRE(pts.size() == 41);
    for (size_t i = 0; i + 1 < pts.size(); ++i) CHECK(pts[i].trans.lo <= pts[i + 1].trans.hi);
    CHECK(pts.front().trans.contains(BigReal(kBits)));
    CHECK(pts.back().trans.contains(BigReal(1, kBits)));
    // The 1/2 plateau is symmetric about t = 1/2.
    CHECK(pts[20].trans.contains(num("0.5")));
  }
  SUBCASE("serial and parallel agree") {
    const auto a = staircase(standard_quarter(), num("0.1"), num("0.2"), 5, 5, 320, tol, Exec::serial);
    const auto b = staircase(standard_quarter(), num("0.1"), num("0.2"), 5, 5, 320, tol, Exec::parallel);
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].trans.lo == b[i].trans.lo);
      CHECK(a[i].trans.hi == b[i].trans.hi);
    }
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(staircase(standard_quarter(), BigReal(kBits), BigReal(1, kBits), 1, 3, 64, tol), Error);
    CHECK_THROWS_AS(staircase(standard_quarter(), BigReal(1, kBits), BigReal(kBits), 5, 3, 64, tol), Error);
  }
}
