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

#include "modelock/contfrac.hpp"
#include "modelock/error.hpp"
#include "oracles.hpp"

using namespace modelock;

namespace {

std::vector<long> as_longs(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& z : v) out.push_back(z.get_si());
  return out;
}

void check_recurrence(const CFExpansion& cf) {
  mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (size_t n = 0; n < cf.size(); ++n) {
    const mpz_class p = cf.quotients[n] * p_prev + p_prev2;
    const mpz_class q = cf.quotients[n] * q_prev + q_prev2;
    CHECK(cf.convergents[n].p == p);
    CHECK(cf.convergents[n].q == q);
    if (n >= 1) CHECK(cf.quotients[n] >= 1);
    if (n >= 2) CHECK(q > q_prev);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
}

}  // namespace

TEST_CASE("rationals are reduced") {
  const Rational r = Rational::make(6, -4);
  CHECK(r.p == -3);
  CHECK(r.q == 2);
  CHECK(to_string(r) == "-3/2");
  CHECK(parse_rational(" 2/5 ") == Rational::make(2, 5));
  CHECK(parse_rational("3") == Rational::make(3, 1));
  CHECK_THROWS_AS(Rational::make(1, 0), Error);
  CHECK_THROWS_AS(parse_rational("1/"), Error);
  CHECK_THROWS_AS(parse_rational("a/b"), Error);
}

TEST_CASE("golden mean has Fibonacci convergents") {
  const CFExpansion cf = cf_expand(Expr::parse("golden"), 7, Bits{128});
  CHECK(as_longs(cf.quotients) == std::vector<long>{0, 1, 1, 1, 1, 1, 1, 1});
  const std::vector<std::pair<long, long>> expect = {{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}, {8, 13}, {13, 21}};
  REQUIRE(cf.size() == expect.size());
  for (size_t n = 0; n < expect.size(); ++n) {
    CHECK(cf.convergents[n] == Rational::make(expect[n].first, expect[n].second));
  }
  CHECK(cf.status == CFStatus::complete);
  CHECK(convergent(cf, 5) == Rational::make(5, 8));
  CHECK(convergent(cf, 0) == Rational::make(0, 1));
  CHECK_THROWS_AS(convergent(cf, 8), Error);
  CHECK_THROWS_AS(convergent(cf, -1), Error);
}

TEST_CASE("rational input terminates in canonical form") {
  for (const CFExpansion& cf : {cf_expand(mpq_class(3, 7), 20), cf_expand(Expr::parse("3/7"), 20, Bits{128})}) {
    CHECK(as_longs(cf.quotients) == std::vector<long>{0, 2, 3});
    CHECK(cf.convergents.back() == Rational::make(3, 7));
    CHECK(cf.status == CFStatus::terminated);
  }
  const CFExpansion half = cf_expand(mpq_class(1, 2), 5);
  CHECK(as_longs(half.quotients) == std::vector<long>{0, 2});
  const CFExpansion neg = cf_expand(mpq_class(-7, 3), 5);
  CHECK(as_longs(neg.quotients) == std::vector<long>{-3, 1, 2});
  check_recurrence(neg);
}

TEST_CASE("pi matches the best-approximation search") {
  const CFExpansion cf = cf_expand(Expr::parse("pi"), 3, Bits{128});
  CHECK(as_longs(cf.quotients) == std::vector<long>{3, 7, 15, 1});
  CHECK(convergent(cf, 3) == Rational::make(355, 113));
  const auto best = oracle::best_approximations(std::numbers::pi, 113);
  // Every convergent is a best approximation of the second kind and vice versa.
  REQUIRE(best.size() == cf.size());
  for (size_t n = 0; n < best.size(); ++n) {
    CHECK(cf.convergents[n] == Rational::make(best[n].first, best[n].second));
  }
}

TEST_CASE("approximation quality and alternation") {
  const Bits bits{256};
  for (const char* x : {"golden", "pi", "sqrt(2)", "e - 2", "0.1234567"}) {
    CAPTURE(x);
    const BigReal v = Expr::parse(x).eval(bits);
    const CFExpansion cf = cf_expand(v, 25);
    check_recurrence(cf);
    int last_sign = 0;
    for (size_t n = 0; n < cf.size(); ++n) {
      const BigReal diff = v - cf.convergents[n].value(bits);
      const BigReal qn(cf.convergents[n].q, bits);
      CHECK(abs(diff) <= 1 / (qn * qn));
      if (n + 1 < cf.size()) {
        const BigReal qn1(cf.convergents[n + 1].q, bits);
        CHECK(abs(diff) < 1 / (qn * qn1));
      }
      if (!diff.is_zero()) {
        if (last_sign != 0) CHECK(diff.sign() == -last_sign);
        last_sign = diff.sign();
      }
    }
  }
}

TEST_CASE("precision exhaustion truncates at a certified quotient") {
  const CFExpansion lo = cf_expand(Expr::parse("golden"), 500, Bits{64});
  CHECK(lo.status == CFStatus::precision_exhausted);
  CHECK(lo.size() > 10);
  CHECK(lo.size() < 60);
  for (size_t n = 1; n < lo.quotients.size(); ++n) CHECK(lo.quotients[n] == 1);
  const CFExpansion hi = cf_expand(Expr::parse("golden"), 500, Bits{1024});
  CHECK(hi.size() > lo.size());
  CHECK_THROWS_AS(cf_expand(BigReal(0.5, Bits{64}), -1), Error);
}
