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

#include "modelock/contfrac.hpp"

#include <string>

#include "modelock/error.hpp"

namespace modelock {

Rational Rational::make(mpz_class p, mpz_class q) {
  if (q == 0) throw Error(Errc::out_of_range, "zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return {std::move(p), std::move(q)};
}

BigReal Rational::value(Bits bits) const { return BigReal(mpq_class(p, q), bits); }

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational::make(mpz_class(std::string(text)), 1);
    return Rational::make(mpz_class(std::string(text.substr(0, slash))),
                          mpz_class(std::string(text.substr(slash + 1))));
  } catch (const std::invalid_argument&) {
    throw Error(Errc::parse_error, "bad fraction '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& r) { return r.p.get_str() + "/" + r.q.get_str(); }

namespace {

// Appends a_n and the matching convergent.
void push_quotient(CFExpansion& cf, const mpz_class& a) {
  const size_t n = cf.quotients.size();
  cf.quotients.push_back(a);
  const mpz_class p1 = n >= 1 ? cf.convergents[n - 1].p : mpz_class(1);
  const mpz_class q1 = n >= 1 ? cf.convergents[n - 1].q : mpz_class(0);
  const mpz_class p2 = n >= 2 ? cf.convergents[n - 2].p : (n == 1 ? mpz_class(1) : mpz_class(0));
  const mpz_class q2 = n >= 2 ? cf.convergents[n - 2].q : (n == 1 ? mpz_class(0) : mpz_class(1));
  cf.convergents.push_back({a * p1 + p2, a * q1 + q2});
}

// Last quotient >= 2 where possible: [..., a, 1] == [..., a + 1].
void canonicalize(CFExpansion& cf) {
  if (cf.quotients.size() >= 2 && cf.quotients.back() == 1) {
    mpz_class a = cf.quotients[cf.quotients.size() - 2] + 1;
    cf.quotients.resize(cf.quotients.size() - 2);
    cf.convergents.resize(cf.convergents.size() - 2);
    push_quotient(cf, a);
  }
}

}  // namespace

CFExpansion cf_expand(const BigReal& x, long n_max) {
  if (n_max < 0) throw Error(Errc::out_of_range, "n_max must be >= 0");
  if (!x.is_finite()) throw Error(Errc::out_of_range, "cannot expand a non-finite value");
  const Bits bits{x.bits()};
  const BigReal delta = ldexp2(-(bits.value / 2), bits);
  CFExpansion cf;
  BigReal r = x;
  // Uncertainty of r relative to the exact remainder, in units of 2^-P.
  // Each reciprocal step multiplies it by about r^2.
  BigReal err = ldexp2(-bits.value + 2, bits);
  for (long n = 0; n <= n_max; ++n) {
    if (err > delta) {
      cf.status = CFStatus::precision_exhausted;
      return cf;
    }
    mpz_class a = r.floor_int();
    BigReal f = r - BigReal(a, bits);
    if (f < delta || BigReal(1, bits) - f < delta) {
      if (f >= delta) a += 1;
      push_quotient(cf, a);
      canonicalize(cf);
      cf.status = CFStatus::terminated;
      return cf;
    }
    push_quotient(cf, a);
    if (n == n_max) break;
    r = BigReal(1, bits) / f;
    err = err * r * r + ldexp2(-bits.value + 2, bits) * r;
  }
  cf.status = CFStatus::complete;
  return cf;
}

CFExpansion cf_expand(const Expr& x, long n_max, Bits bits) { return cf_expand(x.eval(bits), n_max); }

CFExpansion cf_expand(const mpq_class& x_in, long n_max) {
  if (n_max < 0) throw Error(Errc::out_of_range, "n_max must be >= 0");
  mpq_class x = x_in;
  x.canonicalize();
  CFExpansion cf;
  mpz_class num = x.get_num(), den = x.get_den();
  for (long n = 0; n <= n_max; ++n) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    push_quotient(cf, a);
    mpz_class rem = num - a * den;
    if (rem == 0) {
      canonicalize(cf);
      cf.status = CFStatus::terminated;
      return cf;
    }
    num = den;
    den = rem;
  }
  cf.status = CFStatus::complete;
  return cf;
}

const Rational& convergent(const CFExpansion& cf, long n) {
  if (n < 0 || n >= static_cast<long>(cf.size())) {
    throw Error(Errc::out_of_range, "convergent index " + std::to_string(n) + " not computed");
  }
  return cf.convergents[static_cast<size_t>(n)];
}

}  // namespace modelock
