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

// Independent reference computations used to check the library. Nothing here
// calls into the solver paths under test; maps are re-implemented directly on
// MPFR values or doubles.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "modelock/bigcomplex.hpp"
#include "modelock/precision.hpp"

namespace oracle {

using modelock::BigComplex;
using modelock::BigReal;
using modelock::Bits;

/// x + t + a sin(2 pi x).
inline BigReal standard_map(const BigReal& a, const BigReal& t, const BigReal& x) {
  const Bits bits{x.bits()};
  return x + t + a * modelock::sin(BigReal::pi(bits) * 2 * x);
}

/// Psi^-1 by plain bisection (Psi is increasing with slope >= 1 - 2 pi |eps|).
inline BigReal psi_inverse_bisect(const BigReal& eps, const BigReal& x) {
  const Bits bits{x.bits()};
  const BigReal two_pi = BigReal::pi(bits) * 2;
  BigReal lo = x - modelock::abs(eps) - 1, hi = x + modelock::abs(eps) + 1;
  for (long i = 0; i < bits.value + 8; ++i) {
    BigReal mid = (lo + hi) / 2;
    BigReal v = mid + eps * modelock::sin(two_pi * mid);
    (v < x ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

inline BigReal conj_map(const BigReal& theta, const BigReal& eps, const BigReal& t, const BigReal& x) {
  const Bits bits{x.bits()};
  const BigReal y = psi_inverse_bisect(eps, x) + theta;
  return y + eps * modelock::sin(BigReal::pi(bits) * 2 * y) + t;
}

template <class Map>
BigReal compose(Map&& f, long q, BigReal x) {
  for (long k = 0; k < q; ++k) x = f(x);
  return x;
}

/// sin(w) = (e^{iw} - e^{-iw}) / (2i) evaluated with complex exponentials.
inline BigComplex sin_by_exponentials(const BigComplex& w) {
  const BigComplex iw(-w.im, w.re);
  const BigComplex e1 = modelock::exp(iw);
  const BigComplex e2 = modelock::exp(-iw);
  const BigComplex diff = e1 - e2;
  // divide by 2i: (u + iv) / (2i) = v/2 - i u/2
  return BigComplex(diff.im / 2, -diff.re / 2);
}

struct ScanResult {
  double min_value, max_value;
};

/// Dense scan of a periodic function with golden-section polish around the
/// best samples.
inline ScanResult scan_extrema(const std::function<double(double)>& g, long n) {
  long imin = 0, imax = 0;
  std::vector<double> v(static_cast<size_t>(n));
  for (long j = 0; j < n; ++j) {
    v[static_cast<size_t>(j)] = g(static_cast<double>(j) / static_cast<double>(n));
    if (v[static_cast<size_t>(j)] < v[static_cast<size_t>(imin)]) imin = j;
    if (v[static_cast<size_t>(j)] > v[static_cast<size_t>(imax)]) imax = j;
  }
  auto golden = [&](long j, int s) {
    const double h = 1.0 / static_cast<double>(n);
    double a = static_cast<double>(j) * h - h, b = static_cast<double>(j) * h + h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
      const double c = b - r * (b - a), d = a + r * (b - a);
      if (s * g(c) > s * g(d)) b = d; else a = c;
    }
    return g(0.5 * (a + b));
  };
  return {std::min(v[static_cast<size_t>(imin)], golden(imin, -1)),
          std::max(v[static_cast<size_t>(imax)], golden(imax, +1))};
}

/// Plateau of the family G_t = G_0 + t (displacement shifts by t per unit t
/// only for q = 1; in general we bisect on sign scans): t_minus is the
/// smallest t with max_x G_t >= 0, t_plus the largest with min_x G_t <= 0.
inline std::pair<double, double> plateau_by_scans(const std::function<double(double, double)>& g_t, double t_lo,
                                                  double t_hi, long n) {
  auto max_at = [&](double t) { return scan_extrema([&](double x) { return g_t(t, x); }, n).max_value; };
  auto min_at = [&](double t) { return scan_extrema([&](double x) { return g_t(t, x); }, n).min_value; };
  double a = t_lo, b = t_hi;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    (max_at(m) < 0 ? a : b) = m;
  }
  const double t_minus = 0.5 * (a + b);
  a = t_lo;
  b = t_hi;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    (min_at(m) <= 0 ? a : b) = m;
  }
  return {t_minus, 0.5 * (a + b)};
}

/// Best approximations of the second kind: successive records of |q x - p|.
inline std::vector<std::pair<long, long>> best_approximations(double x, long q_max) {
  std::vector<std::pair<long, long>> out;
  double best = std::numeric_limits<double>::infinity();
  for (long q = 1; q <= q_max; ++q) {
    const long p = std::lround(x * static_cast<double>(q));
    const double err = std::abs(static_cast<double>(q) * x - static_cast<double>(p));
    if (err < best) {
      best = err;
      out.emplace_back(p, q);
    }
  }
  return out;
}

}  // namespace oracle
