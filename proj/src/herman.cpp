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

#include "modelock/herman.hpp"

#include <cmath>
#include <numbers>

#include "modelock/error.hpp"

namespace modelock {

SampledConjugacy birkhoff_phi(const CircleLift& base, const BigReal& theta, long n, long n_grid, Bits bits,
                              Exec exec) {
  if (n < 1 || n_grid < 1) throw Error(Errc::out_of_range, "birkhoff_phi needs n >= 1 and n_grid >= 1");
  const TranslatedLift map(base, BigReal(bits));
  const BigReal th = theta.with_bits(bits);
  SampledConjugacy out{unit_grid(n_grid, bits), std::vector<BigReal>(static_cast<size_t>(n_grid), BigReal(bits)), n,
                       th};
  for_each_index(exec, n_grid, [&](long j) {
    BigReal y = out.x[static_cast<size_t>(j)];
    BigReal sum(bits);
    for (long k = 0; k < n; ++k) {
      sum += y;
      sum -= th * k;
      if (k + 1 < n) y = eval(map, y);
    }
    out.phi[static_cast<size_t>(j)] = sum / n;
  });
  return out;
}

Jet birkhoff_jet(const TranslatedLift& map, const BigReal& theta, long n, const BigReal& x) {
  if (n < 1) throw Error(Errc::out_of_range, "averaging depth must be >= 1");
  const Bits bits = map.precision();
  const BigReal th = theta.with_bits(bits);
  BigReal y = x.with_bits(bits), dy(1, bits);
  BigReal sum(bits), dsum(bits);
  for (long k = 0; k < n; ++k) {
    sum += y;
    sum -= th * k;
    dsum += dy;
    if (k + 1 < n) {
      Jet j = eval_jet(map, y);
      y = std::move(j.value);
      dy *= j.slope;
    }
  }
  return {sum / n, dsum / n};
}

std::vector<BigComplex> fourier_coefficients(const std::vector<BigReal>& g, long k_max, Exec exec) {
  const long n = static_cast<long>(g.size());
  if (k_max < 0 || n < 4 * k_max || n == 0) throw Error(Errc::out_of_range, "Fourier needs N >= 4 k_max");
  const Bits bits{g.front().bits()};
  const BigReal two_pi = BigReal::pi(bits) * 2;
  std::vector<BigReal> cs(static_cast<size_t>(n), BigReal(bits)), sn(static_cast<size_t>(n), BigReal(bits));
  for_each_index(exec, n, [&](long m) {
    sin_cos(two_pi * m / n, sn[static_cast<size_t>(m)], cs[static_cast<size_t>(m)]);
  });
  std::vector<BigComplex> out(static_cast<size_t>(2 * k_max + 1), BigComplex(bits));
  for_each_index(exec, k_max + 1, [&](long k) {
    BigReal re(bits), im(bits);
    for (long j = 0; j < n; ++j) {
      const size_t m = static_cast<size_t>((k * j) % n);
      re += g[static_cast<size_t>(j)] * cs[m];
      im -= g[static_cast<size_t>(j)] * sn[m];
    }
    re /= n;
    im /= n;
    out[static_cast<size_t>(k_max - k)] = BigComplex(re, -im);
    out[static_cast<size_t>(k_max + k)] = BigComplex(std::move(re), std::move(im));
  });
  return out;
}

std::vector<BigComplex> conjugacy_fourier(const SampledConjugacy& phi, long k_max, Exec exec) {
  std::vector<BigReal> g;
  g.reserve(phi.x.size());
  for (size_t j = 0; j < phi.x.size(); ++j) g.push_back(phi.phi[j] - phi.x[j]);
  return fourier_coefficients(g, k_max, exec);
}

std::vector<BigReal> rotation_frame_samples(const CircleLift& base, const BigReal& theta, long n, long n_grid,
                                            Bits bits, Exec exec) {
  const TranslatedLift map(base, BigReal(bits));
  const auto ys = unit_grid(n_grid, bits);
  const BigReal stop = ldexp2(-bits.value + 8, bits);
  std::vector<BigReal> out(static_cast<size_t>(n_grid), BigReal(bits));
  for_each_index(exec, n_grid, [&](long j) {
    const BigReal& y = ys[static_cast<size_t>(j)];
    BigReal x = y;
    for (int iter = 0;; ++iter) {
      if (iter == 200) throw Error(Errc::tol_unreachable, "conjugacy inversion did not converge");
      const Jet phi = birkhoff_jet(map, theta, n, x);
      if (!(phi.slope > 0)) throw Error(Errc::tol_unreachable, "Birkhoff average is not increasing");
      const BigReal step = (phi.value - y) / phi.slope;
      x -= step;
      if (abs(step) <= stop) {
        out[static_cast<size_t>(j)] = birkhoff_jet(map, theta, n, x).slope - 1;
        break;
      }
    }
  });
  return out;
}

ModulusEstimate modulus_estimate(const std::vector<BigComplex>& coeffs, long k_lo, long k_hi) {
  const long k_max = (static_cast<long>(coeffs.size()) - 1) / 2;
  if (k_lo < 1 || k_hi < k_lo || k_hi > k_max) throw Error(Errc::out_of_range, "bad fit window");
  const Bits bits{coeffs.front().bits()};
  const BigReal floor_level = ldexp2(-bits.value / 2, bits);
  bool any_above = false;
  for (long k = 1; k <= k_max; ++k) {
    if (abs(coeffs[static_cast<size_t>(k_max + k)]) > floor_level) any_above = true;
  }
  ModulusEstimate est;
  est.k_lo = k_lo;
  est.k_hi = k_hi;
  if (!any_above) {
    est.sentinel_infinite = true;
    est.tau_hat = std::numeric_limits<double>::infinity();
    return est;
  }
  std::vector<double> ks, ls;
  for (long k = k_lo; k <= k_hi; ++k) {
    const BigReal m = abs(coeffs[static_cast<size_t>(k_max + k)]);
    if (m > floor_level) {
      ks.push_back(static_cast<double>(k));
      ls.push_back(log(m).to_double());
    }
  }
  if (ks.size() < 3) {
    throw Error(Errc::insufficient_spectrum,
                std::to_string(ks.size()) + " coefficients above the noise floor in the fit window");
  }
  const double n = static_cast<double>(ks.size());
  double sk = 0, sl = 0, skk = 0, skl = 0;
  for (size_t i = 0; i < ks.size(); ++i) {
    sk += ks[i];
    sl += ls[i];
    skk += ks[i] * ks[i];
    skl += ks[i] * ls[i];
  }
  est.fit_slope = (n * skl - sk * sl) / (n * skk - sk * sk);
  est.fit_intercept = (sl - est.fit_slope * sk) / n;
  double ss = 0;
  for (size_t i = 0; i < ks.size(); ++i) {
    const double r = ls[i] - (est.fit_intercept + est.fit_slope * ks[i]);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / n);
  est.points = static_cast<long>(ks.size());
  est.k_lo = static_cast<long>(ks.front());
  est.k_hi = static_cast<long>(ks.back());
  est.tau_hat = std::max(0.0, -est.fit_slope / (2.0 * std::numbers::pi));
  return est;
}

ModulusEstimate estimate_tau(const CircleLift& base, const BigReal& theta, long n, long n_grid, long k_max, Bits bits,
                             Exec exec) {
  const auto g = rotation_frame_samples(base, theta, n, n_grid, bits, exec);
  const auto coeffs = fourier_coefficients(g, k_max, exec);
  return modulus_estimate(coeffs, 2, std::max<long>(2, k_max / 2));
}

CircleLift make_conjugated_rotation(const Expr& theta, const Expr& epsilon) {
  const Bits bits{128};
  const BigReal eps = epsilon.eval(bits);
  if (!eps.is_finite() || !(abs(eps) * BigReal::pi(bits) * 2 < 1)) {
    throw Error(Errc::invalid_epsilon, "need |2 pi eps| < 1, got eps = " + to_string(eps, 10));
  }
  return CircleLift::conjugated_rotation(theta, epsilon);
}

SinhBoundReport sinh_bound_check(long q, double tau_prime,
                                   const std::function<std::complex<double>(std::complex<double>)>& g,
                                   long strip_grid) {
  if (q < 1 || !(tau_prime > 0) || strip_grid < 2) throw Error(Errc::out_of_range, "bad sinh-bound arguments");
  SinhBoundReport r;
  for (long j = 0; j < strip_grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(strip_grid);
    r.max_real = std::max(r.max_real, std::abs(g({x, 0.0})));
    r.sup_strip = std::max(r.sup_strip, std::abs(g({x, tau_prime})));
    r.sup_strip = std::max(r.sup_strip, std::abs(g({x, -tau_prime})));
  }
  const double s = std::sinh(std::numbers::pi * static_cast<double>(q) * tau_prime);
  r.sinh2 = s * s;
  r.rhs = r.sup_strip / r.sinh2;
  r.holds = r.max_real <= r.rhs;
  return r;
}

SinhBoundReport sinh_bound_check(long q, double tau_prime, double a, double b, StripTestFunction fn,
                                   long strip_grid) {
  const double pq = std::numbers::pi * static_cast<double>(q);
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  return sinh_bound_check(
      q, tau_prime,
      [&](std::complex<double> z) -> std::complex<double> {
        if (fn == StripTestFunction::zero) return 0.0;
        const std::complex<double> g0 = std::sin(pq * (z - a)) * std::sin(pq * (z - b));
        if (fn == StripTestFunction::product) return g0;
        return g0 * std::exp(two_pi_i * z);
      },
      strip_grid);
}

}  // namespace modelock
