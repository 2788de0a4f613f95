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

#include <complex>
#include <functional>
#include <vector>

#include "modelock/circlemap.hpp"
#include "modelock/kernels.hpp"

namespace modelock {

/// Raw Birkhoff average Phi_n(x) = (1/n) sum_{k<n} (F^k(x) - k theta) on x_j = j/N.
struct SampledConjugacy {
  std::vector<BigReal> x;
  std::vector<BigReal> phi;
  long depth = 0;
  BigReal theta{Bits{kMinBits}};
};

SampledConjugacy birkhoff_phi(const CircleLift& base, const BigReal& theta, long n, long n_grid, Bits bits,
                              Exec exec = Exec::parallel);

/// Phi_n(x) and Phi_n'(x) for F_t (theta at the map precision).
Jet birkhoff_jet(const TranslatedLift& map, const BigReal& theta, long n, const BigReal& x);

/// Discrete Fourier coefficients of periodic samples g_j = g(j/N):
/// c_k = (1/N) sum_j g_j e^{-2 pi i k j / N}, returned for k = -k_max..k_max
/// (index k + k_max). Throws Error(out_of_range) unless N >= 4 k_max.
std::vector<BigComplex> fourier_coefficients(const std::vector<BigReal>& g, long k_max,
                                             Exec exec = Exec::parallel);

/// Coefficients of Phi - Id.
std::vector<BigComplex> conjugacy_fourier(const SampledConjugacy& phi, long k_max, Exec exec = Exec::parallel);

/// Samples of Phi_n' o Phi_n^{-1} - 1 on y_j = j/N: the derivative of the
/// conjugacy seen from the rotation side. Its singularities sit where the
/// inverse conjugacy stops being locally univalent, so its Fourier decay
/// measures the univalence width rather than the analyticity width of Phi.
std::vector<BigReal> rotation_frame_samples(const CircleLift& base, const BigReal& theta, long n, long n_grid,
                                            Bits bits, Exec exec = Exec::parallel);

struct ModulusEstimate {
  double tau_hat = 0.0;  // half-modulus; the ring modulus is 2 tau_hat
  double fit_slope = 0.0;
  double fit_intercept = 0.0;
  long k_lo = 0;
  long k_hi = 0;
  long points = 0;
  double residual = 0.0;  // RMS of the fit in log |c_k|
  bool sentinel_infinite = false;
};

/// Least-squares line through (k, log|c_k|) for k in [k_lo, k_hi] with |c_k|
/// above 2^(-P/2); tau_hat = -slope / (2 pi). coeffs is indexed as returned by
/// fourier_coefficients. Throws Error(insufficient_spectrum) when fewer than 3
/// coefficients clear the noise floor but some do.
ModulusEstimate modulus_estimate(const std::vector<BigComplex>& coeffs, long k_lo, long k_hi);

/// Rotation-frame spectrum of the Birkhoff conjugacy at depth n, fitted on
/// k in [2, k_max / 2].
ModulusEstimate estimate_tau(const CircleLift& base, const BigReal& theta, long n, long n_grid, long k_max,
                             Bits bits, Exec exec = Exec::parallel);

/// Psi o R_theta o Psi^-1 with Psi(x) = x + eps sin 2 pi x. Throws
/// Error(invalid_epsilon) unless |2 pi eps| < 1.
CircleLift make_conjugated_rotation(const Expr& theta, const Expr& epsilon);

enum class StripTestFunction {
  zero,             // G = 0
  product,          // sin(pi q (z - a)) sin(pi q (z - b))
  product_exp,      // product * e^{2 pi i z}
};

struct SinhBoundReport {
  double max_real = 0.0;   // max over the real grid of |G|
  double sup_strip = 0.0;  // sup over Im z = +-tau' of |G|
  double sinh2 = 0.0;      // sinh(pi q tau')^2
  double rhs = 0.0;        // sup_strip / sinh2
  bool holds = false;      // max_real <= rhs
};

/// Evaluates max_R |G| <= sup_{|Im z| = tau'} |G| / sinh^2(pi q tau') on a grid
/// of strip_grid points per line.
SinhBoundReport sinh_bound_check(long q, double tau_prime, double a, double b, StripTestFunction fn,
                                   long strip_grid);
SinhBoundReport sinh_bound_check(long q, double tau_prime,
                                   const std::function<std::complex<double>(std::complex<double>)>& g,
                                   long strip_grid);

}  // namespace modelock
