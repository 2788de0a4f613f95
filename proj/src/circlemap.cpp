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

#include "modelock/circlemap.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "modelock/error.hpp"

namespace modelock {

namespace {

constexpr long kValidationBits = 128;

double strip_height_for_epsilon(double eps) {
  const double r = 2.0 * std::numbers::pi * std::abs(eps);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  // Psi' vanishes first at Im z = tau_c; the image of the boundary line
  // dips down to tau_c - |eps| sinh(2 pi tau_c), below which Psi^-1 is
  // single-valued.
  const double tau_c = std::acosh(1.0 / r) / (2.0 * std::numbers::pi);
  return tau_c - std::abs(eps) * std::sinh(2.0 * std::numbers::pi * tau_c);
}

std::string join(const std::vector<Expr>& xs) {
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i].text();
  }
  return out + "]";
}

}  // namespace

CircleLift::CircleLift(LiftKind kind, std::vector<Expr> scalars, std::vector<Expr> a, std::vector<Expr> b)
    : kind_(kind), scalars_(std::move(scalars)), a_(std::move(a)), b_(std::move(b)) {
  validate();
}

CircleLift CircleLift::trig_poly(Expr c0, std::vector<Expr> a, std::vector<Expr> b) {
  if (a.size() < b.size()) a.resize(b.size(), Expr::integer(0));
  if (b.size() < a.size()) b.resize(a.size(), Expr::integer(0));
  return CircleLift(LiftKind::trig_poly, {std::move(c0)}, std::move(a), std::move(b));
}

CircleLift CircleLift::standard(Expr a) {
  return trig_poly(Expr::integer(0), {Expr::integer(0)}, {std::move(a)});
}

CircleLift CircleLift::rotation(Expr theta) {
  return CircleLift(LiftKind::pure_rotation, {std::move(theta)}, {}, {});
}

CircleLift CircleLift::conjugated_rotation(Expr theta, Expr epsilon) {
  return CircleLift(LiftKind::conjugated_rotation, {std::move(theta), std::move(epsilon)}, {}, {});
}

CircleLift CircleLift::shifted(const Expr& offset) const {
  const Expr sum = Expr::parse("(" + scalars_.at(0).text() + ")+(" + offset.text() + ")");
  switch (kind_) {
    case LiftKind::trig_poly: return trig_poly(sum, a_, b_);
    case LiftKind::pure_rotation: return rotation(sum);
    case LiftKind::conjugated_rotation: break;
  }
  throw Error(Errc::invalid_map, "a translated conjugated rotation is not a conjugated rotation");
}

void CircleLift::validate() {
  const Bits bits{kValidationBits};
  const BigReal two_pi = BigReal::pi(bits) * 2;
  switch (kind_) {
    case LiftKind::pure_rotation:
      strip_height_ = std::numeric_limits<double>::infinity();
      if (!theta().eval(bits).is_finite()) throw Error(Errc::invalid_map, "rotation angle is not finite");
      return;
    case LiftKind::conjugated_rotation: {
      const BigReal eps = epsilon().eval(bits);
      if (!eps.is_finite() || !(abs(eps) * two_pi < 1)) {
        throw Error(Errc::invalid_map, "conjugated rotation needs |2 pi eps| < 1");
      }
      strip_height_ = strip_height_for_epsilon(eps.to_double());
      return;
    }
    case LiftKind::trig_poly: break;
  }
  strip_height_ = std::numeric_limits<double>::infinity();
  // Sufficient condition: sum 2 pi k (|a_k| + |b_k|) < 1.
  BigReal slope_bound(bits), curvature_bound(bits);
  std::vector<BigReal> av, bv;
  for (size_t i = 0; i < a_.size(); ++i) {
    av.push_back(a_[i].eval(bits));
    bv.push_back(b_[i].eval(bits));
    const long k = static_cast<long>(i) + 1;
    const BigReal mag = abs(av.back()) + abs(bv.back());
    if (!mag.is_finite()) throw Error(Errc::invalid_map, "non-finite trig coefficient");
    slope_bound += two_pi * k * mag;
    curvature_bound += two_pi * two_pi * (k * k) * mag;
  }
  if (!c0().eval(bits).is_finite()) throw Error(Errc::invalid_map, "non-finite c0");
  if (slope_bound < 1) return;
  // Grid check: min F' over the grid minus the curvature allowance must stay positive.
  const long n = 4096 * static_cast<long>(std::max<size_t>(a_.size(), 1));
  BigReal min_deriv(std::numeric_limits<double>::infinity(), bits);
  for (long j = 0; j < n; ++j) {
    const BigReal phi = two_pi * BigReal(j, bits) / n;
    BigReal d(1, bits);
    for (size_t i = 0; i < av.size(); ++i) {
      const long k = static_cast<long>(i) + 1;
      BigReal s(bits), c(bits);
      sin_cos(phi * k, s, c);
      d += two_pi * k * (bv[i] * c - av[i] * s);
    }
    if (d < min_deriv) min_deriv = d;
  }
  const BigReal certified = min_deriv - curvature_bound / (2 * n);
  if (!(certified > 0)) {
    throw Error(Errc::invalid_map, "lift is not certified increasing (min F' bound " +
                                       to_string(certified, 6) + ")");
  }
}

std::string CircleLift::describe() const {
  switch (kind_) {
    case LiftKind::pure_rotation: return "rotation theta=" + theta().text();
    case LiftKind::conjugated_rotation:
      return "conjrot theta=" + theta().text() + " eps=" + epsilon().text();
    case LiftKind::trig_poly: break;
  }
  return "trigpoly c0=" + c0().text() + " a=" + join(a_) + " b=" + join(b_);
}

struct TranslatedLift::Coefficients {
  CircleLift base;
  Bits bits;
  BigReal two_pi;
  BigReal c0;                    // trig_poly constant / rotation angle
  std::vector<BigReal> a, b;     // trig_poly
  std::vector<BigReal> da, db;   // 2 pi k a_k, 2 pi k b_k
  BigReal theta, eps, two_pi_eps;
  double eps_d = 0.0;
  int newton_loss_bits = 0;
};

namespace {

std::shared_ptr<const TranslatedLift::Coefficients> materialize(const CircleLift& base, Bits bits) {
  auto c = std::make_shared<TranslatedLift::Coefficients>(TranslatedLift::Coefficients{
      base, bits, BigReal::pi(bits) * 2, BigReal(bits), {}, {}, {}, {}, BigReal(bits), BigReal(bits),
      BigReal(bits)});
  switch (base.kind()) {
    case LiftKind::trig_poly:
      c->c0 = base.c0().eval(bits);
      for (size_t i = 0; i < base.a().size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        c->a.push_back(base.a()[i].eval(bits));
        c->b.push_back(base.b()[i].eval(bits));
        c->da.push_back(c->two_pi * k * c->a.back());
        c->db.push_back(c->two_pi * k * c->b.back());
      }
      break;
    case LiftKind::pure_rotation:
      c->theta = base.theta().eval(bits);
      break;
    case LiftKind::conjugated_rotation: {
      c->theta = base.theta().eval(bits);
      c->eps = base.epsilon().eval(bits);
      c->two_pi_eps = c->two_pi * c->eps;
      c->eps_d = c->eps.to_double();
      // Newton constant |Psi''| / (2 min Psi') in bits.
      const double r = 2.0 * std::numbers::pi * std::abs(c->eps_d);
      const double k = (2.0 * std::numbers::pi * r) / (2.0 * (1.0 - r));
      c->newton_loss_bits = static_cast<int>(std::ceil(std::log2(std::max(k, 1.0)))) + 2;
      break;
    }
  }
  return c;
}

// Psi^-1 on a reduced argument u, seeded in double precision and refined by
// Newton steps whose working precision doubles with the attained accuracy.
// Also returns Psi'(y) evaluated during the last step (accurate to about half
// the working precision, enough for derivative propagation).
BigReal psi_inverse_reduced(const TranslatedLift::Coefficients& c, const BigReal& u, BigReal* psi_prime) {
  const double ud = u.to_double();
  const double tp = 2.0 * std::numbers::pi;
  double y = ud - c.eps_d * std::sin(tp * ud);
  for (int i = 0; i < 60; ++i) {
    const double step = (y + c.eps_d * std::sin(tp * y) - ud) / (1.0 + tp * c.eps_d * std::cos(tp * y));
    y -= step;
    if (std::abs(step) < 1e-15) break;
  }
  const long target = c.bits.value + 4;
  long acc = 48 - c.newton_loss_bits;
  BigReal yb(y, Bits{std::min<long>(target, 2 * std::max<long>(acc, 8) + 8)});
  BigReal s(Bits{yb.bits()}), co(Bits{yb.bits()});
  for (int iter = 0; iter < 64; ++iter) {
    const long prec = std::min<long>(target, 2 * std::max<long>(acc, 8) + 8);
    if (yb.bits() < prec) yb = yb.with_bits(Bits{prec});
    const BigReal two_pi = c.two_pi.with_bits(Bits{prec});
    sin_cos(two_pi * yb, s, co);
    BigReal deriv = c.two_pi_eps.with_bits(Bits{prec}) * co;
    deriv += 1;
    BigReal resid = c.eps.with_bits(Bits{prec}) * s;
    resid += yb;
    resid -= u.with_bits(Bits{prec});
    yb -= resid / deriv;
    const bool final_precision = prec >= target;
    acc = 2 * acc - c.newton_loss_bits;
    if (final_precision && acc >= target) {
      if (psi_prime) *psi_prime = deriv.with_bits(c.bits);
      return yb.with_bits(c.bits);
    }
    if (acc < 8) acc = 8;
  }
  throw Error(Errc::strip_exceeded, "conjugacy inversion did not converge");
}

// Per-thread temporaries for the trig-polynomial path.
struct TrigScratch {
  explicit TrigScratch(Bits bits)
      : phi(bits), s1(bits), c1(bits), sk(bits), ck(bits), tmp(bits), prod(bits) {}
  BigReal phi, s1, c1, sk, ck, tmp, prod;
};

TrigScratch& trig_scratch(Bits bits) {
  thread_local std::unique_ptr<TrigScratch> scratch;
  if (!scratch || scratch->phi.bits() != bits.value) scratch = std::make_unique<TrigScratch>(bits);
  return *scratch;
}

}  // namespace

TranslatedLift::TranslatedLift(const CircleLift& base, const BigReal& t)
    : coeffs_(materialize(base, Bits{t.bits()})), t_(t) {}

TranslatedLift::TranslatedLift(std::shared_ptr<const Coefficients> coeffs, BigReal t)
    : coeffs_(std::move(coeffs)), t_(std::move(t)) {}

TranslatedLift TranslatedLift::with_t(const BigReal& t) const {
  return TranslatedLift(coeffs_, t.with_bits(coeffs_->bits));
}

const CircleLift& TranslatedLift::base() const { return coeffs_->base; }

Jet eval_jet(const TranslatedLift& map, const BigReal& x_in) {
  const auto& c = *map.coeffs_;
  const Bits bits = c.bits;
  BigReal x = x_in.bits() == bits.value ? x_in : x_in.with_bits(bits);
  switch (c.base.kind()) {
    case LiftKind::pure_rotation: {
      BigReal v = x + c.theta;
      v += map.t_;
      return {std::move(v), BigReal(1, bits)};
    }
    case LiftKind::trig_poly: {
      BigReal v = x + c.c0;
      v += map.t_;
      BigReal d(1, bits);
      if (c.a.empty()) return {std::move(v), std::move(d)};
      TrigScratch& w = trig_scratch(bits);
      mpfr_frac(w.phi.raw(), x.get(), MPFR_RNDN);
      mpfr_mul(w.phi.raw(), w.phi.get(), c.two_pi.get(), MPFR_RNDN);
      mpfr_sin_cos(w.s1.raw(), w.c1.raw(), w.phi.get(), MPFR_RNDN);
      mpfr_set(w.sk.raw(), w.s1.get(), MPFR_RNDN);
      mpfr_set(w.ck.raw(), w.c1.get(), MPFR_RNDN);
      for (size_t i = 0; i < c.a.size(); ++i) {
        if (i > 0) {
          // Angle addition: (c_k, s_k) -> (c_{k+1}, s_{k+1}).
          mpfr_mul(w.tmp.raw(), w.ck.get(), w.c1.get(), MPFR_RNDN);
          mpfr_mul(w.prod.raw(), w.sk.get(), w.s1.get(), MPFR_RNDN);
          mpfr_sub(w.tmp.raw(), w.tmp.get(), w.prod.get(), MPFR_RNDN);
          mpfr_mul(w.sk.raw(), w.sk.get(), w.c1.get(), MPFR_RNDN);
          mpfr_mul(w.prod.raw(), w.ck.get(), w.s1.get(), MPFR_RNDN);
          mpfr_add(w.sk.raw(), w.sk.get(), w.prod.get(), MPFR_RNDN);
          mpfr_swap(w.ck.raw(), w.tmp.raw());
        }
        mpfr_fma(v.raw(), c.a[i].get(), w.ck.get(), v.get(), MPFR_RNDN);
        mpfr_fma(v.raw(), c.b[i].get(), w.sk.get(), v.get(), MPFR_RNDN);
        mpfr_fma(d.raw(), c.db[i].get(), w.ck.get(), d.get(), MPFR_RNDN);
        mpfr_mul(w.prod.raw(), c.da[i].get(), w.sk.get(), MPFR_RNDN);
        mpfr_sub(d.raw(), d.get(), w.prod.get(), MPFR_RNDN);
      }
      return {std::move(v), std::move(d)};
    }
    case LiftKind::conjugated_rotation: {
      const BigReal n = floor(x);
      const BigReal u = x - n;
      BigReal dpsi_y(bits);
      BigReal w = psi_inverse_reduced(c, u, &dpsi_y);
      w += c.theta;
      BigReal s(bits), co(bits);
      sin_cos(c.two_pi * w, s, co);
      BigReal v = w + c.eps * s;
      v += n;
      v += map.t_;
      BigReal d = c.two_pi_eps * co;
      d += 1;
      d /= dpsi_y;
      return {std::move(v), std::move(d)};
    }
  }
  throw Error(Errc::invalid_map, "unknown lift kind");
}

BigReal eval(const TranslatedLift& map, const BigReal& x) {
  const auto& c = *map.coeffs_;
  if (c.base.kind() == LiftKind::conjugated_rotation) {
    const Bits bits = c.bits;
    const BigReal xb = x.with_bits(bits);
    const BigReal n = floor(xb);
    BigReal w = psi_inverse_reduced(c, xb - n, nullptr);
    w += c.theta;
    BigReal v = w + c.eps * sin(c.two_pi * w);
    v += n;
    v += map.t_;
    return v;
  }
  return eval_jet(map, x).value;
}

BigReal conjugacy_psi(const BigReal& epsilon, const BigReal& y) {
  const Bits bits{y.bits()};
  return y + epsilon.with_bits(bits) * sin(BigReal::pi(bits) * 2 * y);
}

BigReal conjugacy_psi_inverse(const BigReal& epsilon, const BigReal& x) {
  const CircleLift lift = CircleLift::conjugated_rotation(Expr::integer(0), Expr::literal(epsilon));
  const BigReal n = floor(x);
  return psi_inverse_reduced(*materialize(lift, Bits{x.bits()}), x - n, nullptr) + n;
}

BigComplex eval_complex(const TranslatedLift& map, const BigComplex& z_in) {
  const auto& c = *map.coeffs_;
  const Bits bits = c.bits;
  BigComplex z(z_in.re.with_bits(bits), z_in.im.with_bits(bits));
  switch (c.base.kind()) {
    case LiftKind::pure_rotation: {
      z.re += c.theta;
      z.re += map.t_;
      return z;
    }
    case LiftKind::trig_poly: {
      BigComplex v = z;
      v.re += c.c0;
      v.re += map.t_;
      for (size_t i = 0; i < c.a.size(); ++i) {
        const long k = static_cast<long>(i) + 1;
        const BigComplex arg(c.two_pi * k * z.re, c.two_pi * k * z.im);
        v += cos(arg) * c.a[i];
        v += sin(arg) * c.b[i];
      }
      return v;
    }
    case LiftKind::conjugated_rotation: {
      const double h = c.base.strip_height();
      if (std::abs(z.im.to_double()) > h) {
        throw Error(Errc::strip_exceeded, "|Im z| exceeds the inversion height " + std::to_string(h));
      }
      // Complex Newton for Psi(w) = z, seeded in double precision.
      const std::complex<double> zd(z.re.to_double(), z.im.to_double());
      const double tp = 2.0 * std::numbers::pi;
      std::complex<double> wd = zd - c.eps_d * std::sin(tp * zd);
      for (int i = 0; i < 80; ++i) {
        const std::complex<double> step = (wd + c.eps_d * std::sin(tp * wd) - zd) /
                                          (1.0 + tp * c.eps_d * std::cos(tp * wd));
        wd -= step;
        if (std::abs(step) < 1e-15) break;
      }
      BigComplex w(BigReal(wd.real(), bits), BigReal(wd.imag(), bits));
      const BigComplex two_pi_c(c.two_pi, BigReal(bits));
      const BigReal stop = ldexp2(-bits.value + 4, bits);
      bool converged = false;
      for (int i = 0; i < 64 && !converged; ++i) {
        const BigComplex arg = w * two_pi_c;
        const BigComplex resid = w + sin(arg) * c.eps - z;
        BigComplex deriv = cos(arg) * c.two_pi_eps;
        deriv.re += 1;
        const BigComplex step = resid / deriv;
        w -= step;
        converged = abs(step) <= stop;
      }
      if (!converged) throw Error(Errc::strip_exceeded, "complex conjugacy inversion did not converge");
      BigComplex shifted = w;
      shifted.re += c.theta;
      BigComplex v = shifted + sin(shifted * two_pi_c) * c.eps;
      v.re += map.t_;
      return v;
    }
  }
  throw Error(Errc::invalid_map, "unknown lift kind");
}

BigReal iterate(const TranslatedLift& map, long q, const BigReal& x) {
  if (q < 1) throw Error(Errc::out_of_range, "iterate requires q >= 1");
  BigReal y = x.with_bits(map.precision());
  for (long k = 0; k < q; ++k) y = eval(map, y);
  return y;
}

BigReal displacement(const TranslatedLift& map, long p, long q, const BigReal& x) {
  BigReal g = iterate(map, q, x);
  g -= x;
  g -= p;
  return g;
}

Jet displacement_jet(const TranslatedLift& map, long p, long q, const BigReal& x) {
  if (q < 1) throw Error(Errc::out_of_range, "displacement requires q >= 1");
  BigReal y = x.with_bits(map.precision());
  BigReal d(1, map.precision());
  for (long k = 0; k < q; ++k) {
    Jet j = eval_jet(map, y);
    y = std::move(j.value);
    d *= j.slope;
  }
  y -= x;
  y -= p;
  d -= 1;
  return {std::move(y), std::move(d)};
}

}  // namespace modelock
