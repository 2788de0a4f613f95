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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modelock/bigcomplex.hpp"
#include "modelock/expr.hpp"
#include "modelock/precision.hpp"

namespace modelock {

enum class LiftKind { trig_poly, pure_rotation, conjugated_rotation };

/// Exact description of an increasing analytic lift F with F - Id 1-periodic.
///
///  - trig_poly:   F(x) = x + c0 + sum_k (a_k cos 2 pi k x + b_k sin 2 pi k x)
///  - pure_rotation: F(x) = x + theta
///  - conjugated_rotation: F = Psi o R_theta o Psi^-1, Psi(x) = x + eps sin 2 pi x
///
/// Coefficients are symbolic (Expr) and materialized at whatever precision a
/// computation asks for. Constructors validate monotonicity once and throw
/// Error(invalid_map) on failure; evaluation never re-validates.
class CircleLift {
 public:
  static CircleLift trig_poly(Expr c0, std::vector<Expr> a, std::vector<Expr> b);
  /// x + a sin(2 pi x), the standard (Arnold) family at height a.
  static CircleLift standard(Expr a);
  static CircleLift rotation(Expr theta);
  static CircleLift conjugated_rotation(Expr theta, Expr epsilon);

  LiftKind kind() const { return kind_; }
  const Expr& c0() const { return scalars_.at(0); }
  const std::vector<Expr>& a() const { return a_; }
  const std::vector<Expr>& b() const { return b_; }
  /// Rotation angle (pure_rotation, conjugated_rotation).
  const Expr& theta() const { return scalars_.at(0); }
  const Expr& epsilon() const { return scalars_.at(1); }

  /// Same lift with the constant term shifted by `offset` (F + offset).
  /// Only defined for trig_poly and pure_rotation.
  CircleLift shifted(const Expr& offset) const;

  /// Height h such that complex evaluation is valid on |Im z| <= h.
  /// Infinite for trig_poly and pure_rotation.
  double strip_height() const { return strip_height_; }

  /// Canonical one-line map description (the inline map-spec syntax).
  std::string describe() const;

 private:
  CircleLift(LiftKind kind, std::vector<Expr> scalars, std::vector<Expr> a, std::vector<Expr> b);
  void validate();

  LiftKind kind_;
  std::vector<Expr> scalars_;
  std::vector<Expr> a_, b_;
  double strip_height_ = 0.0;
};

/// Value and x-derivative.
struct Jet {
  BigReal value;
  BigReal slope;
};

/// F_t = F + t with coefficients materialized at a fixed precision
/// (the precision of t). Cheap to copy; shares coefficient storage.
class TranslatedLift {
 public:
  TranslatedLift(const CircleLift& base, const BigReal& t);

  /// Same materialized base, different translation (t is re-rounded).
  TranslatedLift with_t(const BigReal& t) const;

  const CircleLift& base() const;
  const BigReal& t() const { return t_; }
  long bits() const { return t_.bits(); }
  Bits precision() const { return Bits{t_.bits()}; }

  struct Coefficients;

 private:
  TranslatedLift(std::shared_ptr<const Coefficients> coeffs, BigReal t);
  friend BigReal eval(const TranslatedLift&, const BigReal&);
  friend Jet eval_jet(const TranslatedLift&, const BigReal&);
  friend BigComplex eval_complex(const TranslatedLift&, const BigComplex&);
  friend BigReal iterate(const TranslatedLift&, long, const BigReal&);
  friend Jet displacement_jet(const TranslatedLift&, long, long, const BigReal&);

  std::shared_ptr<const Coefficients> coeffs_;
  BigReal t_;
};

/// F_t(x). Satisfies eval(x + 1) = eval(x) + 1.
BigReal eval(const TranslatedLift& map, const BigReal& x);
/// F_t(x) and F_t'(x).
Jet eval_jet(const TranslatedLift& map, const BigReal& x);
/// Analytic continuation to |Im z| <= strip_height(). Throws
/// Error(strip_exceeded) when the conjugacy inversion cannot be performed.
BigComplex eval_complex(const TranslatedLift& map, const BigComplex& z);
/// q-fold composition F_t^q(x).
BigReal iterate(const TranslatedLift& map, long q, const BigReal& x);
/// G(x) = F_t^q(x) - x - p.
BigReal displacement(const TranslatedLift& map, long p, long q, const BigReal& x);
/// G(x) and G'(x) = (F_t^q)'(x) - 1.
Jet displacement_jet(const TranslatedLift& map, long p, long q, const BigReal& x);

/// Psi(y) = y + eps sin(2 pi y) at the precision of y.
BigReal conjugacy_psi(const BigReal& epsilon, const BigReal& y);
/// Psi^-1(x) by Newton iteration, residual <= 2^(-P+4).
BigReal conjugacy_psi_inverse(const BigReal& epsilon, const BigReal& x);

/// Closed interval [lo, hi] certifying a real quantity.
struct Enclosure {
  BigReal lo;
  BigReal hi;

  BigReal width() const { return hi - lo; }
  BigReal mid() const { return (lo + hi) / 2; }
  bool contains(const BigReal& v) const { return lo <= v && v <= hi; }
};

}  // namespace modelock
