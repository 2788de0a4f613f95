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

#include "modelock/locking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "modelock/error.hpp"
#include "modelock/extrema.hpp"

namespace modelock {

std::string_view to_string(TongueFlag f) {
  switch (f) {
    case TongueFlag::ok: return "ok";
    case TongueFlag::below_resolution: return "below-resolution";
    case TongueFlag::degenerate: return "degenerate";
    case TongueFlag::failed: return "failed";
  }
  return "unknown";
}

namespace {

bool is_rotation_like(const CircleLift& base) {
  if (base.kind() == LiftKind::pure_rotation) return true;
  if (base.kind() != LiftKind::trig_poly) return false;
  const Bits probe{64};
  for (size_t i = 0; i < base.a().size(); ++i) {
    if (!base.a()[i].eval(probe).is_zero() || !base.b()[i].eval(probe).is_zero()) return false;
  }
  return true;
}

struct Root {
  BigReal t;
  BigReal value;
};

// Brent's method on an increasing f with f(a) <= 0 <= f(b).
Root brent_root(const std::function<BigReal(const BigReal&)>& f, BigReal a, BigReal fa, BigReal b, BigReal fb,
                   const BigReal& xtol) {
  const Bits bits{a.bits()};
  const BigReal eps = ldexp2(-bits.value + 2, bits);
  BigReal c = b, fc = fb, d = b - a, e = d;
  for (int iter = 0; iter < 400; ++iter) {
    if (fb.sign() * fc.sign() > 0) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (abs(fc) < abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const BigReal tol1 = eps * abs(b) * 2 + xtol / 2;
    const BigReal xm = (c - b) / 2;
    if (abs(xm) <= tol1 || fb.is_zero()) return {b, fb};
    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      BigReal s = fb / fa, p(bits), q(bits);
      if (a == c) {
        p = xm * s * 2;
        q = 1 - s;
      } else {
        const BigReal qq = fa / fc, r = fb / fc;
        p = s * (xm * qq * (qq - r) * 2 - (b - a) * (r - 1));
        q = (qq - 1) * (r - 1) * (s - 1);
      }
      if (p.sign() > 0) q = -q;
      p = abs(p);
      const BigReal min1 = xm * q * 3 - abs(tol1 * q);
      const BigReal min2 = abs(e * q);
      if (p * 2 < min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (abs(d) > tol1) {
      b += d;
    } else {
      b += xm.sign() >= 0 ? tol1 : -tol1;
    }
    fb = f(b);
  }
  throw Error(Errc::bracket_failure, "root search did not converge");
}

// Zero of an increasing f with slope >= 1 in t. From f(t0) = v the root lies
// in [t0 - v, t0] (v > 0) or [t0, t0 - v] (v < 0).
Root monotone_root(const std::function<BigReal(const BigReal&)>& f, const BigReal& t0, const BigReal& v0,
                   const BigReal& xtol) {
  const Bits bits{t0.bits()};
  if (v0.is_zero()) return {t0, v0};
  const int dir = v0.sign() > 0 ? -1 : 1;
  BigReal step = abs(v0);
  BigReal near = t0, fnear = v0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (step > 2) step = BigReal(2, bits);
    BigReal far = t0 + step * dir;
    BigReal ffar = f(far);
    if (ffar.is_zero()) return {far, ffar};
    if (ffar.sign() != fnear.sign()) {
      return dir < 0 ? brent_root(f, far, ffar, near, fnear, xtol) : brent_root(f, near, fnear, far, ffar, xtol);
    }
    if (step >= 2) break;
    near = std::move(far);
    fnear = std::move(ffar);
    step *= 2;
  }
  throw Error(Errc::bracket_failure, "no sign change within |t - seed| <= 2");
}

}  // namespace

BigReal default_seed(const CircleLift& base, long p, long q, Bits bits) {
  BigReal pq = BigReal(p, bits) / q;
  if (base.kind() == LiftKind::trig_poly) return pq - base.c0().eval(bits);
  return pq - base.theta().eval(bits);
}

TongueRecord plateau(const CircleLift& base, long p, long q, const BigReal& tol_in, Bits bits,
                     const PlateauOptions& options) {
  if (q < 1 || std::gcd(p, q) != 1) throw Error(Errc::out_of_range, "plateau needs q >= 1 and gcd(p, q) = 1");
  if (!(tol_in > 0)) throw Error(Errc::out_of_range, "tolerance must be positive");
  const BigReal tol = tol_in.with_bits(bits);
  TongueRecord rec{p, q, BigReal(bits), BigReal(bits), BigReal(bits), bits.value, tol, TongueFlag::ok,
                   BigReal(bits), BigReal(bits), BigReal(bits), {}};

  if (is_rotation_like(base)) {
    rec.t_minus = default_seed(base, p, q, bits);
    rec.t_plus = rec.t_minus;
    rec.flag = TongueFlag::degenerate;
    return rec;
  }

  const long grid_n = options.grid_n > 0 ? options.grid_n : default_extrema_grid(q);
  const BigReal ext_tol = tol / 8;
  const TranslatedLift proto(base, BigReal(bits));
  auto upper = [&](const BigReal& t) {
    return displacement_max(proto.with_t(t), p, q, grid_n, ext_tol, options.exec).bound;
  };
  auto lower = [&](const BigReal& t) {
    return displacement_min(proto.with_t(t), p, q, grid_n, ext_tol, options.exec).bound;
  };

  const BigReal seed = options.t_seed ? options.t_seed->with_bits(bits) : default_seed(base, p, q, bits);
  const Root minus = monotone_root(upper, seed, upper(seed), tol / 2);
  rec.t_minus = minus.t;
  rec.max_at_minus = minus.value;

  const BigReal low_at_minus = lower(rec.t_minus);
  rec.spread_at_minus = rec.max_at_minus - low_at_minus;
  const Root plus = monotone_root(lower, rec.t_minus, low_at_minus, tol / 2);
  rec.t_plus = plus.t;
  rec.min_at_plus = plus.value;

  rec.width = rec.t_plus - rec.t_minus;
  if (rec.width < tol * 2) {
    rec.width = BigReal(bits);
    rec.flag = TongueFlag::below_resolution;
  }
  return rec;
}

BigReal width(const CircleLift& base, long p, long q, const BigReal& tol, Bits bits, const PlateauOptions& options) {
  return plateau(base, p, q, tol, bits, options).width;
}

namespace {

struct CountContext {
  const TranslatedLift& map;
  long p, q;
  BigReal curvature;
  BigReal tiny;
};

// A resolved piece of the period: either certified (known crossing count and
// endpoint signs) or a run of values inside the noise band.
struct Leaf {
  bool noise = false;
  int sign_a = 0, sign_b = 0;
  long crossings = 0;
};

void count_cell(const CountContext& ctx, const BigReal& u, const BigReal& h, const Jet& a, const Jet& b, int depth,
                std::vector<Leaf>& out) {
  const int sa = a.value.sign(), sb = b.value.sign();
  const bool na = abs(a.value) <= ctx.tiny, nb = abs(b.value) <= ctx.tiny;
  const BigReal allowance = ctx.curvature * h;
  if (sa != 0 && sb != 0) {
    if (sa != sb) {
      // Slope keeps one sign across the cell: exactly one crossing.
      if (a.slope.sign() == b.slope.sign() && min(abs(a.slope), abs(b.slope)) > allowance) {
        out.push_back({false, sa, sb, 1});
        return;
      }
    } else {
      // Same sign: certified free of zeros if the curvature dip cannot reach 0.
      const BigReal half = h / 2;
      BigReal reach_a = abs(a.value);
      if (a.slope.sign() == -sa) reach_a -= abs(a.slope) * half;
      BigReal reach_b = abs(b.value);
      if (b.slope.sign() == sb) reach_b -= abs(b.slope) * half;
      if (min(reach_a, reach_b) - ctx.curvature * half * half / 2 > 0) {
        out.push_back({false, sa, sb, 0});
        return;
      }
    }
  }
  if ((na && nb) || (depth >= 48 && (na || nb))) {
    out.push_back({true, 0, 0, 0});
    return;
  }
  if (depth >= 48) {
    throw Error(Errc::inconclusive, "cannot certify the sign of the displacement near x = " + to_string(u, 12));
  }
  const BigReal half = h / 2;
  const BigReal mid = u + half;
  const Jet m = displacement_jet(ctx.map, ctx.p, ctx.q, mid);
  count_cell(ctx, u, half, a, m, depth + 1, out);
  count_cell(ctx, mid, half, m, b, depth + 1, out);
}

// Certified crossings plus one per noise run between opposite signs and two
// per run between equal signs (a tangency).
CycleCount tally(std::vector<Leaf> leaves) {
  const auto first = std::find_if(leaves.begin(), leaves.end(), [](const Leaf& l) { return !l.noise; });
  if (first == leaves.end()) return {0, true};
  std::rotate(leaves.begin(), first, leaves.end());
  long total = 0;
  for (size_t i = 0; i < leaves.size();) {
    if (!leaves[i].noise) {
      total += leaves[i].crossings;
      ++i;
      continue;
    }
    const int before = leaves[i - 1].sign_b;
    while (i < leaves.size() && leaves[i].noise) ++i;
    const int after = leaves[i % leaves.size()].sign_a;
    total += before == after ? 2 : 1;
  }
  return {total, false};
}

}  // namespace

CycleCount cycle_count_check(const TranslatedLift& map, long p, long q, long grid_n) {
  if (q < 1 || grid_n < 2 * q) throw Error(Errc::out_of_range, "cycle count needs q >= 1 and grid_n >= 2q");
  const Bits bits = map.precision();
  if (is_rotation_like(map.base())) {
    const BigReal g = displacement(map, p, q, BigReal(bits));
    return {0, abs(g) <= ldexp2(-bits.value / 2, bits)};
  }
  // Offset grid so that symmetric maps do not put zeros on sample points.
  std::vector<BigReal> xs = unit_grid(grid_n, bits);
  const BigReal offset = BigReal(1, bits) / (3 * grid_n);
  for (auto& x : xs) x += offset;
  const auto jets = sample_displacement(map, p, q, xs);
  const BigReal h = BigReal(1, bits) / grid_n;
  BigReal slope_jump(bits);
  for (long j = 0; j < grid_n; ++j) {
    slope_jump = max(slope_jump, abs(jets[static_cast<size_t>((j + 1) % grid_n)].slope - jets[static_cast<size_t>(j)].slope));
  }
  const CountContext ctx{map, p, q, slope_jump / h * 2, ldexp2(-bits.value / 2, bits)};
  std::vector<std::vector<Leaf>> cells(static_cast<size_t>(grid_n));
  for_each_index(Exec::parallel, grid_n, [&](long j) {
    count_cell(ctx, xs[static_cast<size_t>(j)], h, jets[static_cast<size_t>(j)],
               jets[static_cast<size_t>((j + 1) % grid_n)], 0, cells[static_cast<size_t>(j)]);
  });
  std::vector<Leaf> leaves;
  for (const auto& c : cells) leaves.insert(leaves.end(), c.begin(), c.end());
  return tally(std::move(leaves));
}

std::vector<std::pair<long, long>> farey_fractions(double lo, double hi, long q_max) {
  std::vector<std::pair<long, long>> out;
  for (long q = 1; q <= q_max; ++q) {
    const long p_lo = static_cast<long>(std::ceil(lo * static_cast<double>(q) - 1e-12));
    const long p_hi = static_cast<long>(std::floor(hi * static_cast<double>(q) + 1e-12));
    for (long p = p_lo; p <= p_hi; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

std::vector<TaggedTongue> tongues_2d(const BigReal& t_lo, const BigReal& t_hi, const BigReal& a_lo,
                                     const BigReal& a_hi, long a_steps, long q_max, const BigReal& tol, Bits bits,
                                     Exec exec) {
  if (a_steps < 1 || q_max < 1) throw Error(Errc::out_of_range, "tongues need a_steps >= 1 and q_max >= 1");
  const auto fractions = farey_fractions(t_lo.to_double(), t_hi.to_double(), q_max);
  std::vector<BigReal> slices;
  for (long i = 0; i < a_steps; ++i) {
    slices.push_back(a_steps == 1 ? a_lo.with_bits(bits)
                                  : a_lo.with_bits(bits) + (a_hi.with_bits(bits) - a_lo) * i / (a_steps - 1));
  }
  const long n = static_cast<long>(slices.size() * fractions.size());
  std::vector<TaggedTongue> out(static_cast<size_t>(n), TaggedTongue{BigReal(bits), {}});
  for_each_index(exec, n, [&](long k) {
    const auto& a = slices[static_cast<size_t>(k) / fractions.size()];
    const auto [p, q] = fractions[static_cast<size_t>(k) % fractions.size()];
    auto& slot = out[static_cast<size_t>(k)];
    slot.a = a;
    try {
      const CircleLift base = CircleLift::standard(Expr::literal(a));
      PlateauOptions opts;
      opts.exec = Exec::serial;
      slot.record = plateau(base, p, q, tol, bits, opts);
    } catch (const Error& e) {
      slot.record = TongueRecord{p, q, BigReal::nan(bits), BigReal::nan(bits), BigReal::nan(bits), bits.value,
                                 tol, TongueFlag::failed, BigReal::nan(bits), BigReal::nan(bits),
                                 BigReal::nan(bits), e.what()};
    }
  });
  return out;
}

}  // namespace modelock
