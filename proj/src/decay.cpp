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

#include "modelock/decay.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "modelock/error.hpp"
#include "modelock/extrema.hpp"
#include "modelock/rotation.hpp"

namespace modelock {

std::string_view to_string(RowFlag f) {
  switch (f) {
    case RowFlag::ok: return "ok";
    case RowFlag::zero_width: return "zero-width";
    case RowFlag::below_resolution: return "below-resolution";
    case RowFlag::under_resolved: return "under-resolved";
    case RowFlag::failed: return "failed";
  }
  return "unknown";
}

namespace {

bool boundary_injective(double eps, double tau, long grid) {
  const double tp = 2.0 * std::numbers::pi;
  if (tp * std::abs(eps) * std::cosh(tp * tau) >= 1.0) return false;
  double prev_re = 0.0, min_upper = std::numeric_limits<double>::infinity();
  double max_lower = -std::numeric_limits<double>::infinity();
  for (long j = 0; j <= grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    const std::complex<double> up = std::complex<double>(x, tau) + eps * std::sin(tp * std::complex<double>(x, tau));
    const std::complex<double> lo = std::complex<double>(x, -tau) + eps * std::sin(tp * std::complex<double>(x, -tau));
    // By symmetry Re is the same on both lines.
    if (j > 0 && !(up.real() > prev_re)) return false;
    prev_re = up.real();
    min_upper = std::min(min_upper, up.imag());
    max_lower = std::max(max_lower, lo.imag());
  }
  return min_upper > max_lower;
}

}  // namespace

UnivalenceTau univalence_oracle_tau(double epsilon, long grid, double ceiling) {
  const double r = 2.0 * std::numbers::pi * std::abs(epsilon);
  if (r >= 1.0) throw Error(Errc::invalid_epsilon, "need |2 pi eps| < 1");
  UnivalenceTau out;
  out.tau_critical = r == 0.0 ? std::numeric_limits<double>::infinity()
                              : std::acosh(1.0 / r) / (2.0 * std::numbers::pi);
  double hi = std::min(out.tau_critical, ceiling);
  if (hi >= ceiling) {
    out.tau = ceiling;
    out.capped = true;
    return out;
  }
  if (boundary_injective(epsilon, hi, grid)) {
    out.tau = hi;
    return out;
  }
  double lo = 0.0;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (boundary_injective(epsilon, mid, grid) ? lo : hi) = mid;
  }
  out.tau = lo;
  return out;
}

namespace {

DecayRow compute_row(const CircleLift& base, const Expr& theta, long n, const Rational& conv,
                     const DecayOptions& options) {
  DecayRow row;
  row.n = n;
  row.p = conv.p.get_si();
  row.q = conv.q.get_si();
  PrecisionPolicy policy = options.policy;
  PlateauOptions popts;
  popts.grid_n = options.grid_n;
  popts.exec = Exec::serial;

  auto measure = [&](long bits_value) {
    const Bits bits{bits_value};
    const BigReal th = theta.eval(bits);
    popts.t_seed = BigReal(row.p, bits) / row.q - th;
    const BigReal tol = ldexp2(-bits_value / 4, bits);
    return plateau(base, row.p, row.q, tol, bits, popts);
  };

  try {
    long bits = effective_bits(policy, row.q);
    TongueRecord rec = measure(bits);
    if (rec.flag == TongueFlag::below_resolution) {
      policy.bits_per_q *= 2;
      bits = effective_bits(policy, row.q);
      rec = measure(bits);
    }
    row.precision_bits = bits;
    row.width = rec.width;
    if (rec.flag == TongueFlag::degenerate) row.flag = RowFlag::zero_width;
    if (rec.flag == TongueFlag::below_resolution) row.flag = RowFlag::below_resolution;
    if (row.flag == RowFlag::ok && options.verify_precision) {
      const TongueRecord check = measure(bits + 64);
      const BigReal rel = abs(check.width - rec.width) / rec.width;
      if (!(rel < 1e-6)) {
        row.flag = RowFlag::under_resolved;
        row.message = "relative change at +64 bits: " + to_string(rel, 3);
      }
    }
  } catch (const Error& e) {
    row.flag = RowFlag::failed;
    row.message = e.what();
    row.precision_bits = effective_bits(policy, row.q);
    row.width = BigReal::nan(Bits{row.precision_bits});
  }
  const Bits bits{row.precision_bits};
  row.gap = abs(theta.eval(bits) - conv.value(bits));
  row.ratio = row.width.with_bits(bits) / row.gap;
  if (row.width.sign() > 0 && row.width.is_finite()) row.slope = log(row.width).to_double() / static_cast<double>(row.q);
  return row;
}

}  // namespace

std::vector<bool> decay_verdicts(const std::vector<DecayRow>& rows, double bound, double slack) {
  std::vector<bool> out;
  for (const auto& r : rows) out.push_back(r.slope.has_value() && *r.slope <= bound + slack);
  return out;
}

DecayReport decay_report(const CircleLift& base, const Expr& theta, long n_max, double tau_reference,
                         std::string tau_source, const DecayOptions& options) {
  if (n_max < 2 || options.n_min < 0 || options.n_min > n_max) {
    throw Error(Errc::out_of_range, "decay needs n_max >= 2 and 0 <= n_min <= n_max");
  }
  const CFExpansion cf = cf_expand(theta, n_max, Bits{std::max<long>(256, 8 * n_max + 128)});
  if (static_cast<long>(cf.size()) <= n_max) {
    throw Error(Errc::precision_exhausted, "theta has only " + std::to_string(cf.size()) + " convergents");
  }
  DecayReport report;
  report.theta = theta.text();
  report.tau_reference = tau_reference;
  report.tau_source = std::move(tau_source);
  report.bound = -2.0 * std::numbers::pi * tau_reference;
  report.slack = options.slack_fraction * 2.0 * std::numbers::pi * tau_reference;
  report.map = base.describe();

  const long count = n_max - options.n_min + 1;
  report.rows.resize(static_cast<size_t>(count));
  // Largest denominators first so the longest rows start early.
  for_each_index(options.exec, count, [&](long i) {
    const long n = n_max - i;
    report.rows[static_cast<size_t>(n - options.n_min)] = compute_row(base, theta, n, convergent(cf, n), options);
  });
  report.verdicts = decay_verdicts(report.rows, report.bound, report.slack);
  return report;
}

RateCheck rate_check(const DecayReport& report) {
  std::vector<const DecayRow*> valid;
  for (const auto& r : report.rows) {
    if (r.width.is_finite() && r.width.sign() > 0) valid.push_back(&r);
  }
  if (valid.size() < 4) throw Error(Errc::insufficient_rows, "need at least 4 rows with positive width");
  RateCheck out;
  BigReal early_max(Bits{kMinBits});
  const size_t half = valid.size() / 2;
  for (size_t i = 0; i < half; ++i) {
    early_max = max(early_max, valid[i]->width * valid[i]->q * valid[i]->q);
  }
  out.tail_decreasing = true;
  for (size_t i = 0; i < valid.size(); ++i) {
    const bool dec = i == 0 || valid[i]->ratio < valid[i - 1]->ratio;
    out.ratio_decreasing.push_back(dec);
    out.q2_bounded.push_back(valid[i]->width * valid[i]->q * valid[i]->q <= early_max);
    if (i >= half && i > 0 && !dec) out.tail_decreasing = false;
  }
  return out;
}

ParameterSearch locate_parameter(const CircleLift& base, const Expr& theta, const BigReal& target_width, long q_max,
                                 Bits bits, Exec exec) {
  const BigReal th = theta.eval(bits);
  const CFExpansion cf = cf_expand(th, 64);
  std::vector<long> qs;
  for (const auto& c : cf.convergents) {
    if (c.q > q_max) break;
    if (qs.empty() || c.q.get_si() > qs.back()) qs.push_back(c.q.get_si());
  }
  const BigReal offset = base.kind() == LiftKind::trig_poly ? base.c0().eval(bits) : base.theta().eval(bits);
  ParameterSearch out{{th - offset - 1, th - offset + 1}, 0, false};
  const TranslatedLift proto(base, BigReal(bits));
  const BigReal tol = ldexp2(-bits.value / 2, bits);
  while (out.t.width() > target_width) {
    const BigReal mid = out.t.mid();
    const TranslatedLift map = proto.with_t(mid);
    int side = 0;
    for (long q : qs) {
      const Enclosure e = trans_enclosure(map, q, default_extrema_grid(q), tol, exec);
      out.q_used = std::max(out.q_used, q);
      if (e.hi < th) side = -1;
      if (e.lo > th) side = 1;
      if (side != 0) break;
    }
    if (side == 0) return out;
    (side < 0 ? out.t.lo : out.t.hi) = mid;
  }
  out.reached_target = true;
  return out;
}

}  // namespace modelock
