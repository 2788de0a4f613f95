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

#include <optional>
#include <string>
#include <vector>

#include "modelock/circlemap.hpp"
#include "modelock/contfrac.hpp"
#include "modelock/kernels.hpp"
#include "modelock/locking.hpp"

namespace modelock {

struct UnivalenceTau {
  double tau = 0.0;           // largest strip half-height with Psi univalent
  double tau_critical = 0.0;  // where Psi' first vanishes
  bool capped = false;        // tau hit the ceiling (eps ~ 0)
};

/// Largest tau (to 1e-4) such that Psi(z) = z + eps sin 2 pi z has no
/// critical point on |Im z| < tau and maps the strip boundary, sampled at
/// `grid` points per line, to two disjoint graph-like curves.
UnivalenceTau univalence_oracle_tau(double epsilon, long grid = 2048, double ceiling = 10.0);

enum class RowFlag {
  ok,
  zero_width,        // plateau is a point (rotation-like map)
  below_resolution,  // width < 2 tol even after the precision retry
  under_resolved,    // +64 bits moved the width by more than 1e-6 relative
  failed,
};

std::string_view to_string(RowFlag f);

struct DecayRow {
  long n = 0;
  long p = 0;
  long q = 1;
  BigReal width{Bits{kMinBits}};
  std::optional<double> slope;  // log(width) / q, absent when width == 0
  BigReal gap{Bits{kMinBits}};
  BigReal ratio{Bits{kMinBits}};
  long precision_bits = 0;
  RowFlag flag = RowFlag::ok;
  std::string message;
};

struct DecayOptions {
  PrecisionPolicy policy;
  double slack_fraction = 0.25;  // slack = slack_fraction * 2 pi tau_reference
  long n_min = 1;
  long grid_n = 0;
  bool verify_precision = false;
  Exec exec = Exec::parallel;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  std::string theta;  // expression text
  double tau_reference = 0.0;
  std::string tau_source;
  double bound = 0.0;  // -2 pi tau_reference
  double slack = 0.0;
  std::string map;
  std::vector<bool> verdicts;  // slope <= bound + slack
};

/// Plateau widths along the convergents p_n/q_n (n_min <= n <= n_max) of theta
/// for the family F + t, each at effective_bits(policy, q_n) with tol
/// 2^(-P/4). Rows run in parallel and are assembled in index order.
DecayReport decay_report(const CircleLift& base, const Expr& theta, long n_max, double tau_reference,
                         std::string tau_source, const DecayOptions& options = {});

/// Verdicts recomputed from rows: slope <= bound + slack.
std::vector<bool> decay_verdicts(const std::vector<DecayRow>& rows, double bound, double slack);

struct RateCheck {
  std::vector<bool> ratio_decreasing;  // ratio below the previous row's (first row true)
  std::vector<bool> q2_bounded;        // width q^2 <= max over the first half
  bool tail_decreasing = false;        // ratios decrease over the last half
};

/// Throws Error(insufficient_rows) with fewer than 4 rows of positive width.
RateCheck rate_check(const DecayReport& report);

struct ParameterSearch {
  Enclosure t;
  long q_used = 0;
  bool reached_target = false;
};

/// Bisection on t for Trans(F_t) = theta using translation enclosures at the
/// convergent denominators of theta up to q_max, until the t-interval is
/// narrower than target_width or no denominator can decide the midpoint.
ParameterSearch locate_parameter(const CircleLift& base, const Expr& theta, const BigReal& target_width,
                                 long q_max, Bits bits, Exec exec = Exec::parallel);

}  // namespace modelock
