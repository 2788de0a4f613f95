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
#include "modelock/kernels.hpp"

namespace modelock {

enum class TongueFlag {
  ok,
  below_resolution,  // measured width < 2 tol, reported as 0
  degenerate,        // structurally a rotation; point plateau
  failed,            // solver error, see message
};

std::string_view to_string(TongueFlag f);

/// Plateau I(p/q) = [t_minus, t_plus] of the family F_t = F + t.
struct TongueRecord {
  long p = 0;
  long q = 1;
  BigReal t_minus{Bits{kMinBits}};
  BigReal t_plus{Bits{kMinBits}};
  BigReal width{Bits{kMinBits}};
  long precision_bits = 0;
  BigReal tol{Bits{kMinBits}};
  TongueFlag flag = TongueFlag::ok;
  /// max G - min G at t_minus (the oscillation bounding the width).
  BigReal spread_at_minus{Bits{kMinBits}};
  /// Certified max G at t_minus and min G at t_plus (both ~ 0).
  BigReal max_at_minus{Bits{kMinBits}};
  BigReal min_at_plus{Bits{kMinBits}};
  std::string message;
};

struct PlateauOptions {
  long grid_n = 0;                  // 0: default_extrema_grid(q)
  std::optional<BigReal> t_seed;    // default: p/q minus the base offset
  Exec exec = Exec::parallel;
};

/// Parameter at which the unperturbed part of the family has translation p/q:
/// p/q - c0 (trig_poly) or p/q - theta (rotations).
BigReal default_seed(const CircleLift& base, long p, long q, Bits bits);

/// Locates t_minus (max G = 0) and t_plus (min G = 0) to within tol at the
/// given precision. Throws Error(bracket_failure), Error(out_of_range) for
/// non-coprime input, or errors propagated from the extrema search.
TongueRecord plateau(const CircleLift& base, long p, long q, const BigReal& tol, Bits bits,
                     const PlateauOptions& options = {});

/// max(width, 0); widths below 2 tol read as 0 (record flagged).
BigReal width(const CircleLift& base, long p, long q, const BigReal& tol, Bits bits,
              const PlateauOptions& options = {});

struct CycleCount {
  long crossings = 0;
  bool degenerate = false;  // displacement identically zero
};

/// Sign changes of x -> G(x) over one period; a certified tangency counts as 2.
/// Throws Error(inconclusive) when a cell can be neither resolved nor
/// certified tangent.
CycleCount cycle_count_check(const TranslatedLift& map, long p, long q, long grid_n);

/// Fractions p/q in [lo, hi] with q <= q_max, ordered by q then p.
std::vector<std::pair<long, long>> farey_fractions(double lo, double hi, long q_max);

struct TaggedTongue {
  BigReal a;
  TongueRecord record;
};

/// Standard-family slices a_i (inclusive, evenly spaced; one slice when
/// a_steps == 1), every Farey fraction in [t_lo, t_hi] up to q_max. Failures
/// are recorded per record and the sweep continues. Ordered by slice, then
/// fraction.
std::vector<TaggedTongue> tongues_2d(const BigReal& t_lo, const BigReal& t_hi, const BigReal& a_lo,
                                     const BigReal& a_hi, long a_steps, long q_max, const BigReal& tol,
                                     Bits bits, Exec exec = Exec::parallel);

}  // namespace modelock
