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

#include <vector>

#include "modelock/circlemap.hpp"
#include "modelock/kernels.hpp"

namespace modelock {

/// (F_t^n(0) - 0) / n.
BigReal trans_estimate(const TranslatedLift& map, long n_iter);

/// Integer p nearest to F_t^q(0), ties to even.
long centering_integer(const TranslatedLift& map, long q);

/// Certified enclosure [(m + p)/q, (M + p)/q] of Trans(F_t) from the extrema of
/// the q-fold displacement, p the centering integer.
Enclosure trans_enclosure(const TranslatedLift& map, long q, long grid_n, const BigReal& tol,
                          Exec exec = Exec::parallel);

struct StaircasePoint {
  BigReal t;
  Enclosure trans;
};

/// Evenly spaced samples t_i = t_lo + i (t_hi - t_lo)/(samples - 1) of t -> Trans(F_t),
/// computed at the precision of t_lo. Samples run in parallel; the result is
/// ordered by index.
std::vector<StaircasePoint> staircase(const CircleLift& base, const BigReal& t_lo, const BigReal& t_hi,
                                      long samples, long q, long grid_n, const BigReal& tol,
                                      Exec exec = Exec::parallel);

}  // namespace modelock
