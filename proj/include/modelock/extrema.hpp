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

#include "modelock/circlemap.hpp"
#include "modelock/kernels.hpp"

namespace modelock {

/// Default grid resolution for a q-fold displacement: max(1024, 64 q).
long default_extrema_grid(long q);

struct ExtremaResult {
  Enclosure bounds;   // [m, M] with m <= min G, M >= max G
  BigReal argmin;     // best sampled minimizer
  BigReal argmax;     // best sampled maximizer
  BigReal min_found;  // G(argmin)
  BigReal max_found;  // G(argmax)
  long evaluations = 0;
};

/// Global extrema of G(x) = F_t^q(x) - x - p over one period.
///
/// The grid is sampled with slopes, then cells are bisected until every cell
/// is certified not to beat the incumbent by more than tol. Cell bounds use
/// the endpoint values and slopes plus a curvature allowance estimated from
/// slope differences on the initial grid (doubled). Throws Error(tol_unreachable)
/// when the evaluation budget is exhausted or cells shrink to the precision
/// floor, and Error(out_of_range) if grid_n < 2q or tol <= 0.
ExtremaResult displacement_extrema_detail(const TranslatedLift& map, long p, long q, long grid_n,
                                          const BigReal& tol, Exec exec = Exec::parallel,
                                          long max_evaluations = 400000);

/// One side of the extrema computation. For the maximum, bound >= max G and
/// found = G(arg) <= max G; for the minimum the inequalities flip.
struct Extremum {
  BigReal bound;
  BigReal found;
  BigReal arg;
  long evaluations = 0;
};

Extremum displacement_max(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol,
                          Exec exec = Exec::parallel, long max_evaluations = 400000);
Extremum displacement_min(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol,
                          Exec exec = Exec::parallel, long max_evaluations = 400000);

Enclosure displacement_extrema(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol,
                               Exec exec = Exec::parallel);

}  // namespace modelock
