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

#include <exception>
#include <vector>

#include "modelock/circlemap.hpp"

namespace modelock {

/// Execution policy for index-parallel kernels. Results never depend on it.
enum class Exec { serial, parallel };

/// Runs fn(i) for i in [0, n). Under Exec::parallel the indices are spread
/// over OpenMP threads; an exception from any index is rethrown on the
/// caller's thread (the one with the smallest index wins).
template <class Fn>
void for_each_index(Exec exec, long n, Fn&& fn) {
  if (exec == Exec::serial || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Uniform grid j/n, j = 0..n-1, at the given precision.
std::vector<BigReal> unit_grid(long n, Bits bits);

/// Displacement value and slope at each point.
std::vector<Jet> sample_displacement(const TranslatedLift& map, long p, long q,
                                     const std::vector<BigReal>& xs, Exec exec = Exec::parallel);

/// Displacement values only (cheaper for conjugated rotations).
std::vector<BigReal> sample_displacement_values(const TranslatedLift& map, long p, long q,
                                                const std::vector<BigReal>& xs, Exec exec = Exec::parallel);

}  // namespace modelock
