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

#include "modelock/kernels.hpp"

namespace modelock {

std::vector<BigReal> unit_grid(long n, Bits bits) {
  std::vector<BigReal> xs;
  xs.reserve(static_cast<size_t>(n));
  for (long j = 0; j < n; ++j) xs.push_back(BigReal(j, bits) / n);
  return xs;
}

std::vector<Jet> sample_displacement(const TranslatedLift& map, long p, long q,
                                     const std::vector<BigReal>& xs, Exec exec) {
  std::vector<Jet> out(xs.size(), Jet{BigReal(map.precision()), BigReal(map.precision())});
  for_each_index(exec, static_cast<long>(xs.size()), [&](long j) {
    out[static_cast<size_t>(j)] = displacement_jet(map, p, q, xs[static_cast<size_t>(j)]);
  });
  return out;
}

std::vector<BigReal> sample_displacement_values(const TranslatedLift& map, long p, long q,
                                                const std::vector<BigReal>& xs, Exec exec) {
  std::vector<BigReal> out(xs.size(), BigReal(map.precision()));
  for_each_index(exec, static_cast<long>(xs.size()), [&](long j) {
    out[static_cast<size_t>(j)] = displacement(map, p, q, xs[static_cast<size_t>(j)]);
  });
  return out;
}

}  // namespace modelock
