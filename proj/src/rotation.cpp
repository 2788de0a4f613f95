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

#include "modelock/rotation.hpp"

#include "modelock/error.hpp"
#include "modelock/extrema.hpp"

namespace modelock {

BigReal trans_estimate(const TranslatedLift& map, long n_iter) {
  if (n_iter < 1) throw Error(Errc::out_of_range, "n_iter must be >= 1");
  return iterate(map, n_iter, BigReal(map.precision())) / n_iter;
}

long centering_integer(const TranslatedLift& map, long q) {
  const mpz_class p = iterate(map, q, BigReal(map.precision())).round_even();
  if (!p.fits_slong_p()) throw Error(Errc::out_of_range, "translation too large");
  return p.get_si();
}

Enclosure trans_enclosure(const TranslatedLift& map, long q, long grid_n, const BigReal& tol, Exec exec) {
  const long p = centering_integer(map, q);
  const Enclosure g = displacement_extrema(map, p, q, grid_n, tol, exec);
  return {(g.lo + p) / q, (g.hi + p) / q};
}

std::vector<StaircasePoint> staircase(const CircleLift& base, const BigReal& t_lo, const BigReal& t_hi,
                                      long samples, long q, long grid_n, const BigReal& tol, Exec exec) {
  if (!(t_lo < t_hi) || samples < 2) throw Error(Errc::out_of_range, "staircase needs t_lo < t_hi, samples >= 2");
  const Bits bits{t_lo.bits()};
  const TranslatedLift proto(base, t_lo);
  const BigReal step = (t_hi.with_bits(bits) - t_lo) / (samples - 1);
  std::vector<StaircasePoint> out(static_cast<size_t>(samples),
                                  StaircasePoint{BigReal(bits), {BigReal(bits), BigReal(bits)}});
  // Parallelize across samples; the extrema kernels inside run serially.
  for_each_index(exec, samples, [&](long i) {
    BigReal t = i + 1 == samples ? t_hi.with_bits(bits) : t_lo + step * i;
    const TranslatedLift map = proto.with_t(t);
    out[static_cast<size_t>(i)] = {std::move(t), trans_enclosure(map, q, grid_n, tol, Exec::serial)};
  });
  return out;
}

}  // namespace modelock
