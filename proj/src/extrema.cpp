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

#include "modelock/extrema.hpp"

#include <algorithm>

#include "modelock/error.hpp"

namespace modelock {

namespace {

struct Cell {
  BigReal u, h;
  BigReal gu, du;  // s*G(u), s*G'(u)
  BigReal gv, dv;  // at v = u + h
};

struct Side {
  BigReal incumbent;
  BigReal arg;
  BigReal bound;  // certified upper bound on s*G
};

BigReal cell_upper(const Cell& c, const BigReal& curvature) {
  BigReal half = c.h / 2;
  BigReal left = c.gu;
  if (c.du.sign() > 0) left += c.du * half;
  BigReal right = c.gv;
  if (c.dv.sign() < 0) right -= c.dv * half;
  BigReal ub = max(left, right);
  ub += curvature * half * half / 2;
  return ub;
}

// Maximizes s*G starting from the initial grid cells.
Side refine(const TranslatedLift& map, long p, long q, const std::vector<Cell>& grid_cells,
            const BigReal& curvature, const BigReal& tol, int s, Exec exec, long& evaluations,
            long max_evaluations) {
  const Bits bits = map.precision();
  Side side{BigReal(-1, bits), BigReal(bits), BigReal(bits)};
  bool first = true;
  for (const Cell& c : grid_cells) {
    if (first || c.gu > side.incumbent) {
      side.incumbent = c.gu;
      side.arg = c.u;
      first = false;
    }
  }
  side.bound = side.incumbent;
  const BigReal floor_width = ldexp2(-bits.value + 16, bits);

  std::vector<Cell> active;
  auto triage = [&](std::vector<Cell>& cells) {
    std::vector<Cell> keep;
    for (Cell& c : cells) {
      BigReal ub = cell_upper(c, curvature);
      if (ub > side.incumbent + tol) {
        keep.push_back(std::move(c));
      } else if (ub > side.bound) {
        side.bound = std::move(ub);
      }
    }
    cells.swap(keep);
  };
  active = grid_cells;
  triage(active);

  while (!active.empty()) {
    if (evaluations + static_cast<long>(active.size()) > max_evaluations) {
      throw Error(Errc::tol_unreachable, "extrema refinement exceeded its evaluation budget (" +
                                             std::to_string(active.size()) + " live cells)");
    }
    std::vector<Jet> mids(active.size(), Jet{BigReal(bits), BigReal(bits)});
    for_each_index(exec, static_cast<long>(active.size()), [&](long i) {
      const Cell& c = active[static_cast<size_t>(i)];
      mids[static_cast<size_t>(i)] = displacement_jet(map, p, q, c.u + c.h / 2);
    });
    evaluations += static_cast<long>(active.size());
    std::vector<Cell> next;
    next.reserve(2 * active.size());
    for (size_t i = 0; i < active.size(); ++i) {
      Cell& c = active[i];
      if (c.h < floor_width) {
        throw Error(Errc::tol_unreachable, "extrema cells reached the precision floor before tol");
      }
      BigReal half = c.h / 2;
      BigReal m = c.u + half;
      BigReal gm = mids[i].value * s;
      BigReal dm = mids[i].slope * s;
      if (gm > side.incumbent) {
        side.incumbent = gm;
        side.arg = m;
      }
      next.push_back(Cell{c.u, half, c.gu, c.du, gm, dm});
      next.push_back(Cell{std::move(m), std::move(half), std::move(gm), std::move(dm), c.gv, c.dv});
    }
    active.swap(next);
    triage(active);
  }
  side.bound = max(side.bound, side.incumbent);
  return side;
}

}  // namespace

long default_extrema_grid(long q) { return std::max<long>(1024, 64 * q); }

namespace {

struct Prepared {
  std::vector<Cell> hi, lo;
  BigReal curvature;
  long evaluations;
};

void check_args(long q, long grid_n, const BigReal& tol) {
  if (q < 1 || grid_n < 2 * q) throw Error(Errc::out_of_range, "extrema need q >= 1 and grid_n >= 2q");
  if (!(tol > 0)) throw Error(Errc::out_of_range, "extrema tolerance must be positive");
}

Prepared prepare(const TranslatedLift& map, long p, long q, long grid_n, Exec exec, bool want_hi, bool want_lo) {
  const Bits bits = map.precision();
  const auto xs = unit_grid(grid_n, bits);
  const auto jets = sample_displacement(map, p, q, xs, exec);
  const BigReal h = BigReal(1, bits) / grid_n;
  BigReal slope_jump(bits);
  for (long j = 0; j < grid_n; ++j) {
    const auto& a = jets[static_cast<size_t>(j)];
    const auto& b = jets[static_cast<size_t>((j + 1) % grid_n)];
    slope_jump = max(slope_jump, abs(b.slope - a.slope));
  }
  Prepared out{{}, {}, slope_jump / h * 2, grid_n};
  for (long j = 0; j < grid_n; ++j) {
    const auto& a = jets[static_cast<size_t>(j)];
    const auto& b = jets[static_cast<size_t>((j + 1) % grid_n)];
    const BigReal& u = xs[static_cast<size_t>(j)];
    if (want_hi) out.hi.push_back(Cell{u, h, a.value, a.slope, b.value, b.slope});
    if (want_lo) out.lo.push_back(Cell{u, h, -a.value, -a.slope, -b.value, -b.slope});
  }
  return out;
}

bool degenerate(const TranslatedLift& map) { return map.base().kind() == LiftKind::pure_rotation; }

}  // namespace

ExtremaResult displacement_extrema_detail(const TranslatedLift& map, long p, long q, long grid_n,
                                          const BigReal& tol, Exec exec, long max_evaluations) {
  check_args(q, grid_n, tol);
  const Bits bits = map.precision();
  if (degenerate(map)) {
    BigReal g = displacement(map, p, q, BigReal(bits));
    return {{g, g}, BigReal(bits), BigReal(bits), g, g, 1};
  }
  Prepared prep = prepare(map, p, q, grid_n, exec, true, true);
  long evaluations = prep.evaluations;
  Side hi = refine(map, p, q, prep.hi, prep.curvature, tol, +1, exec, evaluations, max_evaluations);
  Side lo = refine(map, p, q, prep.lo, prep.curvature, tol, -1, exec, evaluations, max_evaluations);
  return {{-lo.bound, hi.bound}, lo.arg, hi.arg, -lo.incumbent, hi.incumbent, evaluations};
}

Extremum displacement_max(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol, Exec exec,
                          long max_evaluations) {
  check_args(q, grid_n, tol);
  const Bits bits = map.precision();
  if (degenerate(map)) {
    BigReal g = displacement(map, p, q, BigReal(bits));
    return {g, g, BigReal(bits), 1};
  }
  Prepared prep = prepare(map, p, q, grid_n, exec, true, false);
  long evaluations = prep.evaluations;
  Side hi = refine(map, p, q, prep.hi, prep.curvature, tol, +1, exec, evaluations, max_evaluations);
  return {std::move(hi.bound), std::move(hi.incumbent), std::move(hi.arg), evaluations};
}

Extremum displacement_min(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol, Exec exec,
                          long max_evaluations) {
  check_args(q, grid_n, tol);
  const Bits bits = map.precision();
  if (degenerate(map)) {
    BigReal g = displacement(map, p, q, BigReal(bits));
    return {g, g, BigReal(bits), 1};
  }
  Prepared prep = prepare(map, p, q, grid_n, exec, false, true);
  long evaluations = prep.evaluations;
  Side lo = refine(map, p, q, prep.lo, prep.curvature, tol, -1, exec, evaluations, max_evaluations);
  return {-lo.bound, -lo.incumbent, std::move(lo.arg), evaluations};
}

Enclosure displacement_extrema(const TranslatedLift& map, long p, long q, long grid_n, const BigReal& tol,
                               Exec exec) {
  return displacement_extrema_detail(map, p, q, grid_n, tol, exec).bounds;
}

}  // namespace modelock
