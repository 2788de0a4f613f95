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

#include <benchmark/benchmark.h>

#include "modelock/circlemap.hpp"
#include "modelock/extrema.hpp"
#include "modelock/herman.hpp"
#include "modelock/kernels.hpp"

using namespace modelock;

namespace {

TranslatedLift ring_map(long bits) {
  const CircleLift base = make_conjugated_rotation(Expr::parse("golden"), Expr::parse("0.1"));
  return TranslatedLift(base, Expr::parse("0.001").eval(Bits{bits}));
}

TranslatedLift standard_map(long bits) {
  return TranslatedLift(CircleLift::standard(Expr::parse("1/(4*pi)")), Expr::parse("0.3").eval(Bits{bits}));
}

// Args: grid points, q, precision bits.
void run_sampling(benchmark::State& state, const TranslatedLift& map, Exec exec) {
  const long n = state.range(0), q = state.range(1);
  const auto xs = unit_grid(n, Bits{state.range(2)});
  for (auto _ : state) {
    auto jets = sample_displacement(map, 0, q, xs, exec);
    benchmark::DoNotOptimize(jets.data());
  }
  state.SetItemsProcessed(state.iterations() * n * q);
}

void BM_StandardSerial(benchmark::State& s) { run_sampling(s, standard_map(s.range(2)), Exec::serial); }
void BM_StandardParallel(benchmark::State& s) { run_sampling(s, standard_map(s.range(2)), Exec::parallel); }
void BM_RingSerial(benchmark::State& s) { run_sampling(s, ring_map(s.range(2)), Exec::serial); }
void BM_RingParallel(benchmark::State& s) { run_sampling(s, ring_map(s.range(2)), Exec::parallel); }

void extrema(benchmark::State& state, Exec exec) {
  const TranslatedLift map = standard_map(128);
  const long q = state.range(0);
  const BigReal tol = ldexp2(-60, Bits{128});
  for (auto _ : state) {
    auto e = displacement_extrema(map, 0, q, default_extrema_grid(q), tol, exec);
    benchmark::DoNotOptimize(e);
  }
}

void BM_ExtremaSerial(benchmark::State& s) { extrema(s, Exec::serial); }
void BM_ExtremaParallel(benchmark::State& s) { extrema(s, Exec::parallel); }

}  // namespace

BENCHMARK(BM_StandardSerial)->Args({1024, 8, 128})->Args({1024, 21, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StandardParallel)->Args({1024, 8, 128})->Args({1024, 21, 256})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RingSerial)->Args({1024, 8, 128})->Args({1024, 21, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingParallel)->Args({1024, 8, 128})->Args({1024, 21, 256})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtremaSerial)->Arg(8)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtremaParallel)->Arg(8)->Arg(21)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
