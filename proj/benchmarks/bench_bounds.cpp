// Copyright 2026 The mrbounds Authors
//
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

#include "mrbounds/bounds_lp.hpp"
#include "mrbounds/models.hpp"
#include "mrbounds/oracle.hpp"

namespace {

using namespace mrbounds;

TandemParams params(int l) { return TandemParams{0.1, 0.2, 0.2, Grid{l, l}, TandemVariant::speedup, 0.24}; }

BoundsProblem problem(int l) {
  const ProductFormWalk p = tandem_perturbed(params(l));
  return make_problem(tandem(params(l)), p.kernel, p.measure, measure_blocking(Grid{l, l}));
}

void BM_MakeProblem(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(problem(l));
}
BENCHMARK(BM_MakeProblem)->Arg(5)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Assemble(benchmark::State& state) {
  const BoundsProblem p = problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p, BoundDirection::upper));
}
BENCHMARK(BM_Assemble)->Arg(5)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_Simplex(benchmark::State& state) {
  const StandardFormLP lp =
      assemble(problem(static_cast<int>(state.range(0))), BoundDirection::upper).to_standard_form();
  for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_Simplex)->Arg(5)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SolveBounds(benchmark::State& state) {
  const BoundsProblem p = problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_bounds(p));
}
BENCHMARK(BM_SolveBounds)->Arg(5)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Stationary(benchmark::State& state) {
  const TransitionKernel w = tandem(params(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(stationary(w));
}
BENCHMARK(BM_Stationary)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CertificateAudit(benchmark::State& state) {
  const BoundsProblem p = problem(static_cast<int>(state.range(0)));
  const BoundResult r = solve_bounds(p);
  for (auto _ : state) benchmark::DoNotOptimize(certificate_check(r.upper_cert, p, 500));
}
BENCHMARK(BM_CertificateAudit)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
