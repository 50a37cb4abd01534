// Copyright 2026 The qinvert Authors
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


#include <cmath>

#include <benchmark/benchmark.h>

#include "qinvert/entanglement.hpp"
#include "qinvert/qid.hpp"
#include "qinvert/superoperator.hpp"

namespace {

using namespace qinvert;

void BM_ComposeOrdinary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SuperOperator a = special(kind::InverterTP{}, d);
  const SuperOperator b = special(kind::GAV{}, d);
  for (auto _ : state) benchmark::DoNotOptimize(compose_ordinary(a, b));
}
BENCHMARK(BM_ComposeOrdinary)->DenseRange(2, 8, 2);

void BM_ApplyOrdinary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng = make_rng(1);
  const SuperOperator s = special(kind::UniversalNOT{}, d);
  const ComplexMatrix rho = random_density(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_ordinary(s, rho));
}
BENCHMARK(BM_ApplyOrdinary)->DenseRange(2, 8, 2);

void BM_TensorSuperop(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SuperOperator s = special(kind::Inverter{1.0}, d);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_superop(s, s));
}
BENCHMARK(BM_TensorSuperop)->DenseRange(2, 4);

void BM_CompletePositivity(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const SuperOperator s = special(kind::UniversalNOT{}, d);
  for (auto _ : state) benchmark::DoNotOptimize(is_completely_positive(s));
}
BENCHMARK(BM_CompletePositivity)->DenseRange(2, 6, 2);

void BM_BuildUabc(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_uabc(d));
}
BENCHMARK(BM_BuildUabc)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_RunQid(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng = make_rng(2);
  const ComplexMatrix rho = random_density(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run_qid(d, optimal_xi2(d), rho));
}
BENCHMARK(BM_RunQid)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_GavMonteCarlo(benchmark::State& state) {
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gav_monte_carlo(3, samples, 7));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_GavMonteCarlo)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_IConcurrencePaths(benchmark::State& state) {
  Rng rng = make_rng(3);
  const BipartiteState psi = BipartiteState::pure({3, 3}, random_pure(9, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iconcurrence_pure(psi));
    benchmark::DoNotOptimize(iconcurrence_via_inverter(psi));
  }
}
BENCHMARK(BM_IConcurrencePaths);

void BM_MixedOptimizer(benchmark::State& state) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const ComplexMatrix rho = 0.9 * bell * bell.adjoint() + 0.1 * ComplexMatrix::Identity(4, 4) / 4.0;
  const BipartiteState state_in = BipartiteState::density({2, 2}, rho);
  const int restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_iconcurrence_min(state_in, restarts, 0));
}
BENCHMARK(BM_MixedOptimizer)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
