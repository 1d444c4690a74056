// Copyright 2026 The SpinStar Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "spinstar/grape.hpp"
#include "spinstar/lie_closure.hpp"
#include "spinstar/modular.hpp"

namespace {

using namespace spinstar;

PulseSequence bench_pulse(std::size_t slices) {
  return random_pulse(slices, 0.05, 2.0, 7);
}

void BM_ClosureEqual(benchmark::State& state) {
  const SpinStarSystem sys(static_cast<int>(state.range(0)), CouplingScheme::equal(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(closure(sys).dim());
}
BENCHMARK(BM_ClosureEqual)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_ClosureDifferent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpinStarSystem sys(n, CouplingScheme::different(default_different_couplings(n)));
  for (auto _ : state) benchmark::DoNotOptimize(closure(sys).dim());
}
BENCHMARK(BM_ClosureDifferent)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const ControlProblem problem(
      SpinStarSystem(static_cast<int>(state.range(0)), CouplingScheme::equal(1.0)));
  const PulseSequence p = bench_pulse(100);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(problem, p).total(0, 0));
}
BENCHMARK(BM_Propagate)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_GradientF1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ControlProblem problem(SpinStarSystem(n, CouplingScheme::equal(1.0)));
  const PulseSequence p = bench_pulse(100);
  const DenseOperator target = TargetGate::hadamard().full(n);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_f1(problem, p, target).value);
}
BENCHMARK(BM_GradientF1)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_GradientF2(benchmark::State& state) {
  const ControlProblem problem(
      SpinStarSystem(static_cast<int>(state.range(0)), CouplingScheme::equal(1.0)));
  const PulseSequence p = bench_pulse(100);
  const DenseOperator target = TargetGate::hadamard().central;
  for (auto _ : state) benchmark::DoNotOptimize(gradient_f2(problem, p, target).value);
}
BENCHMARK(BM_GradientF2)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_ModularProduct(benchmark::State& state) {
  const Index d = state.range(0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseOperator a(d, d);
  DenseOperator b(d, d);
  for (Index i = 0; i < d * d; ++i) {
    a.data()[i] = Complex(u(rng), u(rng));
    b.data()[i] = Complex(u(rng), u(rng));
  }
  const modular::Matrix ma = modular::Matrix::from_dense(a);
  const modular::Matrix mb = modular::Matrix::from_dense(b);
  for (auto _ : state) benchmark::DoNotOptimize((ma * mb).entries().data());
}
BENCHMARK(BM_ModularProduct)->RangeMultiplier(2)->Range(8, 64);

}  // namespace

BENCHMARK_MAIN();
