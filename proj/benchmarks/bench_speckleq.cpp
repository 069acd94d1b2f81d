// Copyright 2026 The speckleq Authors
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

#include <complex>

#include "speckleq/correlators.hpp"
#include "speckleq/ensemble.hpp"
#include "speckleq/network.hpp"
#include "speckleq/states.hpp"

namespace {

using namespace speckleq;

constexpr double kPi = 3.14159265358979323846;

ProductInput two_photons() {
  ProductInput input(2);
  input.set(0, ModeState::fock(1)).set(1, ModeState::fock(1));
  return input;
}

ProductInput squeezed_pair() {
  ProductInput input(2);
  input.set(0, ModeState::squeezed_vacuum(0.15, 0.0));
  input.set(1, ModeState::squeezed_vacuum(0.15, kPi));
  return input;
}

ProductInput mixed_input(int ports) {
  ProductInput input(ports);
  for (int i = 0; i < ports; ++i) {
    switch (i % 4) {
      case 0: input.set(i, ModeState::fock(1)); break;
      case 1: input.set(i, ModeState::coherent({0.4, -0.2})); break;
      case 2: input.set(i, ModeState::thermal(0.8)); break;
      default: input.set(i, ModeState::squeezed_vacuum(0.2, 1.1)); break;
    }
  }
  return input;
}

void BM_SampleDiffusive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_diffusive(n, n, 1.0 / 300.0, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SampleDiffusive)->Arg(32)->Arg(100)->Arg(300);

void BM_SampleUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_unitary(n, seed++));
  }
}
BENCHMARK(BM_SampleUnitary)->Arg(16)->Arg(64);

void BM_Coincidence(benchmark::State& state) {
  const int occupied = static_cast<int>(state.range(0));
  const TransmissionMatrix t = sample_diffusive(8, occupied, 0.05, 3);
  const ProductInput input = mixed_input(occupied);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence(t, input, 0, 1));
  }
}
BENCHMARK(BM_Coincidence)->Arg(2)->Arg(4)->Arg(8);

void BM_Qvp(benchmark::State& state) {
  const TransmissionMatrix t = sample_diffusive(8, 2, 0.05, 3);
  const ProductInput input = squeezed_pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qvp(t, input, 0, 1));
  }
}
BENCHMARK(BM_Qvp);

void BM_SpeckleMap(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const TransmissionMatrix t = sample_diffusive(100, 100, 1.0 / 300.0, 7);
  const ProductInput input = two_photons();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        speckle_map(t, input, GridKind::photon_correlation, 55, 10, 10, workers));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
// Work runs on internal worker threads, so wall time is the honest clock.
BENCHMARK(BM_SpeckleMap)->Arg(1)->Arg(4)->UseRealTime();

void BM_AveragedC2(benchmark::State& state) {
  const ProductInput input = mixed_input(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(averaged_c2(input, 1.0, 0.4));
  }
}
BENCHMARK(BM_AveragedC2)->Arg(4)->Arg(16);

void BM_ContractionEngine(benchmark::State& state) {
  const ProductInput input = mixed_input(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(averaged_coincidence_contraction(input, 1.0, 0.4, 0.01));
  }
}
BENCHMARK(BM_ContractionEngine)->Arg(4)->Arg(8);

void BM_MonteCarlo(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const ProductInput input = two_photons();
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 50;
  sampler.tau = 0.01;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        monte_carlo_average(input, sampler, McStatistic::c2, 2000, seed++, workers));
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
