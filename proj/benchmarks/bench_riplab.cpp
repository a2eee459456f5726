// Copyright 2026 The riplab Authors.
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

#include "riplab/group_ops.hpp"
#include "riplab/infdim.hpp"
#include "riplab/instruments.hpp"
#include "riplab/rip.hpp"
#include "riplab/sparsity.hpp"

namespace {

using namespace riplab;

void BM_SampleEnsemble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instrument eta = make_decaying_window(n, n / 4, 0.25);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_ensemble(eta, GroupKind::kShiftMod, n, SignMode::kRandomSign, SeededRng(++seed, 1)));
  }
}
BENCHMARK(BM_SampleEnsemble)->Arg(64)->Arg(256);

void BM_ExactRip(benchmark::State& state) {
  const MeasurementEnsemble a = sample_gaussian_ensemble(8, static_cast<int>(state.range(0)), SeededRng(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_rip_canonical(a, 2).delta_hat);
}
BENCHMARK(BM_ExactRip)->Arg(12)->Arg(24);

void BM_EmpiricalRip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MeasurementEnsemble a = sample_ensemble(make_flat(n), GroupKind::kShiftMod, n / 2, SignMode::kNone, SeededRng(1, 1));
  EmpiricalOptions opt;
  opt.trials = 20;
  for (auto _ : state) benchmark::DoNotOptimize(empirical_rip(a, Canonical{4}, opt, SeededRng(1, 2)).delta_hat);
}
BENCHMARK(BM_EmpiricalRip)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SpOptimize(benchmark::State& state) {
  const Instrument eta = make_decaying_window(256, 64, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(sp_eta_optimize(eta, 8).value);
}
BENCHMARK(BM_SpOptimize);

void BM_FromBumps(benchmark::State& state) {
  const BumpSuperposition b{16.0, {0.2, 0.7}, {Complex(1.0), Complex(0.0, 1.0)}};
  const int bandwidth = recommended_bandwidth(16.0);
  for (auto _ : state) benchmark::DoNotOptimize(from_bumps(b, bandwidth).coeffs().data());
}
BENCHMARK(BM_FromBumps)->Unit(benchmark::kMicrosecond);

void BM_BlockMeasure(benchmark::State& state) {
  SeededRng rng(3);
  const BlockInstrument inst = make_block_instrument(64, 8, BlockMode::kRademacher, rng);
  FourierFunction f(128);
  for (int k = -128; k < 128; ++k) f.set_coeff(k, rng.complex_normal());
  double t = 0.0;
  for (auto _ : state) {
    t += 0.001;
    benchmark::DoNotOptimize(block_measure(f, inst, t).data());
  }
}
BENCHMARK(BM_BlockMeasure);

void BM_DyadicTail(benchmark::State& state) {
  SeededRng rng(4);
  FourierFunction g(2048);
  for (int k = -2048; k < 2048; ++k) {
    if (k != 0) g.set_coeff(k, rng.complex_normal());
  }
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_tail(g, 0.3, 4));
}
BENCHMARK(BM_DyadicTail);

}  // namespace

BENCHMARK_MAIN();
