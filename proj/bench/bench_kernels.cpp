// Copyright 2026 The qvlbi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qvlbi/kernels.hpp"

using namespace qvlbi;

namespace {

void BM_TrinomialParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::trinomial_counts(10000, 1e-4, state.range(0), kDefaultSeed));
    }
}

void BM_TrinomialSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::reference::trinomial_counts(10000, 1e-4, state.range(0), kDefaultSeed));
    }
}

void BM_BinCountsParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::bin_counts(1e-3, state.range(0), kDefaultSeed));
    }
}

void BM_BinCountsSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::reference::bin_counts(1e-3, state.range(0), kDefaultSeed));
    }
}

geodesy::PhaseMcConfig phase_config(long shots) {
    geodesy::PhaseMcConfig cfg;
    cfg.phi_true = 1.0;
    cfg.shots = shots;
    return cfg;
}

void BM_PhaseParallel(benchmark::State& state) {
    const auto cfg = phase_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::phase_estimates(cfg));
    }
}

void BM_PhaseSerial(benchmark::State& state) {
    const auto cfg = phase_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::reference::phase_estimates(cfg));
    }
}

void BM_QfiSweepParallel(benchmark::State& state) {
    const auto g = kernels::default_qfi_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::qfi_sweep(g.epsilons, g.gammas, g.phis));
    }
}

void BM_QfiSweepSerial(benchmark::State& state) {
    const auto g = kernels::default_qfi_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::reference::qfi_sweep(g.epsilons, g.gammas, g.phis));
    }
}

void BM_LedgerFuzzParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::ledger_fuzz(state.range(0), 100, kDefaultSeed));
    }
}

void BM_LedgerFuzzSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::reference::ledger_fuzz(state.range(0), 100, kDefaultSeed));
    }
}

}  // namespace

BENCHMARK(BM_TrinomialParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrinomialSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinCountsParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinCountsSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QfiSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QfiSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LedgerFuzzParallel)->Arg(1 << 10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LedgerFuzzSerial)->Arg(1 << 10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
