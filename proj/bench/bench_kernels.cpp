// Copyright 2026 The qptree Authors
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

#include <array>
#include <vector>

#include "qptree/bell_test.hpp"
#include "qptree/sampling.hpp"

namespace {

using qptree::Execution;
namespace sampling = qptree::sampling;

const std::array<double, 4> kSingletZ{0.0, 0.5, 0.5, 0.0};

void BM_DrawSerial(benchmark::State &state) {
    std::vector<sampling::Outcome> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        sampling::draw_outcomes_serial(kSingletZ, 1, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DrawParallel(benchmark::State &state) {
    std::vector<sampling::Outcome> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        sampling::draw_outcomes_parallel(kSingletZ, 1, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = sampling::max_threads();
}

std::vector<double> grid(std::int64_t n) {
    std::vector<double> out;
    for (std::int64_t i = 0; i < n; ++i) {
        out.push_back(1.0 + 178.0 * static_cast<double>(i) / static_cast<double>(n));
    }
    return out;
}

void BM_ScanSerial(benchmark::State &state) {
    const auto thetas = grid(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qptree::bell::violation_scan(thetas, Execution::kSerial));
    }
}

void BM_ScanParallel(benchmark::State &state) {
    const auto thetas = grid(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qptree::bell::violation_scan(thetas, Execution::kParallel));
    }
}

void BM_MonteCarloBell(benchmark::State &state) {
    const auto scenario = qptree::bell::Scenario::coplanar_bisecting(45.0);
    const auto mode = state.range(1) == 0 ? Execution::kSerial : Execution::kParallel;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qptree::bell::monte_carlo_bell(scenario, static_cast<std::size_t>(state.range(0)), 0, mode));
    }
}

}  // namespace

BENCHMARK(BM_DrawSerial)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrawParallel)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Arg(179)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(179)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloBell)->Args({1000000, 0})->Args({1000000, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
