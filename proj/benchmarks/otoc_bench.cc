// Copyright 2026 The otoc Authors
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

#include <numbers>

#include <benchmark/benchmark.h>

#include "otoc/approx.h"
#include "otoc/circuit.h"
#include "otoc/dense.h"
#include "otoc/exact.h"
#include "otoc/gaussian.h"

namespace {

using namespace otoc;

constexpr double kDt = std::numbers::pi / 4.0;

Circuit alternating(int n, int periods, bool interactions) {
    return build_alternating_circuit(n, draw_disorder(n, 1.0, 7), kDt, periods, interactions);
}

void BM_GaussianLayer(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const Matrix gen = xy_generator(draw_disorder(n, 1.0, 3).nu_values);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_layer_matrix(gen, kDt));
    }
}
BENCHMARK(BM_GaussianLayer)->Arg(10)->Arg(30)->Arg(100);

void BM_GaussianLightcone(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit c = alternating(n, 10, false);
    const PauliObservable b{PauliOp::X, n / 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_lightcone(c, b).otoc.values.sum());
    }
}
BENCHMARK(BM_GaussianLightcone)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ApproxLightcone(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit c = alternating(n, 10, true);
    const PauliObservable b{PauliOp::X, n / 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx_lightcone(c, b).grid.values.sum());
    }
}
BENCHMARK(BM_ApproxLightcone)->Arg(6)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ExactSeries(benchmark::State &state) {
    const int gates = static_cast<int>(state.range(0));
    const int n = 6;
    const DisorderRealization d = draw_disorder(n, 2.0, 11);
    std::vector<GatePlacement> g;
    for (int i = 0; i < gates; i++) {
        g.push_back({2 + i % 3, kDt * (i + 1)});
    }
    const Circuit c = build_gate_schedule(n, d, kDt, gates + 1, g);
    const PauliObservable a{PauliOp::X, 3};
    const PauliObservable b{PauliOp::Z, 4};
    ExactOptions o;
    o.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_otoc(c, a, b, o));
    }
}
BENCHMARK(BM_ExactSeries)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_DenseOracle(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const Circuit c = alternating(n, 2, true);
    const PauliObservable b{PauliOp::X, n / 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dense::lightcone(c, b).values.sum());
    }
}
BENCHMARK(BM_DenseOracle)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
