// Copyright 2026 The clinr Authors
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

#include "clinr/markov.h"
#include "clinr/noise.h"
#include "clinr/program.h"
#include "clinr/stabilizer.h"
#include "clinr/tree.h"

using namespace clinr;

static void random_clifford_n(benchmark::State &state) {
    size_t n = state.range(0);
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_clifford(n, n * n, seed++));
    }
}
BENCHMARK(random_clifford_n)->Arg(10)->Arg(70);

static void compile_binary2(benchmark::State &state) {
    size_t n = state.range(0);
    auto c = random_clifford(n, n * n, 1);
    auto tree = preset_tree("binary2", n * n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile(c, tree));
    }
}
BENCHMARK(compile_binary2)->Arg(10)->Arg(70);

static void frame_shot(benchmark::State &state) {
    size_t n = state.range(0);
    auto program = compile(random_clifford(n, n * n, 2), preset_tree("binary2", n * n));
    FrameSimulator sim(program, NoiseModel::standard(1e-3, true), 3);
    uint64_t gates = 0;
    for (auto _ : state) {
        gates += sim.run_shot().executed_gates;
    }
    state.counters["gates/s"] = benchmark::Counter(static_cast<double>(gates), benchmark::Counter::kIsRate);
}
BENCHMARK(frame_shot)->Arg(10)->Arg(70);

static void markov_tree(benchmark::State &state) {
    uint64_t n = state.range(0);
    auto tree = uniform_tree(n * n, 4, 4, 3);
    auto noise = NoiseModel::standard(1e-3, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_tree(tree, n, noise));
    }
}
BENCHMARK(markov_tree)->Arg(70)->Arg(400);

BENCHMARK_MAIN();
