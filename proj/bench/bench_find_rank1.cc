// Copyright 2026 The PPS Authors
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


// Serial vs OpenMP multi-start rank-1 search.

#include <benchmark/benchmark.h>

#include "pps/criterion.h"
#include "pps/factorize.h"
#include "pps/scenarios.h"

namespace {

using namespace pps;

AffineSolutionSet block_set(const NamedScenario &s) {
    auto verdicts = solve_all_blocks(s.problem);
    return *verdicts.at(0).solution;
}

// 3x3 block with 6 generic constraints: no product point exists, so every start runs to max_iter.
const AffineSolutionSet &no_product_set() {
    static const AffineSolutionSet set = block_set(random_scenario_with_shape(11, RandomShape{1, 3, 6}, false));
    return set;
}

const AffineSolutionSet &planted_set() {
    static const AffineSolutionSet set = block_set(random_scenario_with_shape(12, RandomShape{1, 4, 8}, true));
    return set;
}

const AffineSolutionSet &entangled_set() {
    static const AffineSolutionSet set = block_set(entangled(true));
    return set;
}

template <Rank1Search (*Search)(const AffineSolutionSet &, const SearchConfig &)>
void run(benchmark::State &state, const AffineSolutionSet &set) {
    SearchConfig config;
    config.starts = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Search(set, config));
    }
    state.SetItemsProcessed(state.iterations() * config.starts);
}

void BM_NoProductSerial(benchmark::State &state) {
    run<find_rank1_serial>(state, no_product_set());
}
void BM_NoProductParallel(benchmark::State &state) {
    run<find_rank1>(state, no_product_set());
}
void BM_PlantedSerial(benchmark::State &state) {
    run<find_rank1_serial>(state, planted_set());
}
void BM_PlantedParallel(benchmark::State &state) {
    run<find_rank1>(state, planted_set());
}
void BM_EntangledSerial(benchmark::State &state) {
    run<find_rank1_serial>(state, entangled_set());
}
void BM_EntangledParallel(benchmark::State &state) {
    run<find_rank1>(state, entangled_set());
}

}  // namespace

BENCHMARK(BM_NoProductSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NoProductParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PlantedSerial)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PlantedParallel)->Arg(64)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_EntangledSerial)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EntangledParallel)->Arg(64)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
