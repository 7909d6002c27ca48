// SPDX-License-Identifier: Apache-2.0
//
// symprec - symbol-level precoding laboratory for the MISO downlink
// Copyright (C) 2026 The symprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "symprec/montecarlo.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

#include <algorithm>

using namespace symprec;

namespace
{
    ExperimentConfig bench_config(Technique t)
    {
        ExperimentConfig c;
        c.users = 2;
        c.antennas = 4;
        c.order = 4;
        c.techniques = {t};
        c.points = {10.0};
        c.trials = 64;
        c.master_seed = 5;
        return c;
    }

    void BM_SweepSerial(benchmark::State &state)
    {
        const ExperimentConfig c = bench_config(static_cast<Technique>(state.range(0)));
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep_serial(c));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
        state.SetLabel(std::string(technique_name(c.techniques[0])));
    }

    void BM_SweepParallel(benchmark::State &state)
    {
        ExperimentConfig c = bench_config(static_cast<Technique>(state.range(0)));
        c.workers = static_cast<int>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep(c));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
        state.SetLabel(std::string(technique_name(c.techniques[0])) + " workers=" + std::to_string(c.workers));
    }

    void techniques(benchmark::internal::Benchmark *b)
    {
        for (const Technique t : all_techniques())
            b->Args({static_cast<long>(t)});
    }

    void techniques_and_workers(benchmark::internal::Benchmark *b)
    {
        const int max = std::max(4, omp_get_num_procs());
        for (const Technique t : all_techniques())
            for (int w = 1; w <= max; w *= 2)
                b->Args({static_cast<long>(t), w});
    }
}

BENCHMARK(BM_SweepSerial)->Apply(techniques)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Apply(techniques_and_workers)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
