/*
 * Copyright 2026 The lcg-d2d Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <lcg/cfg.hpp>
#include <lcg/cgg.hpp>
#include <lcg/experiment.hpp>
#include <lcg/routing.hpp>
#include <lcg/scenario.hpp>

#include <benchmark/benchmark.h>

using namespace lcg;

namespace {

harness::ScenarioConfig workload(harness::Mode mode, std::size_t runs)
{
	harness::ScenarioConfig c;
	c.radio.bandwidth = 1000.0;
	c.mode = mode;
	c.runs = runs;
	return c;
}

void BM_ExperimentSerial(benchmark::State& state)
{
	const auto config = workload(harness::Mode::lcg, static_cast<std::size_t>(state.range(0)));
	for (auto _ : state) {
		benchmark::DoNotOptimize(harness::run_experiment_serial(config));
	}
	state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExperimentParallel(benchmark::State& state)
{
	const auto config = workload(harness::Mode::lcg, static_cast<std::size_t>(state.range(0)));
	for (auto _ : state) {
		benchmark::DoNotOptimize(harness::run_experiment(config));
	}
	state.SetItemsProcessed(state.iterations() * state.range(0));
}

void precompute(benchmark::State& state, bool parallel)
{
	auto config = workload(harness::Mode::core_exact, 1);
	config.operators = 3;
	const auto inst = harness::generate_scenario(config, 3);
	const auto covers = cfg::enumerate_covers(3);
	for (auto _ : state) {
		cfg::StructureEvaluator eval(inst, config.econ, 3, config.game());
		eval.precompute(covers, parallel);
		benchmark::DoNotOptimize(eval.cgg_runs());
	}
}

void BM_PrecomputeSerial(benchmark::State& state) { precompute(state, false); }
void BM_PrecomputeParallel(benchmark::State& state) { precompute(state, true); }

void BM_RouteFlows(benchmark::State& state)
{
	auto config = workload(harness::Mode::cgg_grand, 1);
	config.devices_min = config.devices_max = static_cast<std::size_t>(state.range(0));
	const auto inst = harness::generate_scenario(config, 5);
	const auto grand = cfg::CoalitionStructure::grand(4);
	const auto settled = cgg::run_cgg(inst, grand, 5, config.game());
	for (auto _ : state) {
		benchmark::DoNotOptimize(routing::route_flows(settled.graph, inst.flows()));
	}
	state.counters["edges"] = static_cast<double>(settled.graph.edge_count());
}

} // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrecomputeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrecomputeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RouteFlows)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
