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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

namespace fs = std::filesystem;
using namespace lcg;

namespace {

struct Common
{
	std::string config;
	std::string mode;
	std::optional<std::uint64_t> seed;
	std::optional<std::size_t> runs;
	std::string out = "out";
	bool serial = false;
	int threads = 0;
};

harness::ScenarioConfig load(const Common& c)
{
	harness::ScenarioConfig cfg = harness::load_config(c.config);
	if (c.seed) {
		cfg.base_seed = *c.seed;
	}
	if (c.runs) {
		cfg.runs = *c.runs;
	}
	if (!c.mode.empty()) {
		cfg.mode = harness::parse_mode(c.mode);
	}
	cfg.validate();
	return cfg;
}

std::vector<harness::MetricsRecord> execute(const harness::ScenarioConfig& cfg, const Common& c)
{
	if (c.threads > 0) {
		omp_set_num_threads(c.threads);
	}
	return c.serial ? harness::run_experiment_serial(cfg) : harness::run_experiment(cfg);
}

void write_outputs(const fs::path& dir, const std::vector<harness::MetricsRecord>& records,
                   const nlohmann::json& manifest)
{
	fs::create_directories(dir);
	{
		std::ofstream f(dir / "records.csv");
		harness::write_records_csv(f, records);
	}
	const auto summary = harness::aggregate_metrics(records, harness::GroupBy::mode_and_devices);
	{
		std::ofstream f(dir / "summary.csv");
		harness::write_summary_csv(f, summary);
	}
	{
		std::ofstream f(dir / "manifest.json");
		f << manifest.dump(2) << '\n';
	}
	harness::write_summary_csv(std::cout, summary);
}

// Parses "3..8" or "5".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text)
{
	auto number = [&](const std::string& part) {
		std::size_t used = 0;
		unsigned long v = 0;
		try {
			v = std::stoul(part, &used);
		} catch (const std::exception&) {
			used = 0;
		}
		if (part.empty() || used != part.size()) {
			throw ConfigError("malformed range '" + text + "', expected A..B");
		}
		return static_cast<std::size_t>(v);
	};
	const auto dots = text.find("..");
	if (dots == std::string::npos) {
		const auto v = number(text);
		return {v, v};
	}
	return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

int verify(const harness::ScenarioConfig& cfg, const std::string& trace_path)
{
	const std::uint64_t seed = cfg.base_seed;
	const net::NetworkInstance inst = harness::generate_scenario(cfg, seed);
	const auto game = cfg.game();
	int failures = 0;
	auto report = [&](const std::string& what, bool ok, const std::string& detail = "") {
		std::cout << (ok ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << '\n';
		failures += ok ? 0 : 1;
	};

	std::cout << "instance: " << inst.device_count() << " devices, " << inst.operator_count() << " operators, "
	          << inst.flows().size() << " flows, seed " << seed << '\n';

	const auto grand = cfg::CoalitionStructure::grand(inst.operator_count());
	std::vector<cgg::TraceRow> trace;
	const auto r = cgg::run_cgg(inst, grand, seed, game, &trace);
	report("device game converged", r.converged, std::to_string(r.iterations) + " iterations");
	try {
		routing::audit(r.graph, inst.flows(), r.assignment);
		report("flow feasibility audit", true);
	} catch (const routing::AuditFailure& e) {
		report("flow feasibility audit", false, e.what());
	}
	const auto nash = cgg::verify_nash(r.state, inst, grand, game);
	report("Nash network", nash.is_nash, nash.is_nash ? "" : nash.deviation.to_string());
	if (!trace_path.empty()) {
		std::ofstream f(trace_path);
		cgg::write_trace_csv(f, trace);
	}

	cfg::StructureEvaluator eval(inst, cfg.econ, seed, game);
	const auto lcg = cfg::run_cfg(eval, seed, cfg.formation());
	report("coalition formation converged", lcg.converged,
	       lcg.outcome.structure.to_string() + " after " + std::to_string(lcg.rounds) + " rounds");
	double sum = 0.0;
	for (double u : lcg.outcome.utilities) {
		sum += u;
	}
	report("aggregate utility is the sum of operator utilities",
	       std::abs(sum - lcg.outcome.aggregate()) <= 1e-6 * (1.0 + std::abs(sum)));
	if (inst.operator_count() <= 3) {
		cfg::CoreSolver solver(eval, cfg.residual);
		const auto dom = solver.find_dominating(cfg::Coalition::all(inst.operator_count()), {}, lcg.outcome.structure);
		report("formation outcome undominated", !dom, dom ? dom->to_string() : "");
	}
	const auto counters = routing::audit_counters();
	report("all flow audits passed", counters.failed == 0,
	       std::to_string(counters.passed) + " passed, " + std::to_string(counters.failed) + " failed");
	return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Layered coalitional game simulator for operator-controlled D2D networks"};
	app.require_subcommand(1);

	Common run_opts;
	auto* run = app.add_subcommand("run", "Monte Carlo runs of one configuration");
	run->add_option("--config", run_opts.config, "JSON scenario file")->required()->check(CLI::ExistingFile);
	run->add_option("--mode", run_opts.mode, "lcg | lcg-variant | non-coop | core-exact | cgg-grand");
	run->add_option("--seed", run_opts.seed, "base seed (run r uses seed + r)");
	run->add_option("--runs", run_opts.runs, "number of runs");
	run->add_option("--out", run_opts.out, "output directory");
	run->add_flag("--serial", run_opts.serial, "use the serial reference driver");
	run->add_option("--threads", run_opts.threads, "worker threads (default: OpenMP default)");

	Common sweep_opts;
	std::string devices = "3..8";
	std::vector<std::string> modes;
	auto* sweep = app.add_subcommand("sweep", "Sweep the per-operator device count");
	sweep->add_option("--config", sweep_opts.config, "JSON scenario file")->required()->check(CLI::ExistingFile);
	sweep->add_option("--devices", devices, "per-operator device range, e.g. 3..8");
	sweep->add_option("--mode", modes, "one or more modes (default: the config's)")->delimiter(',');
	sweep->add_option("--seed", sweep_opts.seed, "base seed");
	sweep->add_option("--runs", sweep_opts.runs, "runs per point");
	sweep->add_option("--out", sweep_opts.out, "output directory");
	sweep->add_flag("--serial", sweep_opts.serial, "use the serial reference driver");
	sweep->add_option("--threads", sweep_opts.threads, "worker threads");

	Common verify_opts;
	std::string trace;
	auto* ver = app.add_subcommand("verify", "Invariant audit of one generated instance");
	ver->add_option("--config", verify_opts.config, "JSON scenario file")->required()->check(CLI::ExistingFile);
	ver->add_option("--seed", verify_opts.seed, "instance seed");
	ver->add_option("--trace", trace, "write the device-game trace CSV here");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*run) {
			const auto cfg = load(run_opts);
			const auto records = execute(cfg, run_opts);
			nlohmann::json manifest{{"software", harness::kSoftwareVersion},
			                        {"command", "run"},
			                        {"config", harness::to_json(cfg)}};
			write_outputs(run_opts.out, records, manifest);
		} else if (*sweep) {
			auto cfg = load(sweep_opts);
			const auto [lo, hi] = parse_range(devices);
			if (lo > hi) {
				throw ConfigError("empty device range");
			}
			std::vector<harness::Mode> mode_list;
			for (const auto& m : modes) {
				mode_list.push_back(harness::parse_mode(m));
			}
			if (mode_list.empty()) {
				mode_list.push_back(cfg.mode);
			}
			std::vector<harness::MetricsRecord> all;
			for (auto m : mode_list) {
				for (std::size_t k = lo; k <= hi; ++k) {
					auto point = cfg;
					point.mode = m;
					point.devices_min = point.devices_max = k;
					point.validate();
					auto recs = execute(point, sweep_opts);
					all.insert(all.end(), recs.begin(), recs.end());
				}
			}
			nlohmann::json manifest{{"software", harness::kSoftwareVersion},
			                        {"command", "sweep"},
			                        {"devices_per_operator", devices},
			                        {"modes", modes},
			                        {"config", harness::to_json(cfg)}};
			write_outputs(sweep_opts.out, all, manifest);
		} else if (*ver) {
			return verify(load(verify_opts), trace);
		}
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 0;
}
