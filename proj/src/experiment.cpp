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

#include <lcg/experiment.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>

namespace lcg::harness {

namespace {

MetricsRecord from_cfg(const cfg::CfgResult& r)
{
	MetricsRecord m;
	m.utilities = r.outcome.utilities;
	m.aggregate_utility = r.outcome.aggregate();
	m.structure = r.outcome.structure.to_string();
	m.cgg_iterations = r.outcome.cgg_iterations;
	m.cgg_iterations_max = r.max_cgg_iterations;
	m.cgg_invocations = r.cgg_runs;
	m.cfg_rounds = r.rounds;
	m.cgg_converged = r.outcome.cgg_converged;
	return m;
}

std::string fmt(double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.10g", v);
	return buf;
}

} // namespace

MetricsRecord run_one(const ScenarioConfig& config, std::size_t run)
{
	const std::uint64_t seed = config.base_seed + run;
	const net::NetworkInstance instance = generate_scenario(config, seed);
	const cgg::GameConfig game = config.game();
	MetricsRecord m;

	switch (config.mode) {
	case Mode::lcg:
		m = from_cfg(cfg::run_cfg(instance, config.econ, seed, game, config.formation()));
		break;
	case Mode::lcg_variant:
		m = from_cfg(cfg::run_variant_merge_only(instance, config.econ, seed, game, config.formation()));
		break;
	case Mode::non_coop:
		m = from_cfg(cfg::run_non_cooperative(instance, config.econ, seed, game));
		break;
	case Mode::core_exact: {
		cfg::StructureEvaluator eval(instance, config.econ, seed, game);
		const auto covers = cfg::enumerate_covers(instance.operator_count());
		eval.precompute(covers, false);
		cfg::CoreSolver solver(eval, config.residual);
		const auto& core = solver.core(cfg::Coalition::all(instance.operator_count()), cfg::CoalitionStructure{});
		// Report the core member with the largest aggregate utility; an
		// empty core is reported as "none" with non-cooperative utilities.
		const cfg::Outcome* best = nullptr;
		for (const auto& s : core) {
			const cfg::Outcome& o = eval.evaluate(s);
			if (!best || o.aggregate() > best->aggregate()) {
				best = &o;
			}
		}
		const cfg::Outcome& chosen =
			best ? *best : eval.evaluate(cfg::CoalitionStructure::singletons(instance.operator_count()));
		m.utilities = chosen.utilities;
		m.aggregate_utility = chosen.aggregate();
		m.structure = best ? chosen.structure.to_string() : "none";
		m.cgg_iterations = chosen.cgg_iterations;
		m.cgg_iterations_max = eval.max_cgg_iterations();
		m.cgg_invocations = eval.cgg_runs();
		m.cgg_converged = chosen.cgg_converged;
		break;
	}
	case Mode::cgg_grand: {
		const auto grand = cfg::CoalitionStructure::grand(instance.operator_count());
		const cgg::CggResult r = cgg::run_cgg(instance, grand, seed, game);
		m.utilities = cfg::operator_utilities(instance, grand, r, config.econ);
		m.aggregate_utility = 0.0;
		for (double u : m.utilities) {
			m.aggregate_utility += u;
		}
		m.structure = grand.to_string();
		m.cgg_iterations = r.iterations;
		m.cgg_iterations_max = r.iterations;
		m.cgg_invocations = 1;
		m.cgg_converged = r.converged;
		break;
	}
	}
	m.run = run;
	m.seed = seed;
	m.mode = config.mode;
	m.devices = instance.device_count();
	return m;
}

std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config)
{
	config.validate();
	const auto n = static_cast<std::ptrdiff_t>(config.runs);
	std::vector<MetricsRecord> out(config.runs);
	std::vector<std::exception_ptr> errors(config.runs);
#pragma omp parallel for schedule(dynamic)
	for (std::ptrdiff_t r = 0; r < n; ++r) {
		try {
			out[r] = run_one(config, static_cast<std::size_t>(r));
		} catch (...) {
			errors[r] = std::current_exception();
		}
	}
	for (std::size_t r = 0; r < config.runs; ++r) {
		if (errors[r]) {
			try {
				std::rethrow_exception(errors[r]);
			} catch (const std::exception& e) {
				throw std::runtime_error("run " + std::to_string(r) + " (seed " +
				                         std::to_string(config.base_seed + r) + "): " + e.what());
			}
		}
	}
	return out;
}

std::vector<MetricsRecord> run_experiment_serial(const ScenarioConfig& config)
{
	config.validate();
	std::vector<MetricsRecord> out;
	out.reserve(config.runs);
	for (std::size_t r = 0; r < config.runs; ++r) {
		try {
			out.push_back(run_one(config, r));
		} catch (const std::exception& e) {
			throw std::runtime_error("run " + std::to_string(r) + " (seed " + std::to_string(config.base_seed + r) +
			                         "): " + e.what());
		}
	}
	return out;
}

GroupBy parse_group_by(const std::string& text)
{
	if (text == "devices") {
		return GroupBy::devices;
	}
	if (text == "mode") {
		return GroupBy::mode;
	}
	if (text == "mode+devices") {
		return GroupBy::mode_and_devices;
	}
	throw ConfigError("unknown grouping '" + text + "'");
}

std::vector<SummaryRow> aggregate_metrics(const std::vector<MetricsRecord>& records, GroupBy group)
{
	if (records.empty()) {
		throw std::invalid_argument("cannot aggregate an empty record set");
	}
	std::map<std::pair<std::string, std::size_t>, std::vector<const MetricsRecord*>> groups;
	for (const auto& r : records) {
		std::pair<std::string, std::size_t> key{group == GroupBy::devices ? "" : to_string(r.mode),
		                                        group == GroupBy::mode ? 0 : r.devices};
		groups[key].push_back(&r);
	}
	std::vector<SummaryRow> out;
	for (const auto& [key, rs] : groups) {
		SummaryRow row;
		row.mode = key.first;
		row.devices = key.second;
		row.runs = rs.size();
		const double n = double(rs.size());
		row.max_iters = -INFINITY;
		row.max_utility = -INFINITY;
		for (const auto* r : rs) {
			row.mean_iters += double(r->cgg_iterations);
			row.mean_utility += r->aggregate_utility;
			row.mean_rounds += double(r->cfg_rounds);
			row.max_iters = std::max(row.max_iters, double(r->cgg_iterations));
			row.max_utility = std::max(row.max_utility, r->aggregate_utility);
		}
		row.mean_iters /= n;
		row.mean_utility /= n;
		row.mean_rounds /= n;
		for (const auto* r : rs) {
			row.sd_iters += std::pow(double(r->cgg_iterations) - row.mean_iters, 2);
			row.sd_utility += std::pow(r->aggregate_utility - row.mean_utility, 2);
		}
		row.sd_iters = std::sqrt(row.sd_iters / n);
		row.sd_utility = std::sqrt(row.sd_utility / n);
		out.push_back(row);
	}
	return out;
}

void write_records_csv(std::ostream& os, const std::vector<MetricsRecord>& records)
{
	os << "run,seed,mode,devices,aggregate_utility,utilities,cgg_iterations,cgg_iterations_max,"
	      "cgg_invocations,cfg_rounds,structure,cgg_converged\n";
	for (const auto& r : records) {
		os << r.run << ',' << r.seed << ',' << to_string(r.mode) << ',' << r.devices << ','
		   << fmt(r.aggregate_utility) << ',';
		for (std::size_t h = 0; h < r.utilities.size(); ++h) {
			os << (h ? ";" : "") << fmt(r.utilities[h]);
		}
		os << ',' << r.cgg_iterations << ',' << r.cgg_iterations_max << ',' << r.cgg_invocations << ','
		   << r.cfg_rounds << ",\"" << r.structure << "\"," << (r.cgg_converged ? 1 : 0) << '\n';
	}
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
	os << "mode,devices,runs,mean_iters,max_iters,sd_iters,mean_utility,max_utility,sd_utility,mean_rounds\n";
	for (const auto& r : rows) {
		os << r.mode << ',' << r.devices << ',' << r.runs << ',' << fmt(r.mean_iters) << ',' << fmt(r.max_iters)
		   << ',' << fmt(r.sd_iters) << ',' << fmt(r.mean_utility) << ',' << fmt(r.max_utility) << ','
		   << fmt(r.sd_utility) << ',' << fmt(r.mean_rounds) << '\n';
	}
}

} // namespace lcg::harness
