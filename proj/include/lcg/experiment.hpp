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

#ifndef LCG_EXPERIMENT_HPP
#define LCG_EXPERIMENT_HPP

#include <lcg/scenario.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lcg::harness {

struct MetricsRecord
{
	std::size_t run{0};
	std::uint64_t seed{0};
	Mode mode{Mode::lcg};
	std::size_t devices{0};
	double aggregate_utility{0.0};
	std::vector<double> utilities;
	std::size_t cgg_iterations{0};      ///< device-game iterations behind the final structure
	std::size_t cgg_iterations_max{0};  ///< largest over every device game run for this record
	std::size_t cgg_invocations{0};
	std::size_t cfg_rounds{0};
	std::string structure;
	bool cgg_converged{true};
};

/// One run: instance from seed base_seed + run, then the configured mode.
MetricsRecord run_one(const ScenarioConfig& config, std::size_t run);

/// All runs on an OpenMP worker pool; records come back ordered by run.
/// A failing run is reported as std::runtime_error naming the run.
std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config);

/// Serial reference for run_experiment; identical output.
std::vector<MetricsRecord> run_experiment_serial(const ScenarioConfig& config);

enum class GroupBy
{
	devices,
	mode,
	mode_and_devices,
};

GroupBy parse_group_by(const std::string& text);

struct SummaryRow
{
	std::string mode;  ///< empty when grouping by devices only
	std::size_t devices{0};  ///< 0 when grouping by mode only
	std::size_t runs{0};
	double mean_iters{0.0};
	double max_iters{0.0};
	double sd_iters{0.0};
	double mean_utility{0.0};
	double max_utility{0.0};
	double sd_utility{0.0};
	double mean_rounds{0.0};
};

/// Mean, maximum and population standard deviation per group, groups in
/// ascending key order. Throws std::invalid_argument on empty input.
std::vector<SummaryRow> aggregate_metrics(const std::vector<MetricsRecord>& records, GroupBy group);

/// Header: run,seed,mode,devices,aggregate_utility,utilities,cgg_iterations,
/// cgg_iterations_max,cgg_invocations,cfg_rounds,structure,cgg_converged.
/// Per-operator utilities are joined with ';'.
void write_records_csv(std::ostream& os, const std::vector<MetricsRecord>& records);

/// Header: mode,devices,runs,mean_iters,max_iters,sd_iters,mean_utility,
/// max_utility,sd_utility,mean_rounds.
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

inline constexpr const char* kSoftwareVersion = "lcg-sim 1.0.0";

} // namespace lcg::harness

#endif // LCG_EXPERIMENT_HPP
