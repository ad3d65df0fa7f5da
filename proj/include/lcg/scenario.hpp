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

#ifndef LCG_SCENARIO_HPP
#define LCG_SCENARIO_HPP

#include <lcg/cfg.hpp>
#include <lcg/net_model.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace lcg::harness {

enum class Mode
{
	lcg,          ///< overlapping coalition formation over the device game
	lcg_variant,  ///< merge-only partitions
	non_coop,     ///< every operator alone
	core_exact,   ///< exhaustive undominated set (small operator counts)
	cgg_grand,    ///< device game under the grand coalition only
};

Mode parse_mode(std::string_view text);
std::string to_string(Mode mode);

struct ScenarioConfig
{
	net::Area area;
	std::size_t operators{4};
	std::size_t devices_min{3};  ///< per operator
	std::size_t devices_max{8};
	std::size_t flows_per_operator{1};
	double demand_min_kbps{10.0};
	double demand_max_kbps{20.0};
	net::RadioParams radio;
	double max_power_w{0.02};
	net::BandShare band_share{net::BandShare::per_outdegree};
	cfg::EconParams econ;
	std::size_t runs{1};
	std::uint64_t base_seed{1};
	Mode mode{Mode::lcg};
	std::size_t cgg_max_iterations{1000};
	std::size_t cfg_max_rounds{100};
	cfg::ResidualAssumption residual{cfg::ResidualAssumption::optimistic};
	bool negotiated_moves{true};

	/// Throws ConfigError on any violated invariant.
	void validate() const;

	cgg::GameConfig game() const;
	cfg::CfgConfig formation() const;
};

/// Reads the documented JSON schema; absent keys keep their defaults and
/// unknown keys are rejected.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ScenarioConfig& config);

/// Devices uniform in the area (at least 1 m apart), flow endpoints drawn
/// without replacement from the owner's devices, demands uniform in the
/// configured interval. Fully determined by `seed`.
net::NetworkInstance generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

} // namespace lcg::harness

#endif // LCG_SCENARIO_HPP
