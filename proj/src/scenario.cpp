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

#include <lcg/rng.hpp>
#include <lcg/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

namespace lcg::harness {

using nlohmann::json;

Mode parse_mode(std::string_view text)
{
	if (text == "lcg") {
		return Mode::lcg;
	}
	if (text == "lcg-variant") {
		return Mode::lcg_variant;
	}
	if (text == "non-coop") {
		return Mode::non_coop;
	}
	if (text == "core-exact") {
		return Mode::core_exact;
	}
	if (text == "cgg-grand") {
		return Mode::cgg_grand;
	}
	throw ConfigError("unknown mode '" + std::string(text) + "'");
}

std::string to_string(Mode mode)
{
	switch (mode) {
	case Mode::lcg: return "lcg";
	case Mode::lcg_variant: return "lcg-variant";
	case Mode::non_coop: return "non-coop";
	case Mode::core_exact: return "core-exact";
	case Mode::cgg_grand: return "cgg-grand";
	}
	return "?";
}

void ScenarioConfig::validate() const
{
	area.validate();
	radio.validate();
	econ.validate();
	if (operators == 0 || operators > cfg::Coalition::max_operators) {
		throw ConfigError("operators must be in 1.." + std::to_string(cfg::Coalition::max_operators));
	}
	if (devices_min == 0 || devices_max < devices_min) {
		throw ConfigError("devices_per_operator must be a positive count or a non-empty range");
	}
	if (flows_per_operator == 0) {
		throw ConfigError("flows_per_operator must be positive");
	}
	if (devices_min < 2) {
		throw ConfigError("an operator with fewer than 2 devices cannot host a flow");
	}
	if (operators * devices_max > DeviceSet::capacity) {
		throw ConfigError("at most " + std::to_string(DeviceSet::capacity) + " devices in total");
	}
	if (!(demand_min_kbps > 0.0) || demand_max_kbps < demand_min_kbps) {
		throw ConfigError("demand_kbps must be a non-empty interval of positive rates");
	}
	if (!(max_power_w > 0.0)) {
		throw ConfigError("max_power_w must be positive");
	}
	if (runs == 0) {
		throw ConfigError("runs must be at least 1");
	}
	if (cgg_max_iterations == 0 || cfg_max_rounds == 0) {
		throw ConfigError("iteration caps must be positive");
	}
	if (mode == Mode::core_exact && operators > cfg::kMaxExhaustiveOperators) {
		throw ConfigError("core-exact mode supports at most " + std::to_string(cfg::kMaxExhaustiveOperators) +
		                  " operators");
	}
}

cgg::GameConfig ScenarioConfig::game() const
{
	cgg::GameConfig g;
	g.band_share = band_share;
	g.max_iterations = cgg_max_iterations;
	g.negotiated_moves = negotiated_moves;
	return g;
}

cfg::CfgConfig ScenarioConfig::formation() const
{
	cfg::CfgConfig c;
	c.max_rounds = cfg_max_rounds;
	return c;
}

namespace {

template <typename T>
T take(const json& j, const char* key, T fallback)
{
	return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where)
{
	if (!j.is_object()) {
		throw ConfigError(where + " must be a JSON object");
	}
	const std::set<std::string> allowed(known.begin(), known.end());
	for (const auto& [k, v] : j.items()) {
		if (!allowed.count(k)) {
			throw ConfigError("unknown key '" + k + "' in " + where);
		}
	}
}

std::pair<double, double> pair_of(const json& j, const char* key)
{
	const auto& v = j.at(key);
	if (v.is_number()) {
		return {v.get<double>(), v.get<double>()};
	}
	if (!v.is_array() || v.size() != 2) {
		throw ConfigError(std::string(key) + " must be a number or a [min, max] pair");
	}
	return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

ScenarioConfig parse_config(const json& j)
{
	reject_unknown(j,
	               {"area_m", "operators", "devices_per_operator", "flows_per_operator", "demand_kbps", "radio",
	                "band_share", "econ", "runs", "base_seed", "mode", "cgg_max_iterations", "cfg_max_rounds",
	                "residual_assumption", "negotiated_moves"},
	               "config");
	ScenarioConfig c;
	try {
		if (j.contains("area_m")) {
			const auto [w, h] = pair_of(j, "area_m");
			c.area = net::Area{w, h};
		}
		c.operators = take<std::size_t>(j, "operators", c.operators);
		if (j.contains("devices_per_operator")) {
			const auto [lo, hi] = pair_of(j, "devices_per_operator");
			if (lo < 0 || hi < 0 || lo != std::floor(lo) || hi != std::floor(hi)) {
				throw ConfigError("devices_per_operator must hold non-negative integers");
			}
			c.devices_min = static_cast<std::size_t>(lo);
			c.devices_max = static_cast<std::size_t>(hi);
		}
		c.flows_per_operator = take<std::size_t>(j, "flows_per_operator", c.flows_per_operator);
		if (j.contains("demand_kbps")) {
			std::tie(c.demand_min_kbps, c.demand_max_kbps) = pair_of(j, "demand_kbps");
		}
		if (j.contains("radio")) {
			const json& r = j.at("radio");
			reject_unknown(r, {"beta", "path_loss_exponent", "noise_dbm", "bandwidth_hz", "max_power_w"}, "radio");
			c.radio.beta = take<double>(r, "beta", c.radio.beta);
			c.radio.path_loss_exp = take<double>(r, "path_loss_exponent", c.radio.path_loss_exp);
			if (r.contains("noise_dbm")) {
				c.radio.noise_power = net::dbm_to_watts(r.at("noise_dbm").get<double>());
			}
			c.radio.bandwidth = take<double>(r, "bandwidth_hz", c.radio.bandwidth);
			c.max_power_w = take<double>(r, "max_power_w", c.max_power_w);
		}
		if (j.contains("band_share")) {
			c.band_share = net::parse_band_share(j.at("band_share").get<std::string>());
		}
		if (j.contains("econ")) {
			const json& e = j.at("econ");
			reject_unknown(e, {"revenue_per_kbps", "cost_per_watt", "coalition_cost"}, "econ");
			c.econ.revenue_per_kbps = take<double>(e, "revenue_per_kbps", c.econ.revenue_per_kbps);
			c.econ.cost_per_watt = take<double>(e, "cost_per_watt", c.econ.cost_per_watt);
			c.econ.coalition_cost = take<double>(e, "coalition_cost", c.econ.coalition_cost);
		}
		c.runs = take<std::size_t>(j, "runs", c.runs);
		c.base_seed = take<std::uint64_t>(j, "base_seed", c.base_seed);
		if (j.contains("mode")) {
			c.mode = parse_mode(j.at("mode").get<std::string>());
		}
		c.cgg_max_iterations = take<std::size_t>(j, "cgg_max_iterations", c.cgg_max_iterations);
		c.cfg_max_rounds = take<std::size_t>(j, "cfg_max_rounds", c.cfg_max_rounds);
		if (j.contains("residual_assumption")) {
			c.residual = cfg::parse_residual_assumption(j.at("residual_assumption").get<std::string>());
		}
		c.negotiated_moves = take<bool>(j, "negotiated_moves", c.negotiated_moves);
	} catch (const json::exception& e) {
		throw ConfigError(std::string("malformed config: ") + e.what());
	}
	c.validate();
	return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in) {
		throw ConfigError("cannot open config file " + path.string());
	}
	json j;
	try {
		in >> j;
	} catch (const json::exception& e) {
		throw ConfigError("cannot parse " + path.string() + ": " + e.what());
	}
	return parse_config(j);
}

json to_json(const ScenarioConfig& c)
{
	json j;
	j["area_m"] = {c.area.width, c.area.height};
	j["operators"] = c.operators;
	j["devices_per_operator"] = {c.devices_min, c.devices_max};
	j["flows_per_operator"] = c.flows_per_operator;
	j["demand_kbps"] = {c.demand_min_kbps, c.demand_max_kbps};
	j["radio"] = {{"beta", c.radio.beta},
	              {"path_loss_exponent", c.radio.path_loss_exp},
	              {"noise_dbm", 10.0 * std::log10(c.radio.noise_power / 1e-3)},
	              {"bandwidth_hz", c.radio.bandwidth},
	              {"max_power_w", c.max_power_w}};
	j["band_share"] = net::to_string(c.band_share);
	j["econ"] = {{"revenue_per_kbps", c.econ.revenue_per_kbps},
	             {"cost_per_watt", c.econ.cost_per_watt},
	             {"coalition_cost", c.econ.coalition_cost}};
	j["runs"] = c.runs;
	j["base_seed"] = c.base_seed;
	j["mode"] = to_string(c.mode);
	j["cgg_max_iterations"] = c.cgg_max_iterations;
	j["cfg_max_rounds"] = c.cfg_max_rounds;
	j["residual_assumption"] = cfg::to_string(c.residual);
	j["negotiated_moves"] = c.negotiated_moves;
	return j;
}

net::NetworkInstance generate_scenario(const ScenarioConfig& config, std::uint64_t seed)
{
	config.validate();
	Rng place(derive_seed(seed, SeedStream::placement));
	Rng demand(derive_seed(seed, SeedStream::demand));

	std::vector<std::size_t> counts(config.operators);
	for (auto& k : counts) {
		k = config.devices_min + place.index(config.devices_max - config.devices_min + 1);
	}

	std::vector<net::Device> devices;
	for (std::size_t h = 0; h < config.operators; ++h) {
		for (std::size_t k = 0; k < counts[h]; ++k) {
			net::Position p;
			bool ok = false;
			for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
				p = net::Position{place.uniform(0.0, config.area.width), place.uniform(0.0, config.area.height)};
				ok = std::all_of(devices.begin(), devices.end(),
				                 [&](const net::Device& d) { return net::distance(d.position, p) >= 1.0; });
			}
			if (!ok) {
				throw ConfigError("area too small to keep devices 1 m apart");
			}
			devices.push_back(net::Device{DeviceId{static_cast<std::uint32_t>(devices.size())},
			                              OperatorId{static_cast<std::uint32_t>(h + 1)}, p, config.max_power_w});
		}
	}

	std::vector<net::FlowSession> flows;
	std::size_t first = 0;
	for (std::size_t h = 0; h < config.operators; ++h) {
		for (std::size_t k = 0; k < config.flows_per_operator; ++k) {
			const std::size_t s = place.index(counts[h]);
			std::size_t d = place.index(counts[h] - 1);
			d += d >= s ? 1 : 0;
			const double rate = demand.uniform(config.demand_min_kbps, config.demand_max_kbps) * 1000.0;
			flows.push_back(net::FlowSession{FlowId{static_cast<std::uint32_t>(flows.size())},
			                                 OperatorId{static_cast<std::uint32_t>(h + 1)},
			                                 DeviceId{static_cast<std::uint32_t>(first + s)},
			                                 DeviceId{static_cast<std::uint32_t>(first + d)}, rate});
		}
		first += counts[h];
	}
	return net::NetworkInstance(config.operators, std::move(devices), std::move(flows), config.radio, config.area);
}

} // namespace lcg::harness
