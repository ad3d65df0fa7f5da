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
#include <lcg/scenario.hpp>

#include <doctest.h>

#include <sstream>

using namespace lcg;
using namespace lcg::harness;

namespace {

ScenarioConfig small(Mode mode)
{
	ScenarioConfig c;
	c.operators = 3;
	c.devices_min = 2;
	c.devices_max = 4;
	c.radio.bandwidth = 1000.0;
	c.runs = 4;
	c.base_seed = 40;
	c.mode = mode;
	return c;
}

MetricsRecord record(std::size_t iterations, double utility, std::size_t devices = 12, Mode mode = Mode::lcg)
{
	MetricsRecord r;
	r.cgg_iterations = iterations;
	r.aggregate_utility = utility;
	r.devices = devices;
	r.mode = mode;
	return r;
}

} // namespace

TEST_CASE("default scenario matches the reference setting")
{
	const ScenarioConfig c;
	CHECK(c.area.width == 1000.0);
	CHECK(c.area.height == 1000.0);
	CHECK(c.operators == 4);
	CHECK(c.devices_min == 3);
	CHECK(c.devices_max == 8);
	CHECK(c.flows_per_operator == 1);
	CHECK(c.demand_min_kbps == 10.0);
	CHECK(c.demand_max_kbps == 20.0);
	CHECK(c.max_power_w == 0.02);
}

TEST_CASE("generated scenarios respect the configuration")
{
	ScenarioConfig c;
	for (std::uint64_t seed = 1; seed <= 50; ++seed) {
		const auto inst = generate_scenario(c, seed);
		CHECK(inst.operator_count() == 4);
		std::vector<std::size_t> per_op(4, 0);
		for (const auto& d : inst.devices()) {
			++per_op[d.owner.index() - 1];
			CHECK(c.area.contains(d.position));
			for (const auto& e : inst.devices()) {
				if (e.id != d.id) {
					CHECK(net::distance(d.position, e.position) >= 1.0);
				}
			}
		}
		for (auto k : per_op) {
			CHECK(k >= 3);
			CHECK(k <= 8);
		}
		REQUIRE(inst.flows().size() == 4);
		for (const auto& f : inst.flows()) {
			CHECK(f.demand >= 10e3);
			CHECK(f.demand <= 20e3);
			CHECK(f.source != f.destination);
			CHECK(inst.device(f.source).owner == f.owner);
			CHECK(inst.device(f.destination).owner == f.owner);
		}
	}
}

TEST_CASE("same seed, same instance")
{
	const ScenarioConfig c;
	const auto a = generate_scenario(c, 77);
	const auto b = generate_scenario(c, 77);
	REQUIRE(a.device_count() == b.device_count());
	for (std::size_t i = 0; i < a.device_count(); ++i) {
		CHECK(a.devices()[i].position.x == b.devices()[i].position.x);
		CHECK(a.devices()[i].position.y == b.devices()[i].position.y);
	}
	for (std::size_t l = 0; l < a.flows().size(); ++l) {
		CHECK(a.flows()[l].demand == b.flows()[l].demand);
	}
}

TEST_CASE("invalid configurations are rejected")
{
	auto zero_area = ScenarioConfig{};
	zero_area.area = net::Area{0.0, 1000.0};
	CHECK_THROWS_AS(zero_area.validate(), ConfigError);

	auto lone = ScenarioConfig{};
	lone.devices_min = 1;
	CHECK_THROWS_AS(lone.validate(), ConfigError);

	auto inverted = ScenarioConfig{};
	inverted.demand_min_kbps = 30.0;
	CHECK_THROWS_AS(inverted.validate(), ConfigError);

	auto no_runs = ScenarioConfig{};
	no_runs.runs = 0;
	CHECK_THROWS_AS(no_runs.validate(), ConfigError);

	auto no_ops = ScenarioConfig{};
	no_ops.operators = 0;
	CHECK_THROWS_AS(no_ops.validate(), ConfigError);
}

TEST_CASE("configuration files parse and round-trip")
{
	const auto j = nlohmann::json::parse(R"({
		"area_m": [500, 800], "operators": 3, "devices_per_operator": 4,
		"demand_kbps": [12, 18], "radio": {"bandwidth_hz": 1000, "noise_dbm": -90},
		"econ": {"coalition_cost": 0}, "runs": 7, "base_seed": 3, "mode": "lcg-variant",
		"residual_assumption": "pessimistic"
	})");
	const auto c = parse_config(j);
	CHECK(c.area.width == 500.0);
	CHECK(c.operators == 3);
	CHECK(c.devices_min == 4);
	CHECK(c.devices_max == 4);
	CHECK(c.radio.bandwidth == 1000.0);
	CHECK(c.radio.noise_power == doctest::Approx(1e-12));
	CHECK(c.econ.coalition_cost == 0.0);
	CHECK(c.econ.revenue_per_kbps == 120.0);
	CHECK(c.mode == Mode::lcg_variant);
	CHECK(c.residual == cfg::ResidualAssumption::pessimistic);
	const auto back = parse_config(to_json(c));
	CHECK(to_json(back) == to_json(c));

	CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"operatorz": 3})")), ConfigError);
	CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"mode": "greedy"})")), ConfigError);
	CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"area_m": [0, 10]})")), ConfigError);
}

TEST_CASE("mode names")
{
	for (auto m : {Mode::lcg, Mode::lcg_variant, Mode::non_coop, Mode::core_exact, Mode::cgg_grand}) {
		CHECK(parse_mode(to_string(m)) == m);
	}
	CHECK(to_string(Mode::non_coop) == "non-coop");
	CHECK_THROWS_AS(parse_mode("coop"), ConfigError);
}

TEST_CASE("aggregation of one record")
{
	const auto rows = aggregate_metrics({record(3, 42.0)}, GroupBy::devices);
	REQUIRE(rows.size() == 1);
	CHECK(rows[0].runs == 1);
	CHECK(rows[0].mean_iters == 3.0);
	CHECK(rows[0].max_iters == 3.0);
	CHECK(rows[0].sd_iters == 0.0);
	CHECK(rows[0].mean_utility == 42.0);
	CHECK(rows[0].sd_utility == 0.0);
}

TEST_CASE("aggregation of two records")
{
	const auto rows = aggregate_metrics({record(2, 10.0), record(4, 20.0)}, GroupBy::devices);
	REQUIRE(rows.size() == 1);
	CHECK(rows[0].mean_iters == 3.0);
	CHECK(rows[0].max_iters == 4.0);
	CHECK(rows[0].sd_iters == doctest::Approx(1.0));
	CHECK(rows[0].mean_utility == 15.0);
	CHECK(rows[0].max_utility == 20.0);
}

TEST_CASE("aggregation groups by mode and device count")
{
	const std::vector<MetricsRecord> recs{record(1, 1.0, 12, Mode::lcg), record(2, 2.0, 16, Mode::lcg),
	                                      record(3, 3.0, 12, Mode::non_coop), record(5, 5.0, 12, Mode::lcg)};
	const auto by_devices = aggregate_metrics(recs, GroupBy::devices);
	REQUIRE(by_devices.size() == 2);
	CHECK(by_devices[0].devices == 12);
	CHECK(by_devices[0].runs == 3);
	CHECK(by_devices[0].mean_iters == 3.0);
	const auto both = aggregate_metrics(recs, GroupBy::mode_and_devices);
	CHECK(both.size() == 3);
	const auto by_mode = aggregate_metrics(recs, GroupBy::mode);
	REQUIRE(by_mode.size() == 2);
	CHECK(by_mode[0].mode == "lcg");
	CHECK(by_mode[0].devices == 0);
	CHECK_THROWS(aggregate_metrics({}, GroupBy::devices));
	CHECK(parse_group_by("mode+devices") == GroupBy::mode_and_devices);
	CHECK_THROWS(parse_group_by("seed"));
}

TEST_CASE("one run gives one record")
{
	auto c = small(Mode::lcg);
	c.runs = 1;
	const auto recs = run_experiment(c);
	REQUIRE(recs.size() == 1);
	CHECK(recs[0].seed == c.base_seed);
	const auto rows = aggregate_metrics(recs, GroupBy::devices);
	CHECK(rows[0].mean_utility == recs[0].aggregate_utility);
}

TEST_CASE("records are consistent for every mode")
{
	for (auto m : {Mode::lcg, Mode::lcg_variant, Mode::non_coop, Mode::core_exact, Mode::cgg_grand}) {
		CAPTURE(to_string(m));
		const auto recs = run_experiment(small(m));
		REQUIRE(recs.size() == 4);
		for (std::size_t r = 0; r < recs.size(); ++r) {
			const auto& rec = recs[r];
			CHECK(rec.run == r);
			CHECK(rec.seed == 40 + r);
			CHECK(rec.mode == m);
			CHECK(rec.utilities.size() == 3);
			double sum = 0.0;
			for (double u : rec.utilities) {
				sum += u;
			}
			CHECK(rec.aggregate_utility == doctest::Approx(sum).epsilon(1e-6));
			CHECK(rec.cgg_iterations >= 1);
			CHECK(rec.cgg_iterations <= rec.cgg_iterations_max);
			CHECK_FALSE(rec.structure.empty());
		}
	}
}

TEST_CASE("parallel and serial drivers produce identical CSV")
{
	const auto c = small(Mode::lcg);
	std::ostringstream a;
	std::ostringstream b;
	write_records_csv(a, run_experiment(c));
	write_records_csv(b, run_experiment_serial(c));
	CHECK(a.str() == b.str());
	CHECK(a.str().rfind("run,", 0) == 0);
}
