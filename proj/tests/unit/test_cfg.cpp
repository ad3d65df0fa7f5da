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

#include "support.hpp"

#include <lcg/cfg.hpp>
#include <lcg/scenario.hpp>

#include <doctest.h>

#include <set>

using namespace lcg;
using cfg::Coalition;
using cfg::CoalitionStructure;

namespace {

cgg::GameConfig full_band()
{
	cgg::GameConfig c;
	c.band_share = net::BandShare::full_band;
	return c;
}

cfg::EconParams econ(double coalition_cost)
{
	cfg::EconParams e;
	e.coalition_cost = coalition_cost;
	return e;
}

// Two operators, each with a 10 kb/s direct link, a 20 kb/s demand, and a
// second 10 kb/s path only through a relay of the other operator. Devices
// 0->1 and 2->3 are the flows; 4 belongs to operator 1, 5 to operator 2.
net::NetworkInstance mutual_relays(bool relays_useful = true)
{
	std::vector<std::tuple<int, int, double>> caps{{0, 1, 1e4}, {2, 3, 1e4}};
	if (relays_useful) {
		caps.insert(caps.end(), {{0, 5, 1e4}, {5, 1, 1e4}, {2, 4, 1e4}, {4, 3, 1e4}});
	}
	return test::instance(2, {1, 1, 2, 2, 1, 2}, {test::flow(0, 0, 1, 2e4, 1), test::flow(1, 2, 3, 2e4, 2)}, caps);
}

// Every operator gains 10 kb/s from a dedicated relay of each other operator.
net::NetworkInstance all_pairs_relays(std::size_t n_ops)
{
	std::vector<std::uint32_t> owners;
	std::vector<net::FlowSession> flows;
	std::vector<std::tuple<int, int, double>> caps;
	for (std::uint32_t h = 1; h <= n_ops; ++h) {
		const int s = static_cast<int>(owners.size());
		owners.insert(owners.end(), {h, h});
		flows.push_back(test::flow(h - 1, static_cast<std::size_t>(s), static_cast<std::size_t>(s + 1),
		                           1e4 * static_cast<double>(n_ops), h));
		caps.emplace_back(s, s + 1, 1e4);
	}
	for (std::uint32_t g = 1; g <= n_ops; ++g) {
		for (std::uint32_t h = 1; h <= n_ops; ++h) {
			if (g == h) {
				continue;
			}
			const int r = static_cast<int>(owners.size());
			owners.push_back(g);
			const int s = static_cast<int>(2 * (h - 1));
			caps.emplace_back(s, r, 1e4);
			caps.emplace_back(r, s + 1, 1e4);
		}
	}
	return test::instance(n_ops, owners, flows, caps);
}

// Independent count: every family of non-empty subsets whose union is all.
std::set<std::string> brute_force_covers(std::size_t n)
{
	const std::uint32_t full = (1U << n) - 1;
	const std::uint32_t subsets = full;  // masks 1..full
	std::set<std::string> out;
	for (std::uint64_t family = 1; family < (std::uint64_t{1} << subsets); ++family) {
		std::uint32_t seen = 0;
		std::vector<Coalition> members;
		for (std::uint32_t k = 0; k < subsets; ++k) {
			if ((family >> k) & 1U) {
				seen |= k + 1;
				members.emplace_back(k + 1);
			}
		}
		if (seen == full) {
			out.insert(CoalitionStructure{members}.to_string());
		}
	}
	return out;
}

} // namespace

TEST_CASE("cover enumeration matches brute force")
{
	const std::size_t expected[] = {1, 5, 109, 32297};
	for (std::size_t n = 1; n <= 4; ++n) {
		CAPTURE(n);
		const auto covers = cfg::enumerate_covers(n);
		CHECK(covers.size() == expected[n - 1]);
		std::set<std::string> names;
		for (const auto& c : covers) {
			CHECK_NOTHROW(c.validate(n));
			names.insert(c.to_string());
		}
		CHECK(names.size() == covers.size());
		CHECK(names == brute_force_covers(n));
	}
	CHECK(cfg::enumerate_covers(Coalition{}).size() == 1);
	CHECK_THROWS_AS(cfg::enumerate_covers(5), std::invalid_argument);
}

TEST_CASE("covers of two operators")
{
	std::vector<std::string> names;
	for (const auto& c : cfg::enumerate_covers(2)) {
		names.push_back(c.to_string());
	}
	CHECK(names == std::vector<std::string>{"{1}|{1,2}", "{1}|{1,2}|{2}", "{1}|{2}", "{1,2}", "{1,2}|{2}"});
}

TEST_CASE("partition enumeration gives the Bell numbers")
{
	const std::size_t bell[] = {1, 2, 5, 15};
	for (std::size_t n = 1; n <= 4; ++n) {
		const auto parts = cfg::enumerate_partitions(n);
		CHECK(parts.size() == bell[n - 1]);
		for (const auto& p : parts) {
			CHECK(p.is_partition());
		}
	}
}

TEST_CASE("coalition cost is C times the partner count")
{
	CHECK(cfg::coalition_cost(econ(5.0), Coalition::of({1, 2, 3})) == doctest::Approx(10.0));
	CHECK(cfg::coalition_cost(econ(5.0), Coalition::of({2})) == 0.0);
	CHECK(cfg::coalition_cost(econ(5.0), Coalition::of({1, 4})) == doctest::Approx(5.0));
}

TEST_CASE("economic parameters are validated")
{
	CHECK_NOTHROW(cfg::EconParams{}.validate());
	CHECK_THROWS_AS((cfg::EconParams{-1.0, 500.0, 5.0}.validate()), ConfigError);
	CHECK_THROWS_AS((cfg::EconParams{120.0, -1.0, 5.0}.validate()), ConfigError);
	CHECK_THROWS_AS((cfg::EconParams{120.0, 500.0, -5.0}.validate()), ConfigError);
	const auto inst = mutual_relays();
	CHECK(cfg::EconParams{}.revenue_dominates(inst));
	CHECK_FALSE((cfg::EconParams{1.0, 500.0, 5.0}.revenue_dominates(inst)));
}

TEST_CASE("a lone operator earns revenue minus the cost of its active devices")
{
	// 10 kb/s at 120 per kb/s, two devices at 0.02 W and 500 per W.
	const auto inst = mutual_relays();
	const auto out = cfg::evaluate_structure(CoalitionStructure::singletons(2), inst, econ(5.0), 1, full_band());
	CHECK(out.utility(OperatorId{1}) == doctest::Approx(1180.0));
	CHECK(out.utility(OperatorId{2}) == doctest::Approx(1180.0));
	CHECK(out.aggregate() == doctest::Approx(2360.0));
}

TEST_CASE("sharing relays doubles the rate of both operators")
{
	// 20 kb/s, three active devices, one partner at C = 5.
	const auto inst = mutual_relays();
	const auto out = cfg::evaluate_structure(CoalitionStructure::grand(2), inst, econ(5.0), 1, full_band());
	CHECK(out.utility(OperatorId{1}) == doctest::Approx(2365.0));
	CHECK(out.utility(OperatorId{2}) == doctest::Approx(2365.0));
}

TEST_CASE("useless cooperation costs each member its coalition fee")
{
	const auto inst = mutual_relays(false);
	const auto alone = cfg::evaluate_structure(CoalitionStructure::singletons(2), inst, econ(5.0), 1, full_band());
	const auto together = cfg::evaluate_structure(CoalitionStructure::grand(2), inst, econ(5.0), 1, full_band());
	CHECK(together.aggregate() == doctest::Approx(alone.aggregate() - 10.0));

	const auto three = all_pairs_relays(3);
	cgg::GameConfig no_relay = full_band();
	const auto solo = cfg::evaluate_structure(CoalitionStructure::singletons(3), three, econ(5.0), 1, no_relay);
	const auto grand = cfg::evaluate_structure(CoalitionStructure::grand(3), three, econ(5.0), 1, no_relay);
	// In the grand coalition each operator pays 10 and gains two relayed paths.
	for (std::uint32_t h = 1; h <= 3; ++h) {
		CHECK(grand.utility(OperatorId{h}) - solo.utility(OperatorId{h}) == doctest::Approx(2 * 1200.0 - 20.0 - 10.0));
	}
}

TEST_CASE("structures with the same partners share one device game")
{
	const auto inst = mutual_relays();
	cfg::StructureEvaluator eval(inst, econ(5.0), 1, full_band());
	const auto& a = eval.evaluate(CoalitionStructure::parse("{1,2}"));
	const auto& b = eval.evaluate(CoalitionStructure::parse("{1}|{1,2}"));
	CHECK(a.utilities == b.utilities);
	CHECK(eval.cgg_runs() == 1);
	eval.evaluate(CoalitionStructure::singletons(2));
	CHECK(eval.cgg_runs() == 2);
}

TEST_CASE("parallel and serial precomputation agree")
{
	harness::ScenarioConfig config;
	config.operators = 3;
	config.devices_min = 3;
	config.devices_max = 4;
	config.radio.bandwidth = 1000.0;
	const auto inst = harness::generate_scenario(config, 5);
	const auto covers = cfg::enumerate_covers(3);
	cfg::StructureEvaluator serial(inst, config.econ, 5, config.game());
	cfg::StructureEvaluator parallel(inst, config.econ, 5, config.game());
	serial.precompute(covers, false);
	parallel.precompute(covers, true);
	for (const auto& s : covers) {
		CHECK(serial.evaluate(s).utilities == parallel.evaluate(s).utilities);
	}
}

TEST_CASE("dominance needs weak gains for all and a strict gain for one")
{
	const Coalition s = Coalition::of({1, 2});
	const std::vector<double> y{1.0, 1.0, 1.0};
	CHECK_FALSE(cfg::better_for(y, y, s));
	CHECK(cfg::better_for({2.0, 1.0, 0.0}, y, s));
	CHECK_FALSE(cfg::better_for({2.0, 0.5, 5.0}, y, s));
	CHECK(cfg::better_for({1.0, 1.0 + 1e-6, -9.0}, y, s));
	CHECK_FALSE(cfg::better_for({1.0, 1.0 + 1e-12, 9.0}, y, s));
}

TEST_CASE("residual games after complete and partial deviations")
{
	const Coalition all = Coalition::all(3);
	const auto everyone = cfg::complete_deviation(all, all, CoalitionStructure::grand(3));
	CHECK(everyone.players.empty());

	const auto pair = cfg::complete_deviation(all, Coalition::of({1, 2}), CoalitionStructure::parse("{1,2}"));
	CHECK(pair.players == Coalition::of({3}));
	CHECK(pair.frozen.to_string() == "{1,2}");
	CHECK_THROWS_AS(cfg::complete_deviation(all, Coalition{}, CoalitionStructure{}), std::invalid_argument);
	CHECK_THROWS_AS(cfg::complete_deviation(all, Coalition::of({1}), CoalitionStructure::parse("{1,2}")),
	                std::invalid_argument);

	const auto chain = CoalitionStructure::parse("{1,2}|{2,3}");
	const auto partial = cfg::partial_deviation(chain, Coalition::of({2}), {Coalition::of({2, 3})});
	CHECK(partial.players == Coalition::of({3}));
	CHECK(partial.frozen.to_string() == "{1,2}");
	CHECK_THROWS_AS(cfg::partial_deviation(chain, Coalition::of({1}), {Coalition::of({1, 2})}), std::invalid_argument);
	CHECK_THROWS_AS(cfg::partial_deviation(chain, Coalition::of({2}), {Coalition::of({1, 3})}), std::invalid_argument);
	CHECK_THROWS_AS(cfg::partial_deviation(chain, Coalition::of({2}), {Coalition::of({1, 2}), Coalition::of({2, 3})}),
	                std::invalid_argument);
}

TEST_CASE("residual assumption names")
{
	CHECK(cfg::parse_residual_assumption("optimistic") == cfg::ResidualAssumption::optimistic);
	CHECK(cfg::parse_residual_assumption("pessimistic") == cfg::ResidualAssumption::pessimistic);
	CHECK(cfg::to_string(cfg::ResidualAssumption::pessimistic) == "pessimistic");
	CHECK_THROWS_AS(cfg::parse_residual_assumption("hopeful"), ConfigError);
}

TEST_CASE("the core of a one-operator game is its only outcome")
{
	const auto inst = test::instance(1, {1, 1}, {test::flow(0, 0, 1, 1e4)}, {{0, 1, 1e4}});
	const auto core = cfg::gamma_core_exact(inst, econ(5.0), 1, full_band());
	REQUIRE(core.size() == 1);
	CHECK(core[0].structure.to_string() == "{1}");
	CHECK(core[0].utility(OperatorId{1}) == doctest::Approx(1180.0));
}

TEST_CASE("two-operator core follows the profitability of cooperation")
{
	const auto inst = mutual_relays();
	for (auto a : {cfg::ResidualAssumption::optimistic, cfg::ResidualAssumption::pessimistic}) {
		const auto core = cfg::gamma_core_exact(inst, econ(5.0), 1, full_band(), a);
		REQUIRE_FALSE(core.empty());
		for (const auto& o : core) {
			CHECK(o.structure.partners(OperatorId{1}) == Coalition::of({1, 2}));
			CHECK(o.utility(OperatorId{1}) == doctest::Approx(2365.0));
		}
		const auto expensive = cfg::gamma_core_exact(inst, econ(1e6), 1, full_band(), a);
		REQUIRE(expensive.size() == 1);
		CHECK(expensive[0].structure == CoalitionStructure::singletons(2));
	}
}

TEST_CASE("singletons are dominated via the profitable pair")
{
	const auto inst = mutual_relays();
	cfg::StructureEvaluator eval(inst, econ(5.0), 1, full_band());
	cfg::CoreSolver solver(eval);
	const Coalition all = Coalition::all(2);
	const auto dev = solver.dominated_via(all, {}, CoalitionStructure::singletons(2), all);
	REQUIRE(dev);
	CHECK(dev->reached.partners(OperatorId{1}) == Coalition::of({1, 2}));
	CHECK_FALSE(solver.find_dominating(all, {}, CoalitionStructure::grand(2)));
	// A lone deviation only loses the relay.
	CHECK_FALSE(solver.dominated_via(all, {}, CoalitionStructure::grand(2), Coalition::of({1})));
}

TEST_CASE("history blocks a revisit at the same utility only")
{
	cfg::History h(2);
	const std::vector<Coalition> pair{Coalition::of({1, 2})};
	h.record(OperatorId{1}, pair, 10.0);
	CHECK(h.blocks(OperatorId{1}, pair, 10.0));
	CHECK_FALSE(h.blocks(OperatorId{1}, pair, 11.0));
	CHECK_FALSE(h.blocks(OperatorId{2}, pair, 10.0));
	CHECK_FALSE(h.blocks(OperatorId{1}, {Coalition::of({1})}, 10.0));
	CHECK(h.size(OperatorId{1}) == 1);
}

TEST_CASE("formation stays alone when cooperation never pays")
{
	const auto inst = mutual_relays();
	const auto r = cfg::run_cfg(inst, econ(1e6), 1, full_band());
	CHECK(r.converged);
	CHECK(r.rounds == 1);
	CHECK(r.accepted_moves == 0);
	CHECK(r.outcome.structure == CoalitionStructure::singletons(2));
	const auto v = cfg::run_variant_merge_only(inst, econ(1e6), 1, full_band());
	CHECK(v.outcome.structure == CoalitionStructure::singletons(2));
}

TEST_CASE("formation pairs operators that both gain")
{
	const auto inst = mutual_relays();
	const auto r = cfg::run_cfg(inst, econ(5.0), 1, full_band());
	CHECK(r.converged);
	CHECK(r.outcome.structure.partners(OperatorId{1}) == Coalition::of({1, 2}));
	CHECK(r.outcome.utility(OperatorId{2}) == doctest::Approx(2365.0));
}

TEST_CASE("merge-only reaches the grand coalition when every merge pays")
{
	const auto inst = all_pairs_relays(4);
	const auto v = cfg::run_variant_merge_only(inst, econ(0.0), 3, full_band());
	CHECK(v.outcome.structure == CoalitionStructure::grand(4));
	// The grand coalition is best for every operator among all partitions.
	cfg::StructureEvaluator eval(inst, econ(0.0), 3, full_band());
	const auto best = eval.evaluate(CoalitionStructure::grand(4)).utilities;
	for (const auto& p : cfg::enumerate_partitions(4)) {
		const auto& u = eval.evaluate(p).utilities;
		for (std::size_t h = 0; h < 4; ++h) {
			CHECK(u[h] <= best[h] + 1e-9);
		}
	}
}

TEST_CASE("non-cooperative baseline is the singleton evaluation")
{
	harness::ScenarioConfig config;
	config.radio.bandwidth = 1000.0;
	const auto inst = harness::generate_scenario(config, 9);
	const auto r = cfg::run_non_cooperative(inst, config.econ, 9, config.game());
	const auto direct = cfg::evaluate_structure(CoalitionStructure::singletons(4), inst, config.econ, 9, config.game());
	CHECK(r.outcome.structure == CoalitionStructure::singletons(4));
	CHECK(r.outcome.utilities == direct.utilities);
}

TEST_CASE("property: formation outcomes on random instances")
{
	harness::ScenarioConfig config;
	config.operators = 3;
	config.devices_min = 2;
	config.devices_max = 4;
	config.radio.bandwidth = 1000.0;
	for (std::uint64_t seed = 1; seed <= 8; ++seed) {
		CAPTURE(seed);
		const auto inst = harness::generate_scenario(config, seed);
		cfg::StructureEvaluator eval(inst, config.econ, seed, config.game());
		const auto r = cfg::run_cfg(eval, seed, config.formation());
		CHECK(r.converged);
		CHECK_NOTHROW(r.outcome.structure.validate(3));
		CHECK(r.outcome.utilities == eval.evaluate(r.outcome.structure).utilities);

		const auto v = cfg::run_variant_merge_only(inst, config.econ, seed, config.game());
		CHECK(v.outcome.structure.is_partition());
		const auto solo = cfg::run_non_cooperative(inst, config.econ, seed, config.game());
		// Merges only happen when every member strictly gains.
		for (std::size_t h = 0; h < 3; ++h) {
			CHECK(v.outcome.utilities[h] >= solo.outcome.utilities[h] - 1e-9);
		}

		const auto again = cfg::evaluate_structure(r.outcome.structure, inst, config.econ, seed, config.game());
		CHECK(again.utilities == r.outcome.utilities);
	}
}
