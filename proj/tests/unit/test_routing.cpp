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

#include <lcg/rng.hpp>
#include <lcg/routing.hpp>

#include <doctest.h>

#include <sstream>
#include <vector>

using namespace lcg;
using lcg::test::flow;
using lcg::test::graph;

namespace {

struct LpCase
{
	int nodes;
	std::vector<std::tuple<int, int, double>> edges;
	std::vector<std::tuple<int, int, double>> flows;
	double optimum;
};

const std::vector<LpCase> kLpCases = {
#include "lp_cases.inc"
};

std::vector<net::FlowSession> sessions(const std::vector<std::tuple<int, int, double>>& list)
{
	std::vector<net::FlowSession> out;
	for (auto [s, t, d] : list) {
		out.push_back(flow(static_cast<std::uint32_t>(out.size()), s, t, d));
	}
	return out;
}

routing::LinkGraph random_graph(Rng& rng, std::size_t n, double density)
{
	routing::LinkGraph g(n);
	for (std::size_t u = 0; u < n; ++u) {
		for (std::size_t v = 0; v < n; ++v) {
			if (u != v && rng.uniform() < density) {
				g.add_edge(u, v, rng.uniform(0.5, 20.0));
			}
		}
	}
	return g;
}

} // namespace

TEST_CASE("demand below capacity is met exactly")
{
	const auto g = graph(2, {{0, 1, 100.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 1, 15.0)};
	CHECK(routing::route_flows(g, f).achieved(0) == doctest::Approx(15.0));
}

TEST_CASE("demand above capacity is capped at the max flow")
{
	const auto g = graph(2, {{0, 1, 100.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 1, 150.0)};
	CHECK(routing::route_flows(g, f).achieved(0) == doctest::Approx(100.0));
}

TEST_CASE("diamond splits across both paths")
{
	const auto g = graph(4, {{0, 1, 10.0}, {1, 3, 10.0}, {0, 2, 10.0}, {2, 3, 10.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 3, 25.0)};
	const auto a = routing::route_flows(g, f);
	CHECK(a.achieved(0) == doctest::Approx(20.0));
	for (std::size_t e = 0; e < 4; ++e) {
		CHECK(a.rate(e, 0) == doctest::Approx(10.0));
	}
}

TEST_CASE("equal-length paths prefer the smaller node sequence")
{
	const auto g = graph(4, {{0, 2, 10.0}, {2, 3, 10.0}, {0, 1, 10.0}, {1, 3, 10.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 3, 4.0)};
	const auto a = routing::route_flows(g, f);
	CHECK(a.rate(*g.find_edge(0, 1), 0) == doctest::Approx(4.0));
	CHECK(a.rate(*g.find_edge(0, 2), 0) == 0.0);
}

TEST_CASE("disconnected flow gets zero")
{
	const auto g = graph(3, {{0, 1, 10.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 2, 5.0)};
	CHECK(routing::route_flows(g, f).achieved(0) == 0.0);
}

TEST_CASE("max-flow oracle examples")
{
	const auto diamond = graph(4, {{0, 1, 10.0}, {1, 3, 10.0}, {0, 2, 10.0}, {2, 3, 10.0}});
	CHECK(routing::max_flow_oracle(diamond, flow(0, 0, 3, 1.0)) == doctest::Approx(20.0));
	CHECK(routing::max_flow_oracle(graph(3, {{0, 1, 4.0}}), flow(0, 0, 2, 1.0)) == 0.0);
	const auto chain = graph(4, {{0, 1, 5.0}, {1, 2, 8.0}, {2, 3, 3.0}});
	CHECK(routing::max_flow_oracle(chain, flow(0, 0, 3, 1.0)) == doctest::Approx(3.0));
}

TEST_CASE("device payoff sums sourced flows")
{
	const auto g = graph(4, {{0, 1, 100.0}, {0, 2, 100.0}, {3, 1, 100.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 1, 10.0), flow(1, 0, 2, 12.0), flow(2, 3, 1, 15.0)};
	const auto a = routing::route_flows(g, f);
	CHECK(routing::device_payoff(DeviceId{0}, a, f) == doctest::Approx(22.0));
	CHECK(routing::device_payoff(DeviceId{3}, a, f) == doctest::Approx(15.0));
	CHECK(routing::device_payoff(DeviceId{1}, a, f) == 0.0);
	CHECK(routing::received_rate(DeviceId{1}, a, f) == doctest::Approx(25.0));
}

TEST_CASE("relay payoff examples")
{
	SUBCASE("disconnected relay")
	{
		const auto g = graph(3, {{0, 1, 10.0}});
		const std::vector<net::FlowSession> f{flow(0, 0, 1, 5.0)};
		CHECK(routing::relay_payoff(DeviceId{2}, g, f) == 0.0);
	}
	SUBCASE("only node on the second diamond path")
	{
		const auto g = graph(4, {{0, 1, 10.0}, {1, 3, 10.0}, {0, 2, 10.0}, {2, 3, 10.0}});
		const std::vector<net::FlowSession> f{flow(0, 0, 3, 20.0)};
		CHECK(routing::relay_payoff(DeviceId{2}, g, f) == doctest::Approx(10.0));
	}
	SUBCASE("unique path")
	{
		const auto g = graph(3, {{0, 1, 10.0}, {1, 2, 10.0}});
		const std::vector<net::FlowSession> f{flow(0, 0, 2, 10.0)};
		CHECK(routing::relay_payoff(DeviceId{1}, g, f) == doctest::Approx(10.0));
	}
	SUBCASE("endpoint is rejected")
	{
		const auto g = graph(2, {{0, 1, 10.0}});
		const std::vector<net::FlowSession> f{flow(0, 0, 1, 5.0)};
		CHECK_THROWS_AS(routing::relay_payoff(DeviceId{0}, g, f), std::invalid_argument);
	}
}

TEST_CASE("shared bottleneck needs a detour to reach the joint optimum")
{
	const auto g = graph(9, {{0, 2, 10}, {2, 3, 10}, {3, 1, 10}, {0, 4, 6}, {4, 7, 6}, {7, 8, 6}, {8, 1, 6},
	                         {5, 2, 10}, {3, 6, 10}});
	const std::vector<net::FlowSession> f{flow(0, 0, 1, 10.0), flow(1, 5, 6, 10.0)};
	const auto a = routing::route_flows(g, f);
	CHECK(a.total() == doctest::Approx(16.0));
}

TEST_CASE("independent components")
{
	const auto g = graph(7, {{0, 1, 10}, {1, 3, 10}, {0, 2, 10}, {2, 3, 10}, {4, 5, 7}, {5, 6, 7}});
	const std::vector<net::FlowSession> f{flow(0, 0, 3, 25.0), flow(1, 4, 6, 5.0)};
	CHECK(routing::route_flows(g, f).total() == doctest::Approx(25.0));
}

TEST_CASE("multi-flow optimum matches frozen LP values")
{
	for (std::size_t k = 0; k < kLpCases.size(); ++k) {
		CAPTURE(k);
		const auto& c = kLpCases[k];
		const auto g = graph(static_cast<std::size_t>(c.nodes), c.edges);
		const auto f = sessions(c.flows);
		CHECK(routing::route_flows(g, f).total() == doctest::Approx(c.optimum).epsilon(1e-7));
	}
}

TEST_CASE("single flow equals min(demand, max flow) on random graphs")
{
	Rng rng(7);
	for (int trial = 0; trial < 200; ++trial) {
		const std::size_t n = 2 + rng.index(7);
		const auto g = random_graph(rng, n, 0.4);
		const std::size_t s = rng.index(n);
		std::size_t t = rng.index(n - 1);
		t += t >= s ? 1 : 0;
		const std::vector<net::FlowSession> f{flow(0, s, t, rng.uniform(1.0, 40.0))};
		const double expect = std::min(f[0].demand, routing::max_flow_oracle(g, f[0]));
		CHECK(routing::route_flows(g, f).achieved(0) == doctest::Approx(expect).epsilon(1e-9));
	}
}

TEST_CASE("adding an edge never lowers the total")
{
	Rng rng(11);
	for (int trial = 0; trial < 150; ++trial) {
		const std::size_t n = 4 + rng.index(5);
		auto g = random_graph(rng, n, 0.3);
		std::vector<net::FlowSession> f;
		for (std::uint32_t l = 0; l < 3; ++l) {
			const std::size_t s = rng.index(n);
			std::size_t t = rng.index(n - 1);
			t += t >= s ? 1 : 0;
			f.push_back(flow(l, s, t, rng.uniform(1.0, 30.0)));
		}
		const double before = routing::route_flows(g, f).total();
		const std::size_t u = rng.index(n);
		std::size_t v = rng.index(n - 1);
		v += v >= u ? 1 : 0;
		if (!g.find_edge(u, v)) {
			g.add_edge(u, v, rng.uniform(0.5, 20.0));
		}
		CHECK(routing::route_flows(g, f).total() >= before - 1e-9);
	}
}

TEST_CASE("scaling capacities and demands scales the rates")
{
	Rng rng(13);
	for (int trial = 0; trial < 100; ++trial) {
		const std::size_t n = 4 + rng.index(5);
		const auto g = random_graph(rng, n, 0.35);
		std::vector<net::FlowSession> f;
		for (std::uint32_t l = 0; l < 2; ++l) {
			const std::size_t s = rng.index(n);
			std::size_t t = rng.index(n - 1);
			t += t >= s ? 1 : 0;
			f.push_back(flow(l, s, t, rng.uniform(1.0, 30.0)));
		}
		const double k = rng.uniform(0.01, 1000.0);
		auto fk = f;
		for (auto& x : fk) {
			x.demand *= k;
		}
		const auto a = routing::route_flows(g, f);
		const auto ak = routing::route_flows(g.scaled(k), fk);
		CHECK(ak.total() == doctest::Approx(k * a.total()).epsilon(1e-8));
	}
}

TEST_CASE("relay payoff is never negative")
{
	Rng rng(17);
	for (int trial = 0; trial < 100; ++trial) {
		const std::size_t n = 5 + rng.index(4);
		const auto g = random_graph(rng, n, 0.35);
		const std::vector<net::FlowSession> f{flow(0, 0, 1, rng.uniform(1, 30)), flow(1, 2, 3, rng.uniform(1, 30))};
		for (std::size_t j = 4; j < n; ++j) {
			CHECK(routing::relay_payoff(DeviceId{static_cast<std::uint32_t>(j)}, g, f) >= 0.0);
		}
	}
}

TEST_CASE("graph construction rejects malformed edges")
{
	routing::LinkGraph g(3);
	CHECK_THROWS_AS(g.add_edge(1, 1, 1.0), std::invalid_argument);
	CHECK_THROWS_AS(g.add_edge(0, 3, 1.0), std::invalid_argument);
	CHECK_THROWS_AS(g.add_edge(0, 1, -1.0), std::invalid_argument);
	g.add_edge(0, 1, 1.0);
	CHECK_THROWS_AS(g.add_edge(0, 1, 2.0), std::invalid_argument);
	CHECK(g.without_node(1).edge_count() == 0);
}

TEST_CASE("auditor rejects infeasible assignments")
{
	const auto g = graph(3, {{0, 1, 10.0}, {1, 2, 10.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 2, 8.0)};
	auto good = routing::route_flows(g, f);
	CHECK_NOTHROW(routing::audit(g, f, good));

	auto over = good;
	over.rate(0, 0) = 12.0;
	over.rate(1, 0) = 12.0;
	over.achieved(0) = 12.0;
	CHECK_THROWS_AS(routing::audit(g, f, over), routing::AuditFailure);

	auto leak = good;
	leak.rate(1, 0) = 5.0;
	CHECK_THROWS_AS(routing::audit(g, f, leak), routing::AuditFailure);

	auto lazy = routing::FlowAssignment(2, 1);
	CHECK_THROWS_AS(routing::audit(g, f, lazy), routing::AuditFailure);

	auto negative = good;
	negative.rate(0, 0) = -1.0;
	CHECK_THROWS_AS(routing::audit(g, f, negative), routing::AuditFailure);
}

TEST_CASE("assignment CSV lists positive rates")
{
	const auto g = graph(3, {{0, 1, 10.0}, {1, 2, 10.0}, {0, 2, 1.0}});
	const std::vector<net::FlowSession> f{flow(0, 0, 2, 1.0)};
	std::ostringstream os;
	routing::write_assignment_csv(os, g, routing::route_flows(g, f));
	CHECK(os.str() == "tail,head,flow,rate_bps\n0,2,0,1\n");
}
