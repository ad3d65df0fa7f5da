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

#ifndef LCG_TESTS_SUPPORT_HPP
#define LCG_TESTS_SUPPORT_HPP

#include <lcg/net_model.hpp>
#include <lcg/routing.hpp>

#include <cstdint>
#include <tuple>
#include <vector>

namespace lcg::test {

inline net::FlowSession flow(std::uint32_t id, std::size_t s, std::size_t t, double demand, std::uint32_t owner = 1)
{
	return net::FlowSession{FlowId{id}, OperatorId{owner}, DeviceId{static_cast<std::uint32_t>(s)},
	                        DeviceId{static_cast<std::uint32_t>(t)}, demand};
}

inline routing::LinkGraph graph(std::size_t n, const std::vector<std::tuple<int, int, double>>& edges)
{
	routing::LinkGraph g(n);
	for (auto [u, v, c] : edges) {
		g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), c);
	}
	return g;
}

inline net::Device device(std::uint32_t id, std::uint32_t owner, double x = 0.0, double y = 0.0)
{
	return net::Device{DeviceId{id}, OperatorId{owner}, net::Position{x, y}, 0.02};
}

/// Instance with hand-picked full-band capacities; `owners[i]` is the
/// operator of device i and `caps` lists the non-zero (tx, rx, bit/s).
inline net::NetworkInstance instance(std::size_t n_operators, const std::vector<std::uint32_t>& owners,
                                     std::vector<net::FlowSession> flows,
                                     const std::vector<std::tuple<int, int, double>>& caps)
{
	const std::size_t n = owners.size();
	std::vector<net::Device> devices;
	for (std::size_t i = 0; i < n; ++i) {
		devices.push_back(device(static_cast<std::uint32_t>(i), owners[i], 10.0 * static_cast<double>(i), 0.0));
	}
	std::vector<double> matrix(n * n, 0.0);
	for (auto [u, v, c] : caps) {
		matrix[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = c;
	}
	return net::NetworkInstance::with_link_capacities(n_operators, std::move(devices), std::move(flows),
	                                                  net::RadioParams{}, net::Area{}, std::move(matrix));
}

} // namespace lcg::test

#endif // LCG_TESTS_SUPPORT_HPP
