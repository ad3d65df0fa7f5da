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

#ifndef LCG_CGG_HPP
#define LCG_CGG_HPP

#include <lcg/coalition.hpp>
#include <lcg/common.hpp>
#include <lcg/net_model.hpp>
#include <lcg/routing.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lcg::cgg {

/// Transmission strategy (proposals sent) and relay strategy (proposals
/// accepted) of one device.
struct DeviceStrategy
{
	DeviceSet proposed;
	DeviceSet accepted;

	friend bool operator==(const DeviceStrategy&, const DeviceStrategy&) = default;
};

/// Out-neighbour bitmask per device; the agreed link set of a state.
using EdgeRows = std::vector<std::uint64_t>;

struct GameState
{
	std::vector<DeviceStrategy> strategies;

	/// Edge (i,j) exists iff i proposed to j, j accepted i, and j is a
	/// candidate neighbour of i.
	EdgeRows edges(const std::vector<DeviceSet>& adjacency) const;

	friend bool operator==(const GameState&, const GameState&) = default;
};

/// Every source proposes to its destination, which accepts.
GameState initial_state(const net::NetworkInstance& instance);

struct GameConfig
{
	net::BandShare band_share{net::BandShare::per_outdegree};
	std::size_t max_iterations{1000};
	/// Allow the consented link and relay extension moves in best responses.
	bool negotiated_moves{true};
	/// Remove idle, payoff-neutral links once the dynamics settle.
	bool prune{true};
	double tolerance{1e-9};
};

/// Link graph for an edge set. Under per-outdegree sharing every link of a
/// transmitter gets an equal slice of the band.
routing::LinkGraph build_graph(const net::NetworkInstance& instance, const EdgeRows& rows, net::BandShare share);

/// Routes flows on edge sets and caches the achieved rates by topology.
class Evaluator
{
public:
	Evaluator(const net::NetworkInstance& instance, net::BandShare share);

	const std::vector<double>& rates(const EdgeRows& rows);
	double total(const EdgeRows& rows);

	/// Sourced plus received rate for flow endpoints; for any other device,
	/// the total with it minus the total of the link graph formed without it.
	double payoff(std::size_t device, const EdgeRows& rows);

	/// Full assignment for one edge set (not cached).
	routing::FlowAssignment assignment(const EdgeRows& rows) const;

	void clear() { cache_.clear(); }
	std::size_t solves() const { return solves_; }

private:
	struct RowsHash
	{
		std::size_t operator()(const EdgeRows& rows) const noexcept;
	};

	const net::NetworkInstance& instance_;
	net::BandShare share_;
	std::unordered_map<EdgeRows, std::vector<double>, RowsHash> cache_;
	std::size_t solves_{0};
};

/// Edge set with every link incident to `device` removed.
EdgeRows without_device(const EdgeRows& rows, std::size_t device);

enum class MoveKind
{
	none,
	drop_proposal,    ///< actor withdraws its proposal to target
	add_proposal,     ///< actor proposes to target, which already accepts it
	accept,           ///< actor accepts target's proposal
	reject,           ///< actor revokes its acceptance of target
	consented_link,   ///< actor proposes to target, which agrees to accept
	relay_extension,  ///< actor -> target -> via, with every party agreeing
};

std::string to_string(MoveKind kind);

struct Move
{
	MoveKind kind{MoveKind::none};
	DeviceId actor;
	DeviceId target;
	DeviceId via;  ///< second hop of a relay extension

	std::string to_string() const;
};

struct BestResponse
{
	Move move;
	double old_payoff{0.0};
	double new_payoff{0.0};
	/// Strategy changes to apply; empty when the current strategy is kept.
	std::vector<std::pair<std::size_t, DeviceStrategy>> updates;

	bool changed() const { return !updates.empty(); }
};

/// Best response of device i with every other strategy fixed. Only strict
/// improvements beyond the tolerance replace the current strategy; among
/// equally good moves the first in target-id order wins.
BestResponse best_response(std::size_t i, const GameState& state, const std::vector<DeviceSet>& adjacency,
                           const net::NetworkInstance& instance, Evaluator& eval, const GameConfig& config);

struct TraceRow
{
	std::size_t iteration;
	std::size_t device;
	double old_payoff;
	double new_payoff;
	std::string move;
};

/// CSV with header "iteration,device,old_payoff,new_payoff,move".
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);

struct CggResult
{
	GameState state;
	std::size_t iterations{0};
	bool converged{false};    ///< stopped by a quiet iteration or met demands
	bool demands_met{false};
	std::size_t pruned_links{0};
	routing::LinkGraph graph;
	routing::FlowAssignment assignment;
};

/// Best-response dynamics from the direct-link state. One seeded random
/// permutation of the devices per iteration.
CggResult run_cgg(const net::NetworkInstance& instance, const cfg::CoalitionStructure& view, std::uint64_t seed,
                  const GameConfig& config = {}, std::vector<TraceRow>* trace = nullptr);

struct NashCheck
{
	bool is_nash{true};
	Move deviation;
	double old_payoff{0.0};
	double new_payoff{0.0};
};

/// Exhaustive check of every unilateral atomic change (drop or add one
/// proposal, flip one acceptance) of every device.
NashCheck verify_nash(const GameState& state, const net::NetworkInstance& instance,
                      const cfg::CoalitionStructure& view, const GameConfig& config = {});

} // namespace lcg::cgg

#endif // LCG_CGG_HPP
