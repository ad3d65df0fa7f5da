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

#ifndef LCG_ROUTING_HPP
#define LCG_ROUTING_HPP

#include <lcg/common.hpp>
#include <lcg/net_model.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace lcg::routing {

struct Edge
{
	std::size_t tail{0};
	std::size_t head{0};
	double capacity{0.0};  ///< bit/s
};

/// Directed link graph over device indices 0..node_count()-1. No self-loops
/// and no parallel edges.
class LinkGraph
{
public:
	explicit LinkGraph(std::size_t node_count = 0);

	/// Returns the new edge index. Throws std::invalid_argument on a
	/// self-loop, unknown endpoint, negative capacity or duplicate edge.
	std::size_t add_edge(std::size_t tail, std::size_t head, double capacity);

	std::size_t node_count() const { return node_count_; }
	std::size_t edge_count() const { return edges_.size(); }
	const std::vector<Edge>& edges() const { return edges_; }
	const Edge& edge(std::size_t e) const { return edges_.at(e); }

	std::optional<std::size_t> find_edge(std::size_t tail, std::size_t head) const;

	/// Edge indices leaving / entering v.
	const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
	const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_.at(v); }

	/// Copy with every edge incident to v removed. Other capacities are kept.
	LinkGraph without_node(std::size_t v) const;

	/// Copy with all capacities multiplied by k.
	LinkGraph scaled(double k) const;

private:
	std::size_t node_count_;
	std::vector<Edge> edges_;
	std::vector<std::vector<std::size_t>> out_;
	std::vector<std::vector<std::size_t>> in_;
};

/// Per-edge, per-flow rates f_(i,j)(l) and the achieved rate r(l) of each flow.
class FlowAssignment
{
public:
	FlowAssignment() = default;
	FlowAssignment(std::size_t edge_count, std::size_t flow_count);

	std::size_t edge_count() const { return edge_count_; }
	std::size_t flow_count() const { return flow_count_; }

	double rate(std::size_t edge, std::size_t flow) const { return rates_[edge * flow_count_ + flow]; }
	double& rate(std::size_t edge, std::size_t flow) { return rates_[edge * flow_count_ + flow]; }

	double achieved(std::size_t flow) const { return achieved_.at(flow); }
	double& achieved(std::size_t flow) { return achieved_.at(flow); }
	const std::vector<double>& achieved_rates() const { return achieved_; }

	/// Sum over flows on one edge.
	double load(std::size_t edge) const;

	/// Sum of achieved rates.
	double total() const;

private:
	std::size_t edge_count_{0};
	std::size_t flow_count_{0};
	std::vector<double> rates_;
	std::vector<double> achieved_;
};

/// Diagnostics of one route_flows call.
struct SolveInfo
{
	std::size_t augmentations{0};
	bool certified{false};  ///< the augmenting solution carried an optimality certificate
	bool used_lp{false};    ///< the LP fallback produced the returned assignment
};

/// Maximizes the total achieved rate over all flows subject to flow
/// conservation, link capacities and demand caps. Flows are splittable.
/// Every result passes audit() before it is returned.
FlowAssignment route_flows(const LinkGraph& graph, std::span<const net::FlowSession> flows,
                           SolveInfo* info = nullptr);

/// Exact single-commodity max-flow value, ignoring the demand. Independent
/// widest-augmenting-path implementation on a dense residual matrix.
double max_flow_oracle(const LinkGraph& graph, const net::FlowSession& flow);

/// Sum of achieved rates of the flows sourced at device i.
double device_payoff(DeviceId i, const FlowAssignment& assignment, std::span<const net::FlowSession> flows);

/// Sum of achieved rates of the flows that terminate at device i.
double received_rate(DeviceId i, const FlowAssignment& assignment, std::span<const net::FlowSession> flows);

/// Total achieved rate with j present minus total achieved rate with j's
/// edges removed. Throws std::invalid_argument if j is a flow endpoint.
double relay_payoff(DeviceId j, const LinkGraph& graph, std::span<const net::FlowSession> flows);

/// Raised when a flow assignment violates a feasibility invariant.
class AuditFailure : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

/// Absolute slack of the feasibility audit, in bit/s. Sums over many terms
/// additionally get a few ulps of their own magnitude.
inline constexpr double kAuditSlack = 1e-9;

/// Checks non-negativity, source/destination balance, intermediate
/// conservation, link capacity, the demand cap, and that no unsatisfied
/// flow still has an augmenting path. Throws AuditFailure.
void audit(const LinkGraph& graph, std::span<const net::FlowSession> flows, const FlowAssignment& assignment);

/// Process-wide count of audits passed and failed (monotone, thread-safe).
struct AuditCounters
{
	std::uint64_t passed{0};
	std::uint64_t failed{0};
	/// Largest constraint violation among passed audits, in bit/s.
	double worst_violation{0.0};
};
AuditCounters audit_counters();

/// CSV with header "tail,head,flow,rate_bps"; one row per positive rate,
/// edges in graph order, flows ascending.
void write_assignment_csv(std::ostream& os, const LinkGraph& graph, const FlowAssignment& assignment);

} // namespace lcg::routing

#endif // LCG_ROUTING_HPP
