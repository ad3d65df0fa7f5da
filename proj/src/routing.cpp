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

#include <lcg/routing.hpp>
#include <lcg/simplex.hpp>

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace lcg::routing {

namespace {

// Residual amounts at or below this are treated as zero by the solver.
constexpr double kEps = 1e-10;
constexpr std::size_t kMaxAugmentations = 20000;

std::atomic<std::uint64_t> g_audits_passed{0};
std::atomic<std::uint64_t> g_audits_failed{0};
std::atomic<double> g_audit_worst{0.0};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_flows(const LinkGraph& g, std::span<const net::FlowSession> flows)
{
	for (const auto& f : flows) {
		if (f.source.index() >= g.node_count() || f.destination.index() >= g.node_count()) {
			throw std::invalid_argument("flow endpoint is not a node of the graph");
		}
		if (f.source == f.destination) {
			throw std::invalid_argument("flow source equals destination");
		}
		if (!(f.demand >= 0.0)) {
			throw std::invalid_argument("flow demand must be non-negative");
		}
	}
}

struct Arc
{
	std::size_t edge;
	bool forward;
};

// Working state of the augmenting-path solver.
class Augmenter
{
public:
	Augmenter(const LinkGraph& g, std::span<const net::FlowSession> flows)
		: g_(g), flows_(flows), a_(g.edge_count(), flows.size()), rem_(g.edge_count())
	{
		for (std::size_t e = 0; e < g.edge_count(); ++e) {
			rem_[e] = g.edge(e).capacity;
		}
	}

	// Seeds the state from an existing feasible assignment.
	void load(const FlowAssignment& a)
	{
		a_ = a;
		for (std::size_t e = 0; e < g_.edge_count(); ++e) {
			rem_[e] = std::max(0.0, g_.edge(e).capacity - a.load(e));
		}
	}

	bool unsatisfied(std::size_t l) const { return a_.achieved(l) < flows_[l].demand - kEps; }

	// Round-robin: each pass gives every unsatisfied flow one augmentation.
	std::size_t run()
	{
		std::size_t count = 0;
		bool progress = true;
		while (progress && count < kMaxAugmentations) {
			progress = false;
			for (std::size_t l = 0; l < flows_.size(); ++l) {
				if (unsatisfied(l) && augment(l)) {
					progress = true;
					++count;
				}
			}
		}
		return count;
	}

	// Nodes reachable from s(l) in flow l's residual graph.
	std::vector<char> reachable(std::size_t l) const
	{
		std::vector<char> seen(g_.node_count(), 0);
		std::vector<std::size_t> stack{flows_[l].source.index()};
		seen[stack.back()] = 1;
		while (!stack.empty()) {
			const std::size_t u = stack.back();
			stack.pop_back();
			for (std::size_t e : g_.out_edges(u)) {
				const std::size_t w = g_.edge(e).head;
				if (!seen[w] && rem_[e] > kEps) {
					seen[w] = 1;
					stack.push_back(w);
				}
			}
			for (std::size_t e : g_.in_edges(u)) {
				const std::size_t w = g_.edge(e).tail;
				if (!seen[w] && a_.rate(e, l) > kEps) {
					seen[w] = 1;
					stack.push_back(w);
				}
			}
		}
		return seen;
	}

	// Weak-duality bound: every path of an unsatisfied flow crosses its own
	// residual cut, so the union of those cuts plus the demands of the
	// satisfied flows bounds the total from above.
	bool certified() const
	{
		std::vector<char> in_cut(g_.edge_count(), 0);
		double bound = 0.0;
		for (std::size_t l = 0; l < flows_.size(); ++l) {
			if (!unsatisfied(l)) {
				bound += flows_[l].demand;
				continue;
			}
			const auto seen = reachable(l);
			for (std::size_t e = 0; e < g_.edge_count(); ++e) {
				const Edge& ed = g_.edge(e);
				if (seen[ed.tail] && !seen[ed.head] && !in_cut[e]) {
					in_cut[e] = 1;
					bound += ed.capacity;
				}
			}
		}
		return a_.total() >= bound - 1e-9 * (1.0 + bound);
	}

	FlowAssignment& result() { return a_; }

private:
	// One shortest augmenting path for flow l; among shortest paths the
	// lexicographically smallest node sequence wins.
	bool augment(std::size_t l)
	{
		const std::size_t n = g_.node_count();
		const std::size_t s = flows_[l].source.index();
		const std::size_t t = flows_[l].destination.index();

		dist_.assign(n, kNone);
		dist_[t] = 0;
		std::deque<std::size_t> queue{t};
		while (!queue.empty() && dist_[s] == kNone) {
			const std::size_t v = queue.front();
			queue.pop_front();
			// Residual arcs u -> v.
			for (std::size_t e : g_.in_edges(v)) {
				const std::size_t u = g_.edge(e).tail;
				if (dist_[u] == kNone && rem_[e] > kEps) {
					dist_[u] = dist_[v] + 1;
					queue.push_back(u);
				}
			}
			for (std::size_t e : g_.out_edges(v)) {
				const std::size_t u = g_.edge(e).head;
				if (dist_[u] == kNone && a_.rate(e, l) > kEps) {
					dist_[u] = dist_[v] + 1;
					queue.push_back(u);
				}
			}
		}
		if (dist_[s] == kNone) {
			return false;
		}

		path_.clear();
		double amount = flows_[l].demand - a_.achieved(l);
		for (std::size_t u = s; u != t;) {
			std::size_t next = kNone;
			Arc arc{kNone, true};
			for (std::size_t e : g_.out_edges(u)) {
				const std::size_t w = g_.edge(e).head;
				if (rem_[e] > kEps && dist_[w] + 1 == dist_[u] && (next == kNone || w < next)) {
					next = w;
					arc = Arc{e, true};
				}
			}
			for (std::size_t e : g_.in_edges(u)) {
				const std::size_t w = g_.edge(e).tail;
				if (a_.rate(e, l) > kEps && dist_[w] + 1 == dist_[u] && (next == kNone || w < next)) {
					next = w;
					arc = Arc{e, false};
				}
			}
			path_.push_back(arc);
			amount = std::min(amount, arc.forward ? rem_[arc.edge] : a_.rate(arc.edge, l));
			u = next;
		}
		if (!(amount > kEps)) {
			return false;
		}
		for (const Arc& arc : path_) {
			if (arc.forward) {
				rem_[arc.edge] -= amount;
				a_.rate(arc.edge, l) += amount;
			} else {
				a_.rate(arc.edge, l) -= amount;
				rem_[arc.edge] += amount;
			}
		}
		a_.achieved(l) += amount;
		return true;
	}

	const LinkGraph& g_;
	std::span<const net::FlowSession> flows_;
	FlowAssignment a_;
	std::vector<double> rem_;
	std::vector<std::size_t> dist_;
	std::vector<Arc> path_;
};

// Reachability over edges with positive capacity, forwards from `from` or
// backwards to `to`.
std::vector<char> reach(const LinkGraph& g, std::size_t start, bool forward)
{
	std::vector<char> seen(g.node_count(), 0);
	std::vector<std::size_t> stack{start};
	seen[start] = 1;
	while (!stack.empty()) {
		const std::size_t u = stack.back();
		stack.pop_back();
		for (std::size_t e : forward ? g.out_edges(u) : g.in_edges(u)) {
			const Edge& ed = g.edge(e);
			const std::size_t w = forward ? ed.head : ed.tail;
			if (!seen[w] && ed.capacity > 0.0) {
				seen[w] = 1;
				stack.push_back(w);
			}
		}
	}
	return seen;
}

// Exact arc-formulation LP. Intermediate nodes may absorb but not create
// flow, and the objective counts arrivals at each destination, so any
// optimum decomposes into source-destination paths with the same value.
FlowAssignment solve_lp(const LinkGraph& g, std::span<const net::FlowSession> flows)
{
	const std::size_t L = flows.size();
	const std::size_t E = g.edge_count();
	double scale = 0.0;
	for (const auto& ed : g.edges()) {
		scale = std::max(scale, ed.capacity);
	}
	for (const auto& f : flows) {
		scale = std::max(scale, f.demand);
	}
	FlowAssignment out(E, L);
	if (!(scale > 0.0)) {
		return out;
	}

	// Variables: useful (edge, flow) pairs.
	std::vector<std::size_t> var(E * L, kNone);
	std::vector<std::pair<std::size_t, std::size_t>> vars;
	for (std::size_t l = 0; l < L; ++l) {
		const std::size_t s = flows[l].source.index();
		const std::size_t t = flows[l].destination.index();
		const auto from_s = reach(g, s, true);
		const auto to_t = reach(g, t, false);
		for (std::size_t e = 0; e < E; ++e) {
			const Edge& ed = g.edge(e);
			if (ed.capacity > 0.0 && ed.tail != t && ed.head != s && from_s[ed.tail] && to_t[ed.head]) {
				var[e * L + l] = vars.size();
				vars.emplace_back(e, l);
			}
		}
	}
	if (vars.empty()) {
		return out;
	}

	lp::Problem p;
	p.cols = vars.size();
	p.c.assign(p.cols, 0.0);
	std::vector<std::vector<std::pair<std::size_t, double>>> rows;
	std::vector<double> rhs;

	for (std::size_t e = 0; e < E; ++e) {
		std::vector<std::pair<std::size_t, double>> row;
		for (std::size_t l = 0; l < L; ++l) {
			if (var[e * L + l] != kNone) {
				row.emplace_back(var[e * L + l], 1.0);
			}
		}
		if (!row.empty()) {
			rows.push_back(std::move(row));
			rhs.push_back(g.edge(e).capacity / scale);
		}
	}
	for (std::size_t l = 0; l < L; ++l) {
		const std::size_t s = flows[l].source.index();
		const std::size_t t = flows[l].destination.index();
		for (std::size_t v = 0; v < g.node_count(); ++v) {
			if (v == t) {
				continue;
			}
			std::vector<std::pair<std::size_t, double>> row;
			for (std::size_t e : g.out_edges(v)) {
				if (var[e * L + l] != kNone) {
					row.emplace_back(var[e * L + l], 1.0);
				}
			}
			if (row.empty()) {
				continue;
			}
			if (v != s) {
				for (std::size_t e : g.in_edges(v)) {
					if (var[e * L + l] != kNone) {
						row.emplace_back(var[e * L + l], -1.0);
					}
				}
			}
			rows.push_back(std::move(row));
			rhs.push_back(v == s ? flows[l].demand / scale : 0.0);
		}
		for (std::size_t e : g.in_edges(t)) {
			if (var[e * L + l] != kNone) {
				p.c[var[e * L + l]] = 1.0;
			}
		}
	}
	p.rows = rows.size();
	p.a.assign(p.rows * p.cols, 0.0);
	for (std::size_t r = 0; r < rows.size(); ++r) {
		for (auto [c, v] : rows[r]) {
			p.a[r * p.cols + c] = v;
		}
	}
	p.b = std::move(rhs);
	const lp::Solution sol = lp::maximize(p);

	// Peel source-destination paths off each flow's arrivals, then insert
	// them into a fresh assignment without exceeding any capacity.
	std::vector<double> x(E * L, 0.0);
	for (std::size_t k = 0; k < vars.size(); ++k) {
		x[vars[k].first * L + vars[k].second] = sol.x[k] * scale;
	}
	std::vector<double> rem(E);
	for (std::size_t e = 0; e < E; ++e) {
		rem[e] = g.edge(e).capacity;
	}
	const double tiny = 1e-12 * scale;
	for (std::size_t l = 0; l < L; ++l) {
		const std::size_t s = flows[l].source.index();
		const std::size_t t = flows[l].destination.index();
		for (std::size_t guard = 0; guard <= vars.size(); ++guard) {
			// Backward DFS from t to s over positive x.
			std::vector<std::size_t> via(g.node_count(), kNone);
			std::vector<char> seen(g.node_count(), 0);
			std::vector<std::size_t> stack{t};
			seen[t] = 1;
			while (!stack.empty() && !seen[s]) {
				const std::size_t v = stack.back();
				stack.pop_back();
				for (std::size_t e : g.in_edges(v)) {
					const std::size_t u = g.edge(e).tail;
					if (!seen[u] && x[e * L + l] > tiny) {
						seen[u] = 1;
						via[u] = e;
						stack.push_back(u);
					}
				}
			}
			if (!seen[s]) {
				break;
			}
			double peel = std::numeric_limits<double>::infinity();
			double amount = flows[l].demand - out.achieved(l);
			for (std::size_t u = s; u != t; u = g.edge(via[u]).head) {
				peel = std::min(peel, x[via[u] * L + l]);
				amount = std::min(amount, rem[via[u]]);
			}
			amount = std::min(amount, peel);
			for (std::size_t u = s; u != t; u = g.edge(via[u]).head) {
				x[via[u] * L + l] -= peel;
			}
			if (amount > 0.0) {
				for (std::size_t u = s; u != t; u = g.edge(via[u]).head) {
					rem[via[u]] -= amount;
					out.rate(via[u], l) += amount;
				}
				out.achieved(l) += amount;
			}
		}
	}
	return out;
}

std::string describe(const char* what, std::size_t flow, std::size_t where, double value, double limit)
{
	std::ostringstream os;
	os.precision(17);
	os << "flow audit: " << what << " (flow " << flow << ", at " << where << "): " << value << " vs " << limit;
	return os.str();
}

// Returns the largest violation seen (bit/s), zero when every constraint
// holds exactly.
double audit_impl(const LinkGraph& g, std::span<const net::FlowSession> flows, const FlowAssignment& a)
{
	double worst = 0.0;
	const std::size_t E = g.edge_count();
	const std::size_t L = flows.size();
	if (a.edge_count() != E || a.flow_count() != L) {
		throw AuditFailure("flow audit: assignment dimensions do not match the graph");
	}
	auto slack = [](double magnitude) { return kAuditSlack + 8.0 * DBL_EPSILON * magnitude; };

	for (std::size_t e = 0; e < E; ++e) {
		double load = 0.0;
		for (std::size_t l = 0; l < L; ++l) {
			const double f = a.rate(e, l);
			if (!std::isfinite(f) || f < -kAuditSlack) {
				throw AuditFailure(describe("negative rate", l, e, f, 0.0));
			}
			worst = std::max(worst, -f);
			load += f;
		}
		const double cap = g.edge(e).capacity;
		if (load > cap + slack(cap)) {
			throw AuditFailure(describe("capacity exceeded", L, e, load, cap));
		}
		worst = std::max(worst, load - cap);
	}

	std::vector<double> net(g.node_count());
	std::vector<double> mag(g.node_count());
	for (std::size_t l = 0; l < L; ++l) {
		const double r = a.achieved(l);
		const double d = flows[l].demand;
		if (!std::isfinite(r) || r < -kAuditSlack) {
			throw AuditFailure(describe("negative achieved rate", l, 0, r, 0.0));
		}
		if (r > d + slack(d)) {
			throw AuditFailure(describe("demand exceeded", l, 0, r, d));
		}
		worst = std::max(worst, r - d);
		std::fill(net.begin(), net.end(), 0.0);
		std::fill(mag.begin(), mag.end(), 0.0);
		for (std::size_t e = 0; e < E; ++e) {
			const double f = a.rate(e, l);
			net[g.edge(e).tail] += f;
			net[g.edge(e).head] -= f;
			mag[g.edge(e).tail] += std::abs(f);
			mag[g.edge(e).head] += std::abs(f);
		}
		const std::size_t s = flows[l].source.index();
		const std::size_t t = flows[l].destination.index();
		for (std::size_t v = 0; v < g.node_count(); ++v) {
			const double expect = v == s ? r : v == t ? -r : 0.0;
			if (std::abs(net[v] - expect) > slack(mag[v] + std::abs(r))) {
				throw AuditFailure(describe(v == s || v == t ? "endpoint balance" : "conservation", l, v,
				                            net[v], expect));
			}
			worst = std::max(worst, std::abs(net[v] - expect));
		}
	}

	// Maximality: an unsatisfied flow has no augmenting path left.
	Augmenter probe(g, flows);
	probe.load(a);
	for (std::size_t l = 0; l < L; ++l) {
		if (a.achieved(l) < flows[l].demand - 1e-7 * (1.0 + flows[l].demand)) {
			const auto seen = probe.reachable(l);
			if (seen[flows[l].destination.index()]) {
				throw AuditFailure(describe("unsatisfied flow with an augmenting path", l, 0, a.achieved(l),
				                            flows[l].demand));
			}
		}
	}
	return worst;
}

} // namespace

LinkGraph::LinkGraph(std::size_t node_count) : node_count_(node_count), out_(node_count), in_(node_count) {}

std::size_t LinkGraph::add_edge(std::size_t tail, std::size_t head, double capacity)
{
	if (tail >= node_count_ || head >= node_count_) {
		throw std::invalid_argument("edge endpoint out of range");
	}
	if (tail == head) {
		throw std::invalid_argument("self-loops are not allowed");
	}
	if (!(capacity >= 0.0) || !std::isfinite(capacity)) {
		throw std::invalid_argument("edge capacity must be finite and non-negative");
	}
	if (find_edge(tail, head)) {
		throw std::invalid_argument("duplicate edge");
	}
	const std::size_t e = edges_.size();
	edges_.push_back(Edge{tail, head, capacity});
	out_[tail].push_back(e);
	in_[head].push_back(e);
	return e;
}

std::optional<std::size_t> LinkGraph::find_edge(std::size_t tail, std::size_t head) const
{
	if (tail >= node_count_) {
		return std::nullopt;
	}
	for (std::size_t e : out_[tail]) {
		if (edges_[e].head == head) {
			return e;
		}
	}
	return std::nullopt;
}

LinkGraph LinkGraph::without_node(std::size_t v) const
{
	LinkGraph g(node_count_);
	for (const Edge& e : edges_) {
		if (e.tail != v && e.head != v) {
			g.add_edge(e.tail, e.head, e.capacity);
		}
	}
	return g;
}

LinkGraph LinkGraph::scaled(double k) const
{
	LinkGraph g(node_count_);
	for (const Edge& e : edges_) {
		g.add_edge(e.tail, e.head, e.capacity * k);
	}
	return g;
}

FlowAssignment::FlowAssignment(std::size_t edge_count, std::size_t flow_count)
	: edge_count_(edge_count), flow_count_(flow_count), rates_(edge_count * flow_count, 0.0),
	  achieved_(flow_count, 0.0)
{
}

double FlowAssignment::load(std::size_t edge) const
{
	double sum = 0.0;
	for (std::size_t l = 0; l < flow_count_; ++l) {
		sum += rate(edge, l);
	}
	return sum;
}

double FlowAssignment::total() const
{
	double sum = 0.0;
	for (double r : achieved_) {
		sum += r;
	}
	return sum;
}

FlowAssignment route_flows(const LinkGraph& graph, std::span<const net::FlowSession> flows, SolveInfo* info)
{
	check_flows(graph, flows);
	SolveInfo local;

	Augmenter aug(graph, flows);
	local.augmentations = aug.run();
	local.certified = aug.certified();
	FlowAssignment best = std::move(aug.result());

	if (!local.certified) {
		Augmenter top_up(graph, flows);
		top_up.load(solve_lp(graph, flows));
		local.augmentations += top_up.run();
		if (top_up.result().total() > best.total() + 1e-9 * (1.0 + best.total())) {
			best = std::move(top_up.result());
			local.used_lp = true;
		}
	}

	audit(graph, flows, best);
	if (info) {
		*info = local;
	}
	return best;
}

double max_flow_oracle(const LinkGraph& graph, const net::FlowSession& flow)
{
	const std::size_t n = graph.node_count();
	const std::size_t s = flow.source.index();
	const std::size_t t = flow.destination.index();
	if (s >= n || t >= n) {
		throw std::invalid_argument("flow endpoint is not a node of the graph");
	}
	std::vector<double> res(n * n, 0.0);
	for (const Edge& e : graph.edges()) {
		res[e.tail * n + e.head] += e.capacity;
	}
	double total = 0.0;
	for (;;) {
		// Widest path by a Dijkstra-style label setting.
		std::vector<double> width(n, 0.0);
		std::vector<std::size_t> prev(n, kNone);
		std::vector<char> done(n, 0);
		width[s] = std::numeric_limits<double>::infinity();
		for (;;) {
			std::size_t u = kNone;
			for (std::size_t v = 0; v < n; ++v) {
				if (!done[v] && width[v] > 0.0 && (u == kNone || width[v] > width[u])) {
					u = v;
				}
			}
			if (u == kNone || u == t) {
				break;
			}
			done[u] = 1;
			for (std::size_t v = 0; v < n; ++v) {
				const double w = std::min(width[u], res[u * n + v]);
				if (!done[v] && w > width[v]) {
					width[v] = w;
					prev[v] = u;
				}
			}
		}
		const double push = width[t];
		if (!(push > 1e-12 * (1.0 + total))) {
			break;
		}
		for (std::size_t v = t; v != s; v = prev[v]) {
			res[prev[v] * n + v] -= push;
			res[v * n + prev[v]] += push;
		}
		total += push;
	}
	return total;
}

double device_payoff(DeviceId i, const FlowAssignment& assignment, std::span<const net::FlowSession> flows)
{
	double sum = 0.0;
	for (std::size_t l = 0; l < flows.size(); ++l) {
		if (flows[l].source == i) {
			sum += assignment.achieved(l);
		}
	}
	return sum;
}

double received_rate(DeviceId i, const FlowAssignment& assignment, std::span<const net::FlowSession> flows)
{
	double sum = 0.0;
	for (std::size_t l = 0; l < flows.size(); ++l) {
		if (flows[l].destination == i) {
			sum += assignment.achieved(l);
		}
	}
	return sum;
}

double relay_payoff(DeviceId j, const LinkGraph& graph, std::span<const net::FlowSession> flows)
{
	for (const auto& f : flows) {
		if (f.source == j || f.destination == j) {
			throw std::invalid_argument("relay payoff requested for a flow endpoint");
		}
	}
	if (j.index() >= graph.node_count()) {
		throw std::invalid_argument("relay is not a node of the graph");
	}
	const double with = route_flows(graph, flows).total();
	const double without = route_flows(graph.without_node(j.index()), flows).total();
	return std::max(0.0, with - without);
}

void audit(const LinkGraph& graph, std::span<const net::FlowSession> flows, const FlowAssignment& assignment)
{
	double worst = 0.0;
	try {
		worst = audit_impl(graph, flows, assignment);
	} catch (const AuditFailure&) {
		g_audits_failed.fetch_add(1, std::memory_order_relaxed);
		throw;
	}
	g_audits_passed.fetch_add(1, std::memory_order_relaxed);
	double seen = g_audit_worst.load(std::memory_order_relaxed);
	while (worst > seen && !g_audit_worst.compare_exchange_weak(seen, worst, std::memory_order_relaxed)) {
	}
}

AuditCounters audit_counters()
{
	return AuditCounters{g_audits_passed.load(), g_audits_failed.load(), g_audit_worst.load()};
}

void write_assignment_csv(std::ostream& os, const LinkGraph& graph, const FlowAssignment& assignment)
{
	os << "tail,head,flow,rate_bps\n";
	const auto old_precision = os.precision(17);
	for (std::size_t e = 0; e < graph.edge_count(); ++e) {
		for (std::size_t l = 0; l < assignment.flow_count(); ++l) {
			const double f = assignment.rate(e, l);
			if (f > 0.0) {
				os << graph.edge(e).tail << ',' << graph.edge(e).head << ',' << l << ',' << f << '\n';
			}
		}
	}
	os.precision(old_precision);
}

} // namespace lcg::routing
