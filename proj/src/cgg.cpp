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

#include <lcg/cgg.hpp>
#include <lcg/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lcg::cgg {

namespace {

constexpr std::uint64_t bit(std::size_t j)
{
	return std::uint64_t{1} << j;
}

bool has_edge(const EdgeRows& rows, std::size_t i, std::size_t j)
{
	return (rows[i] >> j) & 1U;
}

bool all_met(const net::NetworkInstance& instance, const std::vector<double>& rates, double tol)
{
	for (const auto& f : instance.flows()) {
		if (rates[f.id.index()] < f.demand - tol) {
			return false;
		}
	}
	return true;
}

// Flow endpoints whose flows are all satisfied already hold their maximum payoff.
bool saturated_endpoint(const net::NetworkInstance& instance, const std::vector<double>& rates, std::size_t i,
                        double tol)
{
	bool endpoint = false;
	for (const auto& f : instance.flows()) {
		if (f.source.index() == i || f.destination.index() == i) {
			endpoint = true;
			if (rates[f.id.index()] < f.demand - tol) {
				return false;
			}
		}
	}
	return endpoint;
}

bool touches_edges(const EdgeRows& rows, std::size_t i)
{
	if (rows[i] != 0) {
		return true;
	}
	for (std::uint64_t r : rows) {
		if ((r >> i) & 1U) {
			return true;
		}
	}
	return false;
}

// Devices that can still push flow towards one of `targets` along current links.
DeviceSet reaching(const EdgeRows& rows, DeviceSet targets)
{
	DeviceSet out = targets;
	bool grew = true;
	while (grew) {
		grew = false;
		for (std::size_t v = 0; v < rows.size(); ++v) {
			if (!out.contains(v) && (rows[v] & out.bits()) != 0) {
				out.insert(v);
				grew = true;
			}
		}
	}
	return out;
}

struct Candidate
{
	Move move;
	EdgeRows rows;
	std::vector<std::pair<std::size_t, DeviceStrategy>> updates;
	std::vector<std::size_t> consenting;  ///< other parties that must strictly gain
};

} // namespace

EdgeRows GameState::edges(const std::vector<DeviceSet>& adjacency) const
{
	EdgeRows rows(strategies.size(), 0);
	for (std::size_t i = 0; i < strategies.size(); ++i) {
		for (std::size_t j : strategies[i].proposed & adjacency[i]) {
			if (strategies[j].accepted.contains(i)) {
				rows[i] |= bit(j);
			}
		}
	}
	return rows;
}

GameState initial_state(const net::NetworkInstance& instance)
{
	GameState s;
	s.strategies.resize(instance.device_count());
	for (const auto& f : instance.flows()) {
		s.strategies[f.source.index()].proposed.insert(f.destination);
		s.strategies[f.destination.index()].accepted.insert(f.source);
	}
	return s;
}

routing::LinkGraph build_graph(const net::NetworkInstance& instance, const EdgeRows& rows, net::BandShare share)
{
	const std::size_t n = instance.device_count();
	if (rows.size() != n) {
		throw std::invalid_argument("edge rows do not match the device count");
	}
	routing::LinkGraph g(n);
	for (std::size_t i = 0; i < n; ++i) {
		const DeviceSet out{rows[i]};
		const double slice = share == net::BandShare::per_outdegree && !out.empty() ? 1.0 / double(out.size()) : 1.0;
		for (std::size_t j : out) {
			g.add_edge(i, j, instance.full_band_capacity(i, j) * slice);
		}
	}
	return g;
}

std::size_t Evaluator::RowsHash::operator()(const EdgeRows& rows) const noexcept
{
	std::uint64_t h = 0x84222325CBF29CE4ULL;
	for (std::uint64_t r : rows) {
		h = splitmix64(h ^ r);
	}
	return static_cast<std::size_t>(h);
}

Evaluator::Evaluator(const net::NetworkInstance& instance, net::BandShare share) : instance_(instance), share_(share)
{
}

const std::vector<double>& Evaluator::rates(const EdgeRows& rows)
{
	auto it = cache_.find(rows);
	if (it != cache_.end()) {
		return it->second;
	}
	++solves_;
	const auto a = assignment(rows);
	return cache_.emplace(rows, a.achieved_rates()).first->second;
}

double Evaluator::total(const EdgeRows& rows)
{
	const auto& r = rates(rows);
	return std::accumulate(r.begin(), r.end(), 0.0);
}

double Evaluator::payoff(std::size_t device, const EdgeRows& rows)
{
	bool endpoint = false;
	double own = 0.0;
	const auto& r = rates(rows);
	for (const auto& f : instance_.flows()) {
		if (f.source.index() == device || f.destination.index() == device) {
			endpoint = true;
			own += r[f.id.index()];
		}
	}
	if (endpoint) {
		return own;
	}
	const double with = total(rows);
	return with - total(without_device(rows, device));
}

routing::FlowAssignment Evaluator::assignment(const EdgeRows& rows) const
{
	return routing::route_flows(build_graph(instance_, rows, share_), instance_.flows());
}

EdgeRows without_device(const EdgeRows& rows, std::size_t device)
{
	EdgeRows out = rows;
	out[device] = 0;
	for (auto& r : out) {
		r &= ~bit(device);
	}
	return out;
}

std::string to_string(MoveKind kind)
{
	switch (kind) {
	case MoveKind::none: return "none";
	case MoveKind::drop_proposal: return "drop";
	case MoveKind::add_proposal: return "propose";
	case MoveKind::accept: return "accept";
	case MoveKind::reject: return "reject";
	case MoveKind::consented_link: return "link";
	case MoveKind::relay_extension: return "extend";
	}
	return "?";
}

std::string Move::to_string() const
{
	std::ostringstream os;
	os << cgg::to_string(kind);
	if (kind == MoveKind::none) {
		return os.str();
	}
	os << ' ' << actor << "->" << target;
	if (kind == MoveKind::relay_extension) {
		os << "->" << via;
	}
	return os.str();
}

BestResponse best_response(std::size_t i, const GameState& state, const std::vector<DeviceSet>& adjacency,
                           const net::NetworkInstance& instance, Evaluator& eval, const GameConfig& config)
{
	const double tol = config.tolerance;
	const EdgeRows rows = state.edges(adjacency);
	const std::vector<double> rates = eval.rates(rows);
	const DeviceId me{static_cast<std::uint32_t>(i)};

	BestResponse out;
	out.move.actor = me;
	out.old_payoff = eval.payoff(i, rows);
	out.new_payoff = out.old_payoff;

	// Negotiated moves are open to devices that carry an unsatisfied flow.
	DeviceSet wanted;
	bool is_endpoint = false;
	for (const auto& f : instance.flows()) {
		const bool unmet = rates[f.id.index()] < f.demand - tol;
		if (f.source.index() == i || f.destination.index() == i) {
			is_endpoint = true;
		}
		if (unmet && f.source.index() == i) {
			wanted.insert(f.destination);
		}
	}
	if (!is_endpoint) {
		// A relay fed by some link may extend towards any unmet destination.
		bool fed = false;
		for (std::size_t v = 0; v < rows.size(); ++v) {
			fed = fed || has_edge(rows, v, i);
		}
		if (fed) {
			for (const auto& f : instance.flows()) {
				if (rates[f.id.index()] < f.demand - tol) {
					wanted.insert(f.destination);
				}
			}
		}
	}
	const bool negotiate = config.negotiated_moves && !wanted.empty();
	DeviceSet useful;
	if (negotiate) {
		useful = reaching(rows, wanted).without(instance.endpoints()) | wanted;
	}

	const DeviceStrategy& mine = state.strategies[i];
	std::optional<Candidate> chosen;

	auto consider = [&](Candidate&& c) {
		const double v = eval.payoff(i, c.rows);
		if (!(v > out.new_payoff + tol)) {
			return;
		}
		for (std::size_t p : c.consenting) {
			if (!(eval.payoff(p, c.rows) > eval.payoff(p, rows) + tol)) {
				return;
			}
		}
		out.new_payoff = v;
		chosen = std::move(c);
	};

	for (std::size_t j : adjacency[i]) {
		const DeviceStrategy& other = state.strategies[j];
		const DeviceId target{static_cast<std::uint32_t>(j)};

		if (has_edge(rows, i, j)) {
			Candidate c{Move{MoveKind::drop_proposal, me, target, {}}, rows, {}, {}};
			c.rows[i] &= ~bit(j);
			DeviceStrategy s = mine;
			s.proposed.erase(j);
			c.updates.emplace_back(i, s);
			consider(std::move(c));
		} else if (other.accepted.contains(i)) {
			Candidate c{Move{MoveKind::add_proposal, me, target, {}}, rows, {}, {}};
			c.rows[i] |= bit(j);
			DeviceStrategy s = mine;
			s.proposed.insert(j);
			c.updates.emplace_back(i, s);
			consider(std::move(c));
		} else if (negotiate) {
			Candidate c{Move{MoveKind::consented_link, me, target, {}}, rows, {}, {j}};
			c.rows[i] |= bit(j);
			DeviceStrategy s = mine;
			s.proposed.insert(j);
			DeviceStrategy t = other;
			t.accepted.insert(i);
			c.updates.emplace_back(i, s);
			c.updates.emplace_back(j, t);
			consider(std::move(c));
		}

		if (mine.accepted.contains(j)) {
			if (has_edge(rows, j, i)) {
				Candidate c{Move{MoveKind::reject, me, target, {}}, rows, {}, {}};
				c.rows[j] &= ~bit(i);
				DeviceStrategy s = mine;
				s.accepted.erase(j);
				c.updates.emplace_back(i, s);
				consider(std::move(c));
			}
		} else if (other.proposed.contains(i)) {
			Candidate c{Move{MoveKind::accept, me, target, {}}, rows, {}, {}};
			c.rows[j] |= bit(i);
			DeviceStrategy s = mine;
			s.accepted.insert(j);
			c.updates.emplace_back(i, s);
			consider(std::move(c));
		}

		if (negotiate && !has_edge(rows, i, j) && !instance.endpoints().contains(j) && !touches_edges(rows, j)) {
			for (std::size_t k : adjacency[j] & useful) {
				if (k == i) {
					continue;
				}
				Candidate c{Move{MoveKind::relay_extension, me, target, DeviceId{static_cast<std::uint32_t>(k)}},
				            rows, {}, {j, k}};
				c.rows[i] |= bit(j);
				c.rows[j] |= bit(k);
				DeviceStrategy s = mine;
				s.proposed.insert(j);
				DeviceStrategy t = other;
				t.accepted.insert(i);
				t.proposed.insert(k);
				DeviceStrategy u = state.strategies[k];
				u.accepted.insert(j);
				c.updates.emplace_back(i, s);
				c.updates.emplace_back(j, t);
				c.updates.emplace_back(k, u);
				consider(std::move(c));
			}
		}
	}

	if (chosen) {
		out.move = chosen->move;
		out.updates = std::move(chosen->updates);
	}
	return out;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows)
{
	os << "iteration,device,old_payoff,new_payoff,move\n";
	const auto old_precision = os.precision(17);
	for (const auto& r : rows) {
		os << r.iteration << ',' << r.device << ',' << r.old_payoff << ',' << r.new_payoff << ',' << r.move << '\n';
	}
	os.precision(old_precision);
}

namespace {

// Drops links that carry nothing and whose removal changes no payoff.
std::size_t prune_idle_links(GameState& state, const std::vector<DeviceSet>& adjacency,
                             const net::NetworkInstance& instance, Evaluator& eval, const GameConfig& config)
{
	const std::size_t n = instance.device_count();
	std::vector<char> initial(n * n, 0);
	for (const auto& f : instance.flows()) {
		initial[f.source.index() * n + f.destination.index()] = 1;
	}
	std::size_t removed = 0;
	EdgeRows rows = state.edges(adjacency);
	bool again = true;
	while (again) {
		again = false;
		const routing::LinkGraph g = build_graph(instance, rows, config.band_share);
		const routing::FlowAssignment a = routing::route_flows(g, instance.flows());
		std::vector<double> before(n);
		for (std::size_t p = 0; p < n; ++p) {
			before[p] = eval.payoff(p, rows);
		}
		for (std::size_t e = 0; e < g.edge_count() && !again; ++e) {
			const auto [i, j, cap] = g.edge(e);
			(void)cap;
			if (initial[i * n + j] || a.load(e) > config.tolerance) {
				continue;
			}
			EdgeRows trial = rows;
			trial[i] &= ~bit(j);
			bool neutral = true;
			for (std::size_t p = 0; p < n && neutral; ++p) {
				neutral = std::abs(eval.payoff(p, trial) - before[p]) <= config.tolerance;
			}
			if (neutral) {
				state.strategies[i].proposed.erase(j);
				state.strategies[j].accepted.erase(i);
				rows = std::move(trial);
				++removed;
				again = true;
			}
		}
	}
	return removed;
}

} // namespace

CggResult run_cgg(const net::NetworkInstance& instance, const cfg::CoalitionStructure& view, std::uint64_t seed,
                  const GameConfig& config, std::vector<TraceRow>* trace)
{
	const std::vector<DeviceSet> adjacency = net::adjacency(instance, view);
	const std::size_t n = instance.device_count();
	const double tol = config.tolerance;

	CggResult result;
	result.state = initial_state(instance);
	Evaluator eval(instance, config.band_share);
	Rng rng(derive_seed(seed, SeedStream::play_order));
	std::vector<std::size_t> order(n);

	for (std::size_t it = 1; it <= config.max_iterations; ++it) {
		result.iterations = it;
		eval.clear();
		EdgeRows rows = result.state.edges(adjacency);
		if (all_met(instance, eval.rates(rows), tol)) {
			result.demands_met = true;
			result.converged = true;
			break;
		}

		std::iota(order.begin(), order.end(), std::size_t{0});
		rng.shuffle(order);
		bool changed = false;
		for (std::size_t i : order) {
			const std::vector<double>& rates = eval.rates(rows);
			if (saturated_endpoint(instance, rates, i, tol)) {
				continue;
			}
			if (!instance.endpoints().contains(i) && !touches_edges(rows, i)) {
				continue;
			}
			BestResponse br = best_response(i, result.state, adjacency, instance, eval, config);
			if (!br.changed()) {
				continue;
			}
			for (auto& [d, s] : br.updates) {
				result.state.strategies[d] = s;
			}
			rows = result.state.edges(adjacency);
			changed = true;
			if (trace) {
				trace->push_back(TraceRow{it, i, br.old_payoff, br.new_payoff, br.move.to_string()});
			}
		}

		if (all_met(instance, eval.rates(rows), tol)) {
			result.demands_met = true;
			result.converged = true;
			break;
		}
		if (!changed) {
			const std::size_t pruned = config.prune ? prune_idle_links(result.state, adjacency, instance, eval, config) : 0;
			result.pruned_links += pruned;
			if (pruned == 0) {
				result.converged = true;
				break;
			}
		}
	}

	const EdgeRows rows = result.state.edges(adjacency);
	result.graph = build_graph(instance, rows, config.band_share);
	result.assignment = routing::route_flows(result.graph, instance.flows());
	return result;
}

NashCheck verify_nash(const GameState& state, const net::NetworkInstance& instance,
                      const cfg::CoalitionStructure& view, const GameConfig& config)
{
	const std::vector<DeviceSet> adjacency = net::adjacency(instance, view);
	if (state.strategies.size() != instance.device_count()) {
		throw std::invalid_argument("state does not match the instance");
	}
	Evaluator eval(instance, config.band_share);
	const EdgeRows rows = state.edges(adjacency);
	NashCheck out;

	for (std::size_t i = 0; i < instance.device_count(); ++i) {
		const double current = eval.payoff(i, rows);
		const DeviceStrategy& mine = state.strategies[i];
		const DeviceId me{static_cast<std::uint32_t>(i)};
		auto test = [&](MoveKind kind, std::size_t j, const EdgeRows& trial) {
			const double v = eval.payoff(i, trial);
			if (v > current + config.tolerance) {
				out = NashCheck{false, Move{kind, me, DeviceId{static_cast<std::uint32_t>(j)}, {}}, current, v};
				return true;
			}
			return false;
		};
		for (std::size_t j : adjacency[i]) {
			const DeviceStrategy& other = state.strategies[j];
			EdgeRows trial = rows;
			// Toggle the proposal to j.
			if (mine.proposed.contains(j)) {
				trial[i] &= ~bit(j);
			} else if (other.accepted.contains(i)) {
				trial[i] |= bit(j);
			}
			if (test(mine.proposed.contains(j) ? MoveKind::drop_proposal : MoveKind::add_proposal, j, trial)) {
				return out;
			}
			// Flip the acceptance of j.
			trial = rows;
			if (mine.accepted.contains(j)) {
				trial[j] &= ~bit(i);
			} else if (other.proposed.contains(i)) {
				trial[j] |= bit(i);
			}
			if (test(mine.accepted.contains(j) ? MoveKind::reject : MoveKind::accept, j, trial)) {
				return out;
			}
		}
	}
	return out;
}

} // namespace lcg::cgg
