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

#include <lcg/cfg.hpp>
#include <lcg/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lcg::cfg {

void EconParams::validate() const
{
	if (!(revenue_per_kbps >= 0.0) || !(cost_per_watt >= 0.0) || !(coalition_cost >= 0.0)) {
		throw ConfigError("economic parameters must be non-negative");
	}
}

bool EconParams::revenue_dominates(const net::NetworkInstance& instance) const
{
	double worst = 0.0;
	for (const auto& d : instance.devices()) {
		worst = std::max(worst, cost_per_watt * d.max_power);
	}
	return revenue_per_kbps > worst;
}

double coalition_cost(const EconParams& econ, Coalition s)
{
	return s.empty() ? 0.0 : econ.coalition_cost * double(s.size() - 1);
}

double Outcome::aggregate() const
{
	return std::accumulate(utilities.begin(), utilities.end(), 0.0);
}

std::vector<double> operator_utilities(const net::NetworkInstance& instance, const CoalitionStructure& structure,
                                       const cgg::CggResult& cgg, const EconParams& econ)
{
	const std::size_t n_ops = instance.operator_count();
	const auto& g = cgg.graph;
	const auto& a = cgg.assignment;
	std::vector<double> u(n_ops, 0.0);
	std::vector<DeviceSet> used(n_ops);

	for (const auto& f : instance.flows()) {
		const std::size_t h = f.owner.index() - 1;
		const std::size_t l = f.id.index();
		u[h] += econ.revenue_per_kbps * a.achieved(l) / 1000.0;
		used[h].insert(f.source);
		used[h].insert(f.destination);
		for (std::size_t e = 0; e < g.edge_count(); ++e) {
			if (a.rate(e, l) > 0.0) {
				used[h].insert(g.edge(e).tail);
				used[h].insert(g.edge(e).head);
			}
		}
	}
	for (std::size_t h = 0; h < n_ops; ++h) {
		for (std::size_t i : used[h]) {
			u[h] -= econ.cost_per_watt * instance.devices()[i].max_power;
		}
		for (auto c : structure.memberships(OperatorId{static_cast<std::uint32_t>(h + 1)})) {
			u[h] -= coalition_cost(econ, c);
		}
	}
	return u;
}

StructureEvaluator::StructureEvaluator(const net::NetworkInstance& instance, EconParams econ, std::uint64_t seed,
                                       cgg::GameConfig game)
	: instance_(instance), econ_(econ), seed_(seed), game_(game)
{
	econ_.validate();
}

StructureEvaluator::PartnerKey StructureEvaluator::key(const CoalitionStructure& s) const
{
	PartnerKey k(instance_.operator_count());
	for (std::size_t h = 0; h < k.size(); ++h) {
		k[h] = s.partners(OperatorId{static_cast<std::uint32_t>(h + 1)}).mask();
	}
	return k;
}

const cgg::CggResult& StructureEvaluator::run(const CoalitionStructure& s)
{
	auto k = key(s);
	auto it = cgg_.find(k);
	if (it == cgg_.end()) {
		it = cgg_.emplace(std::move(k), cgg::run_cgg(instance_, s, seed_, game_)).first;
	}
	return it->second;
}

const Outcome& StructureEvaluator::evaluate(const CoalitionStructure& structure)
{
	auto it = outcomes_.find(structure);
	if (it != outcomes_.end()) {
		return it->second;
	}
	structure.validate(instance_.operator_count());
	const cgg::CggResult& r = run(structure);
	Outcome o;
	o.structure = structure;
	o.utilities = operator_utilities(instance_, structure, r, econ_);
	o.cgg_iterations = r.iterations;
	o.cgg_converged = r.converged;
	return outcomes_.emplace(structure, std::move(o)).first->second;
}

void StructureEvaluator::precompute(const std::vector<CoalitionStructure>& structures, bool parallel)
{
	std::vector<PartnerKey> keys;
	std::vector<const CoalitionStructure*> reps;
	{
		std::map<PartnerKey, bool> seen;
		for (const auto& s : structures) {
			auto k = key(s);
			if (cgg_.count(k) == 0 && seen.emplace(k, true).second) {
				keys.push_back(std::move(k));
				reps.push_back(&s);
			}
		}
	}
	std::vector<cgg::CggResult> results(reps.size());
	std::vector<std::exception_ptr> errors(reps.size());
	const auto count = static_cast<std::ptrdiff_t>(reps.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
	for (std::ptrdiff_t k = 0; k < count; ++k) {
		try {
			results[k] = cgg::run_cgg(instance_, *reps[k], seed_, game_);
		} catch (...) {
			errors[k] = std::current_exception();
		}
	}
	for (std::size_t k = 0; k < reps.size(); ++k) {
		if (errors[k]) {
			std::rethrow_exception(errors[k]);
		}
		cgg_.emplace(std::move(keys[k]), std::move(results[k]));
	}
}

std::size_t StructureEvaluator::max_cgg_iterations() const
{
	std::size_t m = 0;
	for (const auto& [k, r] : cgg_) {
		m = std::max(m, r.iterations);
	}
	return m;
}

Outcome evaluate_structure(const CoalitionStructure& structure, const net::NetworkInstance& instance,
                           const EconParams& econ, std::uint64_t seed, const cgg::GameConfig& game)
{
	StructureEvaluator eval(instance, econ, seed, game);
	return eval.evaluate(structure);
}

std::vector<CoalitionStructure> enumerate_covers(Coalition players)
{
	if (players.size() > kMaxExhaustiveOperators) {
		throw std::invalid_argument("exhaustive cover enumeration is limited to " +
		                            std::to_string(kMaxExhaustiveOperators) +
		                            " operators; use the distributed formation (run_cfg) for larger games");
	}
	if (players.empty()) {
		return {CoalitionStructure{}};
	}
	const std::vector<Coalition> subsets = nonempty_subsets(players);
	std::vector<CoalitionStructure> out;
	const std::uint64_t families = std::uint64_t{1} << subsets.size();
	for (std::uint64_t f = 1; f < families; ++f) {
		Coalition u;
		for (std::uint64_t rest = f; rest != 0; rest &= rest - 1) {
			u = u | subsets[static_cast<std::size_t>(std::countr_zero(rest))];
		}
		if (u != players) {
			continue;
		}
		std::vector<Coalition> cs;
		for (std::uint64_t rest = f; rest != 0; rest &= rest - 1) {
			cs.push_back(subsets[static_cast<std::size_t>(std::countr_zero(rest))]);
		}
		out.emplace_back(std::move(cs));
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<CoalitionStructure> enumerate_covers(std::size_t n_operators)
{
	if (n_operators == 0) {
		throw std::invalid_argument("at least one operator is required");
	}
	if (n_operators > kMaxExhaustiveOperators) {
		return enumerate_covers(Coalition::all(kMaxExhaustiveOperators + 1));
	}
	return enumerate_covers(Coalition::all(n_operators));
}

namespace {

void partitions_rec(std::size_t next, std::size_t n, std::vector<Coalition>& blocks,
                    std::vector<CoalitionStructure>& out)
{
	if (next > n) {
		out.emplace_back(blocks);
		return;
	}
	const OperatorId h{static_cast<std::uint32_t>(next)};
	for (std::size_t b = 0; b < blocks.size(); ++b) {
		const Coalition saved = blocks[b];
		blocks[b] = saved.with(h);
		partitions_rec(next + 1, n, blocks, out);
		blocks[b] = saved;
	}
	blocks.push_back(Coalition{}.with(h));
	partitions_rec(next + 1, n, blocks, out);
	blocks.pop_back();
}

} // namespace

std::vector<CoalitionStructure> enumerate_partitions(std::size_t n_operators)
{
	if (n_operators == 0) {
		throw std::invalid_argument("at least one operator is required");
	}
	if (n_operators > kMaxExhaustiveOperators) {
		throw std::invalid_argument("exhaustive partition enumeration is limited to " +
		                            std::to_string(kMaxExhaustiveOperators) + " operators");
	}
	std::vector<CoalitionStructure> out;
	std::vector<Coalition> blocks;
	partitions_rec(1, n_operators, blocks, out);
	std::sort(out.begin(), out.end());
	return out;
}

bool better_for(const std::vector<double>& x, const std::vector<double>& y, Coalition s, double tol)
{
	bool strict = false;
	for (auto h : s.members()) {
		const double a = x.at(h.index() - 1);
		const double b = y.at(h.index() - 1);
		if (a < b - tol) {
			return false;
		}
		strict = strict || a > b + tol;
	}
	return strict;
}

std::string to_string(DeviationKind kind)
{
	return kind == DeviationKind::complete ? "complete" : "partial";
}

ResidualGame complete_deviation(Coalition players, Coalition deviators, const CoalitionStructure& deviator_cover)
{
	if (deviators.empty() || !deviators.subset_of(players)) {
		throw std::invalid_argument("deviators must be a non-empty subset of the players");
	}
	if (deviator_cover.players() != deviators) {
		throw std::invalid_argument("the deviators' structure must cover exactly the deviators");
	}
	return ResidualGame{players.without(deviators), deviator_cover};
}

ResidualGame partial_deviation(const CoalitionStructure& current, Coalition deviators,
                               const std::vector<Coalition>& abandoned)
{
	if (deviators.empty()) {
		throw std::invalid_argument("deviators must be non-empty");
	}
	for (auto h : deviators.members()) {
		if (current.membership_count(h) < 2) {
			throw std::invalid_argument("operator " + std::to_string(h.value) +
			                            " is not overlapping and cannot deviate partially");
		}
	}
	std::vector<Coalition> kept;
	for (auto c : current.coalitions()) {
		if (std::find(abandoned.begin(), abandoned.end(), c) == abandoned.end()) {
			kept.push_back(c);
		}
	}
	for (auto c : abandoned) {
		if (!current.contains(c)) {
			throw std::invalid_argument("abandoned coalition " + c.to_string() + " is not in the structure");
		}
		if (!c.intersects(deviators)) {
			throw std::invalid_argument("abandoned coalition " + c.to_string() + " holds no deviator");
		}
	}
	CoalitionStructure rest{kept};
	if (!deviators.subset_of(rest.players())) {
		throw std::invalid_argument("a partial deviation must leave every deviator in some coalition");
	}
	return ResidualGame{current.players().without(rest.players()), rest};
}

ResidualAssumption parse_residual_assumption(std::string_view text)
{
	if (text == "optimistic") {
		return ResidualAssumption::optimistic;
	}
	if (text == "pessimistic") {
		return ResidualAssumption::pessimistic;
	}
	throw ConfigError("unknown residual assumption '" + std::string(text) + "'");
}

std::string to_string(ResidualAssumption a)
{
	return a == ResidualAssumption::optimistic ? "optimistic" : "pessimistic";
}

std::string Deviation::to_string() const
{
	std::ostringstream os;
	os << cfg::to_string(kind) << " deviation by " << deviators.to_string() << " to " << reached.to_string()
	   << " with utilities";
	for (double u : utilities) {
		os << ' ' << u;
	}
	return os.str();
}

CoreSolver::CoreSolver(StructureEvaluator& eval, ResidualAssumption assumption, double tol)
	: eval_(eval), assumption_(assumption), tol_(tol)
{
}

CoalitionStructure CoreSolver::join(const CoalitionStructure& a, const CoalitionStructure& b)
{
	std::vector<Coalition> cs = a.coalitions();
	cs.insert(cs.end(), b.coalitions().begin(), b.coalitions().end());
	return CoalitionStructure{std::move(cs)};
}

const std::vector<CoalitionStructure>& CoreSolver::core(Coalition players, const CoalitionStructure& frozen)
{
	auto key = std::make_pair(players.mask(), frozen.to_string());
	if (auto it = memo_.find(key); it != memo_.end()) {
		return it->second;
	}
	std::vector<CoalitionStructure> undominated;
	for (const auto& c : enumerate_covers(players)) {
		if (!find_dominating(players, frozen, c)) {
			undominated.push_back(c);
		}
	}
	return memo_.emplace(std::move(key), std::move(undominated)).first->second;
}

std::vector<CoalitionStructure> CoreSolver::assumption(Coalition players, const CoalitionStructure& frozen)
{
	const auto& c = core(players, frozen);
	return c.empty() ? enumerate_covers(players) : c;
}

std::optional<Deviation> CoreSolver::find_dominating(Coalition players, const CoalitionStructure& frozen,
                                                     const CoalitionStructure& candidate)
{
	for (auto s : nonempty_subsets(players)) {
		if (auto d = dominated_via(players, frozen, candidate, s)) {
			return d;
		}
	}
	return std::nullopt;
}

std::optional<Deviation> CoreSolver::dominated_via(Coalition players, const CoalitionStructure& frozen,
                                                   const CoalitionStructure& candidate, Coalition deviators)
{
	if (players.empty()) {
		return std::nullopt;
	}
	const std::vector<double> x = eval_.evaluate(join(frozen, candidate)).utilities;

	// Checks the reactions of `rest` once `base` is fixed.
	auto check = [&](DeviationKind kind, const CoalitionStructure& base, Coalition rest) -> std::optional<Deviation> {
		const auto reactions = rest.empty() ? std::vector<CoalitionStructure>{CoalitionStructure{}}
		                                    : assumption(rest, base);
		std::optional<Deviation> witness;
		for (const auto& r : reactions) {
			const CoalitionStructure full = join(base, r);
			const auto& y = eval_.evaluate(full).utilities;
			const bool better = better_for(y, x, deviators, tol_);
			if (better && !witness) {
				witness = Deviation{deviators, kind, full, y};
			}
			if (better && assumption_ == ResidualAssumption::optimistic) {
				return witness;
			}
			if (!better && assumption_ == ResidualAssumption::pessimistic) {
				return std::nullopt;
			}
		}
		return witness;
	};

	for (const auto& cover : enumerate_covers(deviators)) {
		const ResidualGame g = complete_deviation(players, deviators, cover);
		if (auto d = check(DeviationKind::complete, join(frozen, g.frozen), g.players)) {
			return d;
		}
	}

	bool overlapping = true;
	for (auto h : deviators.members()) {
		overlapping = overlapping && candidate.membership_count(h) >= 2;
	}
	if (!overlapping) {
		return std::nullopt;
	}
	std::vector<Coalition> touched;
	for (auto c : candidate.coalitions()) {
		if (c.intersects(deviators)) {
			touched.push_back(c);
		}
	}
	for (std::uint64_t q = 1; q < (std::uint64_t{1} << touched.size()); ++q) {
		std::vector<Coalition> abandoned;
		Coalition leaving;
		for (std::size_t k = 0; k < touched.size(); ++k) {
			if ((q >> k) & 1U) {
				abandoned.push_back(touched[k]);
				leaving = leaving | (touched[k] & deviators);
			}
		}
		if (leaving != deviators) {
			continue;  // every deviator has to leave something
		}
		ResidualGame g;
		try {
			g = partial_deviation(candidate, deviators, abandoned);
		} catch (const std::invalid_argument&) {
			continue;
		}
		if (auto d = check(DeviationKind::partial, join(frozen, g.frozen), g.players)) {
			return d;
		}
	}
	return std::nullopt;
}

std::vector<Outcome> gamma_core_exact(const net::NetworkInstance& instance, const EconParams& econ,
                                      std::uint64_t seed, const cgg::GameConfig& game, ResidualAssumption assumption,
                                      bool parallel)
{
	const Coalition all = Coalition::all(instance.operator_count());
	const auto covers = enumerate_covers(all);
	StructureEvaluator eval(instance, econ, seed, game);
	eval.precompute(covers, parallel);
	CoreSolver solver(eval, assumption);
	std::vector<Outcome> out;
	for (const auto& s : solver.core(all, CoalitionStructure{})) {
		out.push_back(eval.evaluate(s));
	}
	return out;
}

void History::record(OperatorId h, const std::vector<Coalition>& memberships, double utility)
{
	entries_.at(h.index() - 1).emplace_back(memberships, utility);
}

bool History::blocks(OperatorId h, const std::vector<Coalition>& memberships, double utility, double tol) const
{
	for (const auto& [m, u] : entries_.at(h.index() - 1)) {
		if (m == memberships && std::abs(u - utility) <= tol) {
			return true;
		}
	}
	return false;
}

namespace {

std::vector<OperatorId> operator_ids(std::size_t n)
{
	std::vector<OperatorId> ids;
	for (std::uint32_t h = 1; h <= n; ++h) {
		ids.emplace_back(h);
	}
	return ids;
}

// g leaves coalition t; g stays covered by a singleton if needed.
CoalitionStructure leave(const CoalitionStructure& s, OperatorId g, Coalition t)
{
	std::vector<Coalition> cs;
	for (auto c : s.coalitions()) {
		if (c != t) {
			cs.push_back(c);
		}
	}
	const Coalition shrunk = t.without(g);
	if (!shrunk.empty() && std::find(cs.begin(), cs.end(), shrunk) == cs.end()) {
		cs.push_back(shrunk);
	}
	const Coalition me = Coalition{}.with(g);
	const bool covered = std::any_of(cs.begin(), cs.end(), [g](Coalition c) { return c.contains(g); });
	if (!covered) {
		cs.push_back(me);
	}
	return CoalitionStructure{std::move(cs)}.without_redundant_singletons();
}

class Formation
{
public:
	Formation(StructureEvaluator& eval, const CfgConfig& config)
		: eval_(eval), config_(config), n_(eval.operator_count()), history_(n_),
		  current_(CoalitionStructure::singletons(n_))
	{
		const auto& u = eval_.evaluate(current_).utilities;
		for (auto h : operator_ids(n_)) {
			history_.record(h, current_.memberships(h), u[h.index() - 1]);
		}
	}

	const CoalitionStructure& current() const { return current_; }
	std::size_t accepted() const { return accepted_; }

	// Adopts `candidate` if every mover strictly gains and none is blocked by history.
	bool try_adopt(const CoalitionStructure& candidate, const std::vector<OperatorId>& movers)
	{
		if (candidate == current_) {
			return false;
		}
		const auto& now = eval_.evaluate(current_).utilities;
		const auto& next = eval_.evaluate(candidate).utilities;
		for (auto m : movers) {
			const double v = next[m.index() - 1];
			if (!(v > now[m.index() - 1] + config_.tolerance)) {
				return false;
			}
			if (history_.blocks(m, candidate.memberships(m), v, config_.tolerance)) {
				return false;
			}
		}
		adopt(candidate);
		return true;
	}

	// g leaves the coalition (among those passing `filter`) that raises its
	// utility the most, if any does.
	template <typename Filter>
	bool best_leave(OperatorId g, Filter filter)
	{
		const auto& now = eval_.evaluate(current_).utilities;
		double best = now[g.index() - 1] + config_.tolerance;
		std::optional<CoalitionStructure> choice;
		for (auto t : current_.memberships(g)) {
			if (t.size() < 2 || !filter(t)) {
				continue;
			}
			CoalitionStructure cand = leave(current_, g, t);
			const double v = eval_.evaluate(cand).utilities[g.index() - 1];
			if (v > best && !history_.blocks(g, cand.memberships(g), v, config_.tolerance)) {
				best = v;
				choice = std::move(cand);
			}
		}
		if (!choice) {
			return false;
		}
		adopt(*choice);
		return true;
	}

private:
	void adopt(const CoalitionStructure& next)
	{
		const auto& u = eval_.evaluate(next).utilities;
		for (auto h : operator_ids(n_)) {
			if (next.memberships(h) != current_.memberships(h)) {
				history_.record(h, next.memberships(h), u[h.index() - 1]);
			}
		}
		current_ = next;
		++accepted_;
	}

	StructureEvaluator& eval_;
	CfgConfig config_;
	std::size_t n_;
	History history_;
	CoalitionStructure current_;
	std::size_t accepted_{0};
};

CfgResult finish(StructureEvaluator& eval, const CoalitionStructure& s, std::size_t rounds, bool converged,
                 std::size_t accepted)
{
	CfgResult r;
	r.outcome = eval.evaluate(s);
	r.rounds = rounds;
	r.converged = converged;
	r.accepted_moves = accepted;
	r.cgg_runs = eval.cgg_runs();
	r.max_cgg_iterations = eval.max_cgg_iterations();
	return r;
}

} // namespace

CfgResult run_cfg(StructureEvaluator& eval, std::uint64_t seed, const CfgConfig& config)
{
	const std::size_t n = eval.operator_count();
	Rng rng(derive_seed(seed, SeedStream::negotiation));
	Formation f(eval, config);
	std::size_t rounds = 0;
	bool converged = false;

	while (rounds < config.max_rounds) {
		++rounds;
		bool changed = false;
		auto order = operator_ids(n);
		rng.shuffle(order);
		for (auto h : order) {
			changed = f.best_leave(h, [](Coalition) { return true; }) || changed;

			std::vector<OperatorId> others;
			for (auto o : operator_ids(n)) {
				if (o != h) {
					others.push_back(o);
				}
			}
			rng.shuffle(others);
			for (auto h2 : others) {
				if (f.current().partners(h).contains(h2)) {
					continue;
				}
				const Coalition pair = Coalition{}.with(h).with(h2);
				std::vector<Coalition> cs = f.current().coalitions();
				cs.push_back(pair);
				const CoalitionStructure cand = CoalitionStructure{std::move(cs)}.without_redundant_singletons();
				if (!f.try_adopt(cand, {h, h2})) {
					continue;
				}
				changed = true;
				// Partners of the new pair re-evaluate and may walk away from it.
				std::vector<OperatorId> reactors;
				for (auto g : operator_ids(n)) {
					if (!pair.contains(g) && f.current().partners(g).intersects(pair)) {
						reactors.push_back(g);
					}
				}
				for (auto g : reactors) {
					f.best_leave(g, [pair](Coalition t) { return t.intersects(pair); });
				}
			}
		}
		if (!changed) {
			converged = true;
			break;
		}
	}
	return finish(eval, f.current(), rounds, converged, f.accepted());
}

CfgResult run_cfg(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                  const cgg::GameConfig& game, const CfgConfig& config)
{
	StructureEvaluator eval(instance, econ, seed, game);
	return run_cfg(eval, seed, config);
}

CfgResult run_variant_merge_only(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                                 const cgg::GameConfig& game, const CfgConfig& config)
{
	StructureEvaluator eval(instance, econ, seed, game);
	Rng rng(derive_seed(seed, SeedStream::negotiation));
	CoalitionStructure current = CoalitionStructure::singletons(instance.operator_count());
	std::size_t rounds = 0;
	std::size_t accepted = 0;
	bool converged = false;

	while (rounds < config.max_rounds) {
		++rounds;
		const auto& blocks = current.coalitions();
		std::vector<std::pair<std::size_t, std::size_t>> pairs;
		for (std::size_t a = 0; a < blocks.size(); ++a) {
			for (std::size_t b = a + 1; b < blocks.size(); ++b) {
				pairs.emplace_back(a, b);
			}
		}
		rng.shuffle(pairs);
		const auto& now = eval.evaluate(current).utilities;
		std::optional<CoalitionStructure> merged;
		for (auto [a, b] : pairs) {
			std::vector<Coalition> cs;
			for (std::size_t k = 0; k < blocks.size(); ++k) {
				if (k != a && k != b) {
					cs.push_back(blocks[k]);
				}
			}
			const Coalition m = blocks[a] | blocks[b];
			cs.push_back(m);
			CoalitionStructure cand{std::move(cs)};
			const auto& next = eval.evaluate(cand).utilities;
			bool all_gain = true;
			for (auto h : m.members()) {
				all_gain = all_gain && next[h.index() - 1] > now[h.index() - 1] + config.tolerance;
			}
			if (all_gain) {
				merged = std::move(cand);
				break;
			}
		}
		if (!merged) {
			converged = true;
			break;
		}
		current = std::move(*merged);
		++accepted;
	}
	return finish(eval, current, rounds, converged, accepted);
}

CfgResult run_non_cooperative(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                              const cgg::GameConfig& game)
{
	StructureEvaluator eval(instance, econ, seed, game);
	return finish(eval, CoalitionStructure::singletons(instance.operator_count()), 0, true, 0);
}

} // namespace lcg::cfg
