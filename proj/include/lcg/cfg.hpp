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

#ifndef LCG_CFG_HPP
#define LCG_CFG_HPP

#include <lcg/cgg.hpp>
#include <lcg/coalition.hpp>
#include <lcg/net_model.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcg::cfg {

struct EconParams
{
	double revenue_per_kbps{120.0};  ///< P_R, utility per kbit/s per time unit
	double cost_per_watt{500.0};     ///< device cost per watt of transmit power
	double coalition_cost{5.0};      ///< C; a member of S pays C * (|S| - 1)

	/// Throws ConfigError on a negative parameter.
	void validate() const;

	/// False when the revenue rate does not exceed the largest device cost,
	/// an economically odd setting worth a warning.
	bool revenue_dominates(const net::NetworkInstance& instance) const;
};

/// xi^S_h = C * (|S| - 1), charged to every member of S.
double coalition_cost(const EconParams& econ, Coalition s);

struct Outcome
{
	CoalitionStructure structure;
	std::vector<double> utilities;  ///< index h - 1
	std::size_t cgg_iterations{0};
	bool cgg_converged{true};

	double utility(OperatorId h) const { return utilities.at(h.index() - 1); }
	double aggregate() const;
};

/// Per-operator utilities for a structure whose device layer settled in
/// `cgg`: revenue of own flows, minus the cost of every device that
/// carries an own flow, minus own coalition costs.
std::vector<double> operator_utilities(const net::NetworkInstance& instance, const CoalitionStructure& structure,
                                       const cgg::CggResult& cgg, const EconParams& econ);

/// Prices structures. The device layer only depends on which operators
/// share a coalition, so CGG runs are cached by that relation; outcomes are
/// cached by structure. Not thread-safe; see precompute().
class StructureEvaluator
{
public:
	StructureEvaluator(const net::NetworkInstance& instance, EconParams econ, std::uint64_t seed,
	                   cgg::GameConfig game = {});

	const Outcome& evaluate(const CoalitionStructure& structure);

	/// Runs the CGG for every distinct partner relation among `structures`,
	/// in parallel when `parallel` is set. Results are identical either way.
	void precompute(const std::vector<CoalitionStructure>& structures, bool parallel);

	const net::NetworkInstance& instance() const { return instance_; }
	const EconParams& econ() const { return econ_; }
	std::size_t operator_count() const { return instance_.operator_count(); }

	std::size_t cgg_runs() const { return cgg_.size(); }
	std::size_t max_cgg_iterations() const;

private:
	using PartnerKey = std::vector<std::uint32_t>;
	PartnerKey key(const CoalitionStructure& s) const;
	const cgg::CggResult& run(const CoalitionStructure& s);

	const net::NetworkInstance& instance_;
	EconParams econ_;
	std::uint64_t seed_;
	cgg::GameConfig game_;
	std::map<PartnerKey, cgg::CggResult> cgg_;
	std::map<CoalitionStructure, Outcome> outcomes_;
};

/// One-shot evaluation.
Outcome evaluate_structure(const CoalitionStructure& structure, const net::NetworkInstance& instance,
                           const EconParams& econ, std::uint64_t seed, const cgg::GameConfig& game = {});

inline constexpr std::size_t kMaxExhaustiveOperators = 4;

/// Every cover of `players` in canonical form, sorted. Throws
/// std::invalid_argument for more than kMaxExhaustiveOperators players.
std::vector<CoalitionStructure> enumerate_covers(Coalition players);
std::vector<CoalitionStructure> enumerate_covers(std::size_t n_operators);

/// Every partition of {1..n}, sorted. Same guard.
std::vector<CoalitionStructure> enumerate_partitions(std::size_t n_operators);

/// x >_S y: every member of S weakly better, at least one strictly.
bool better_for(const std::vector<double>& x, const std::vector<double>& y, Coalition s, double tol = 1e-9);

enum class DeviationKind
{
	complete,  ///< deviators leave all coalitions and form their own cover
	partial,   ///< overlapping deviators abandon some coalitions, keep the rest
};

std::string to_string(DeviationKind kind);

/// The game left to the non-deviators: players still to be covered and the
/// coalitions that stay fixed while they react.
struct ResidualGame
{
	Coalition players;
	CoalitionStructure frozen;
};

/// Deviators S out of `players` form `deviator_cover`; H \ S reacts.
ResidualGame complete_deviation(Coalition players, Coalition deviators, const CoalitionStructure& deviator_cover);

/// Deviators abandon `abandoned` (coalitions of `current`) and keep their
/// other memberships; players left uncovered react. Throws
/// std::invalid_argument if a deviator is not overlapping, if an abandoned
/// coalition is not in `current` or holds no deviator, or if a deviator
/// would be left without a coalition.
ResidualGame partial_deviation(const CoalitionStructure& current, Coalition deviators,
                               const std::vector<Coalition>& abandoned);

enum class ResidualAssumption
{
	optimistic,   ///< dominance needs some reaction in the assumption set
	pessimistic,  ///< dominance needs every reaction in the assumption set
};

ResidualAssumption parse_residual_assumption(std::string_view text);
std::string to_string(ResidualAssumption a);

struct Deviation
{
	Coalition deviators;
	DeviationKind kind{DeviationKind::complete};
	CoalitionStructure reached;     ///< full structure after the residual reaction
	std::vector<double> utilities;  ///< utilities of `reached`

	std::string to_string() const;
};

/// Recursive construction of the set of undominated outcomes, with the
/// residual games memoized on (players, frozen coalitions).
class CoreSolver
{
public:
	explicit CoreSolver(StructureEvaluator& eval, ResidualAssumption assumption = ResidualAssumption::optimistic,
	                    double tol = 1e-9);

	/// Undominated covers of `players` given the frozen coalitions.
	const std::vector<CoalitionStructure>& core(Coalition players, const CoalitionStructure& frozen);

	/// The core if non-empty, otherwise every cover of `players`.
	std::vector<CoalitionStructure> assumption(Coalition players, const CoalitionStructure& frozen);

	/// A deviation that dominates `candidate` (a cover of `players`) in the
	/// residual game, if any.
	std::optional<Deviation> find_dominating(Coalition players, const CoalitionStructure& frozen,
	                                         const CoalitionStructure& candidate);

	/// Same, but only deviations by exactly `deviators`.
	std::optional<Deviation> dominated_via(Coalition players, const CoalitionStructure& frozen,
	                                       const CoalitionStructure& candidate, Coalition deviators);

private:
	static CoalitionStructure join(const CoalitionStructure& a, const CoalitionStructure& b);

	StructureEvaluator& eval_;
	ResidualAssumption assumption_;
	double tol_;
	std::map<std::pair<std::uint32_t, std::string>, std::vector<CoalitionStructure>> memo_;
};

/// Every undominated outcome of the whole game, in structure order. The
/// CGG runs behind all covers are computed up front, in parallel unless
/// `parallel` is false.
std::vector<Outcome> gamma_core_exact(const net::NetworkInstance& instance, const EconParams& econ,
                                      std::uint64_t seed, const cgg::GameConfig& game = {},
                                      ResidualAssumption assumption = ResidualAssumption::optimistic,
                                      bool parallel = true);

/// (Gamma_h, utility) pairs an operator has already held.
class History
{
public:
	explicit History(std::size_t n_operators = 0) : entries_(n_operators) {}

	void record(OperatorId h, const std::vector<Coalition>& memberships, double utility);

	/// True when h has held exactly these memberships at this utility.
	bool blocks(OperatorId h, const std::vector<Coalition>& memberships, double utility, double tol = 1e-9) const;

	std::size_t size(OperatorId h) const { return entries_.at(h.index() - 1).size(); }

private:
	std::vector<std::vector<std::pair<std::vector<Coalition>, double>>> entries_;
};

struct CfgConfig
{
	std::size_t max_rounds{100};
	double tolerance{1e-9};
};

struct CfgResult
{
	Outcome outcome;
	std::size_t rounds{0};
	bool converged{false};
	std::size_t accepted_moves{0};
	std::size_t cgg_runs{0};
	std::size_t max_cgg_iterations{0};
};

/// Distributed formation from the singleton structure: seeded pairwise
/// negotiations with history-based loop prevention, followed by reactions
/// of the new pair's partners.
CfgResult run_cfg(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                  const cgg::GameConfig& game = {}, const CfgConfig& config = {});

/// Same dynamics, but the evaluator is supplied (and shared) by the caller.
CfgResult run_cfg(StructureEvaluator& eval, std::uint64_t seed, const CfgConfig& config = {});

/// Partition-only baseline: two blocks merge when every member strictly gains.
CfgResult run_variant_merge_only(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                                 const cgg::GameConfig& game = {}, const CfgConfig& config = {});

/// Each operator on its own.
CfgResult run_non_cooperative(const net::NetworkInstance& instance, const EconParams& econ, std::uint64_t seed,
                              const cgg::GameConfig& game = {});

} // namespace lcg::cfg

#endif // LCG_CFG_HPP
