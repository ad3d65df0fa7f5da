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

#ifndef LCG_COALITION_HPP
#define LCG_COALITION_HPP

#include <lcg/common.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lcg::cfg {

/// A set of operators, stored as a bitmask (operator h is bit h-1).
class Coalition
{
public:
	static constexpr std::size_t max_operators = 32;

	constexpr Coalition() = default;
	constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}

	static Coalition of(std::initializer_list<std::uint32_t> operators);
	static constexpr Coalition all(std::size_t n)
	{
		return Coalition{n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1};
	}

	constexpr std::uint32_t mask() const { return mask_; }
	constexpr bool empty() const { return mask_ == 0; }
	constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
	constexpr bool contains(OperatorId h) const { return h.value >= 1 && ((mask_ >> (h.value - 1)) & 1U); }
	constexpr bool intersects(Coalition o) const { return (mask_ & o.mask_) != 0; }
	constexpr bool subset_of(Coalition o) const { return (mask_ & ~o.mask_) == 0; }

	constexpr Coalition operator|(Coalition o) const { return Coalition{mask_ | o.mask_}; }
	constexpr Coalition operator&(Coalition o) const { return Coalition{mask_ & o.mask_}; }
	constexpr Coalition without(Coalition o) const { return Coalition{mask_ & ~o.mask_}; }
	constexpr Coalition with(OperatorId h) const { return Coalition{mask_ | (std::uint32_t{1} << (h.value - 1))}; }
	constexpr Coalition without(OperatorId h) const { return Coalition{mask_ & ~(std::uint32_t{1} << (h.value - 1))}; }

	/// Members in ascending order.
	std::vector<OperatorId> members() const;

	std::string to_string() const;

	friend constexpr bool operator==(Coalition, Coalition) = default;

	/// Lexicographic order of the sorted member lists: {1} < {1,2} < {2}.
	friend bool operator<(Coalition a, Coalition b);

private:
	std::uint32_t mask_{0};
};

/// Enumerates the non-empty subsets of `of` in increasing mask order.
std::vector<Coalition> nonempty_subsets(Coalition of);

/// A cover of an operator set by distinct, non-empty, possibly overlapping
/// coalitions. Always held in canonical order.
class CoalitionStructure
{
public:
	CoalitionStructure() = default;

	/// Canonicalizes; throws std::invalid_argument on an empty or repeated coalition.
	explicit CoalitionStructure(std::vector<Coalition> coalitions);

	static CoalitionStructure singletons(std::size_t n_operators);
	static CoalitionStructure grand(std::size_t n_operators);

	/// Parses the canonical text form, e.g. "{1,2}|{2,3}".
	static CoalitionStructure parse(std::string_view text);

	const std::vector<Coalition>& coalitions() const { return coalitions_; }
	std::size_t size() const { return coalitions_.size(); }

	/// Union of all coalitions.
	Coalition players() const;

	/// Throws std::invalid_argument unless the union is exactly {1..n}.
	void validate(std::size_t n_operators) const;

	/// Coalitions that contain h (Gamma_h), in canonical order.
	std::vector<Coalition> memberships(OperatorId h) const;

	/// Every operator that shares at least one coalition with h, h included.
	Coalition partners(OperatorId h) const;

	/// Number of coalitions h belongs to.
	std::size_t membership_count(OperatorId h) const;

	bool is_partition() const;

	bool contains(Coalition c) const;

	/// Drops {h} whenever h also belongs to a larger coalition. The result
	/// induces the same adjacency and coalition costs.
	CoalitionStructure without_redundant_singletons() const;

	std::string to_string() const;

	friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;
	friend bool operator<(const CoalitionStructure& a, const CoalitionStructure& b);

private:
	std::vector<Coalition> coalitions_;
};

} // namespace lcg::cfg

#endif // LCG_COALITION_HPP
