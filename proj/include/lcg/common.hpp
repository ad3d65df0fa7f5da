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

#ifndef LCG_COMMON_HPP
#define LCG_COMMON_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lcg {

/// Tagged integer identifier. Devices and flows are numbered from 0,
/// operators from 1 (matching the usual H = {1, ..., H} labelling).
template <typename Tag>
struct Id
{
	std::uint32_t value{0};

	constexpr Id() = default;
	constexpr explicit Id(std::uint32_t v) : value(v) {}

	constexpr std::size_t index() const { return value; }

	friend constexpr auto operator<=>(Id, Id) = default;

	friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value; }
};

using DeviceId = Id<struct DeviceTag>;
using OperatorId = Id<struct OperatorTag>;
using FlowId = Id<struct FlowTag>;

/// Compact set of device indices; an instance holds at most 64 devices.
class DeviceSet
{
public:
	static constexpr std::size_t capacity = 64;

	constexpr DeviceSet() = default;
	constexpr explicit DeviceSet(std::uint64_t bits) : bits_(bits) {}

	constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
	constexpr bool contains(DeviceId d) const { return contains(d.index()); }
	constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
	constexpr void insert(DeviceId d) { insert(d.index()); }
	constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
	constexpr void erase(DeviceId d) { erase(d.index()); }
	constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
	constexpr bool empty() const { return bits_ == 0; }
	constexpr std::uint64_t bits() const { return bits_; }

	constexpr DeviceSet operator&(DeviceSet o) const { return DeviceSet{bits_ & o.bits_}; }
	constexpr DeviceSet operator|(DeviceSet o) const { return DeviceSet{bits_ | o.bits_}; }
	constexpr DeviceSet without(DeviceSet o) const { return DeviceSet{bits_ & ~o.bits_}; }

	friend constexpr bool operator==(DeviceSet, DeviceSet) = default;

	/// Iterates set members in ascending order.
	class iterator
	{
	public:
		constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
		constexpr std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
		constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
		friend constexpr bool operator==(iterator, iterator) = default;
	private:
		std::uint64_t rest_;
	};

	constexpr iterator begin() const { return iterator{bits_}; }
	constexpr iterator end() const { return iterator{0}; }

private:
	std::uint64_t bits_{0};
};

/// Raised when a configuration or scenario violates a documented invariant.
class ConfigError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

} // namespace lcg

template <typename Tag>
struct std::hash<lcg::Id<Tag>>
{
	std::size_t operator()(lcg::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif // LCG_COMMON_HPP
