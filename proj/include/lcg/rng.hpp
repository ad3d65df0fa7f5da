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

#ifndef LCG_RNG_HPP
#define LCG_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace lcg {

/// Sub-seed streams. A run seed is split into independent generators with
/// derive_seed(run_seed, stream); the stream numbers are part of the
/// replay contract and must not change.
enum class SeedStream : std::uint64_t
{
	placement = 1,
	demand = 2,
	play_order = 3,
	negotiation = 4,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9E3779B97F4A7C15ULL;
	x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
	x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
	return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream)
{
	return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
}

/// Portable generator: mt19937_64 plus hand-written distributions, so the
/// same seed gives the same draws regardless of the standard library.
class Rng
{
public:
	explicit Rng(std::uint64_t seed) : engine_(seed) {}

	/// Uniform in [0, 1) with 53 bits of resolution.
	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	/// Uniform integer in [0, n); n > 0.
	std::size_t index(std::size_t n)
	{
		const std::uint64_t bound = static_cast<std::uint64_t>(n);
		const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
		std::uint64_t x;
		do {
			x = engine_();
		} while (x >= limit);
		return static_cast<std::size_t>(x % bound);
	}

	template <typename T>
	void shuffle(std::vector<T>& v)
	{
		for (std::size_t i = v.size(); i > 1; --i) {
			std::swap(v[i - 1], v[index(i)]);
		}
	}

private:
	std::mt19937_64 engine_;
};

} // namespace lcg

#endif // LCG_RNG_HPP
