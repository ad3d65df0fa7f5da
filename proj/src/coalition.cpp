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

#include <lcg/coalition.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lcg::cfg {

Coalition Coalition::of(std::initializer_list<std::uint32_t> operators)
{
	Coalition c;
	for (auto h : operators) {
		if (h < 1 || h > max_operators) {
			throw std::invalid_argument("operator id out of range: " + std::to_string(h));
		}
		c = c.with(OperatorId{h});
	}
	return c;
}

std::vector<OperatorId> Coalition::members() const
{
	std::vector<OperatorId> out;
	out.reserve(size());
	for (std::uint32_t rest = mask_; rest != 0; rest &= rest - 1) {
		out.emplace_back(static_cast<std::uint32_t>(std::countr_zero(rest)) + 1);
	}
	return out;
}

std::string Coalition::to_string() const
{
	std::string s = "{";
	bool first = true;
	for (auto h : members()) {
		if (!first) {
			s += ',';
		}
		s += std::to_string(h.value);
		first = false;
	}
	s += '}';
	return s;
}

bool operator<(Coalition a, Coalition b)
{
	// Walk both member lists in step; the first difference decides, and a
	// proper prefix sorts first.
	std::uint32_t ra = a.mask_;
	std::uint32_t rb = b.mask_;
	while (ra != 0 && rb != 0) {
		const int ia = std::countr_zero(ra);
		const int ib = std::countr_zero(rb);
		if (ia != ib) {
			return ia < ib;
		}
		ra &= ra - 1;
		rb &= rb - 1;
	}
	return ra == 0 && rb != 0;
}

std::vector<Coalition> nonempty_subsets(Coalition of)
{
	std::vector<Coalition> out;
	const std::uint32_t m = of.mask();
	// Standard submask walk, collected then sorted ascending by mask.
	for (std::uint32_t s = m; s != 0; s = (s - 1) & m) {
		out.emplace_back(s);
	}
	std::sort(out.begin(), out.end(), [](Coalition x, Coalition y) { return x.mask() < y.mask(); });
	return out;
}

CoalitionStructure::CoalitionStructure(std::vector<Coalition> coalitions)
	: coalitions_(std::move(coalitions))
{
	for (auto c : coalitions_) {
		if (c.empty()) {
			throw std::invalid_argument("coalition structure contains an empty coalition");
		}
	}
	std::sort(coalitions_.begin(), coalitions_.end());
	if (std::adjacent_find(coalitions_.begin(), coalitions_.end()) != coalitions_.end()) {
		throw std::invalid_argument("coalition structure contains a duplicate coalition");
	}
}

CoalitionStructure CoalitionStructure::singletons(std::size_t n_operators)
{
	std::vector<Coalition> cs;
	for (std::uint32_t h = 1; h <= n_operators; ++h) {
		cs.push_back(Coalition{}.with(OperatorId{h}));
	}
	return CoalitionStructure{std::move(cs)};
}

CoalitionStructure CoalitionStructure::grand(std::size_t n_operators)
{
	return CoalitionStructure{{Coalition::all(n_operators)}};
}

CoalitionStructure CoalitionStructure::parse(std::string_view text)
{
	std::vector<Coalition> cs;
	std::size_t pos = 0;
	auto fail = [&](const std::string& why) {
		throw std::invalid_argument("cannot parse coalition structure '" + std::string(text) + "': " + why);
	};
	auto skip_space = [&] {
		while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
			++pos;
		}
	};
	while (true) {
		skip_space();
		if (pos >= text.size() || text[pos] != '{') {
			fail("expected '{'");
		}
		++pos;
		Coalition c;
		while (true) {
			skip_space();
			std::size_t start = pos;
			while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
				++pos;
			}
			if (start == pos) {
				fail("expected operator id");
			}
			const auto h = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(start, pos - start))));
			if (h < 1 || h > Coalition::max_operators) {
				fail("operator id out of range");
			}
			c = c.with(OperatorId{h});
			skip_space();
			if (pos < text.size() && text[pos] == ',') {
				++pos;
				continue;
			}
			if (pos < text.size() && text[pos] == '}') {
				++pos;
				break;
			}
			fail("expected ',' or '}'");
		}
		cs.push_back(c);
		skip_space();
		if (pos == text.size()) {
			break;
		}
		if (text[pos] != '|') {
			fail("expected '|'");
		}
		++pos;
	}
	return CoalitionStructure{std::move(cs)};
}

Coalition CoalitionStructure::players() const
{
	Coalition u;
	for (auto c : coalitions_) {
		u = u | c;
	}
	return u;
}

void CoalitionStructure::validate(std::size_t n_operators) const
{
	if (n_operators == 0 || n_operators > Coalition::max_operators) {
		throw std::invalid_argument("operator count out of range");
	}
	if (players() != Coalition::all(n_operators)) {
		throw std::invalid_argument("structure " + to_string() + " is not a cover of {1.." +
		                            std::to_string(n_operators) + "}");
	}
}

std::vector<Coalition> CoalitionStructure::memberships(OperatorId h) const
{
	std::vector<Coalition> out;
	for (auto c : coalitions_) {
		if (c.contains(h)) {
			out.push_back(c);
		}
	}
	return out;
}

Coalition CoalitionStructure::partners(OperatorId h) const
{
	Coalition p;
	for (auto c : coalitions_) {
		if (c.contains(h)) {
			p = p | c;
		}
	}
	return p;
}

std::size_t CoalitionStructure::membership_count(OperatorId h) const
{
	return static_cast<std::size_t>(
		std::count_if(coalitions_.begin(), coalitions_.end(), [h](Coalition c) { return c.contains(h); }));
}

bool CoalitionStructure::is_partition() const
{
	Coalition seen;
	for (auto c : coalitions_) {
		if (seen.intersects(c)) {
			return false;
		}
		seen = seen | c;
	}
	return true;
}

bool CoalitionStructure::contains(Coalition c) const
{
	return std::binary_search(coalitions_.begin(), coalitions_.end(), c);
}

CoalitionStructure CoalitionStructure::without_redundant_singletons() const
{
	std::vector<Coalition> kept;
	for (auto c : coalitions_) {
		if (c.size() == 1) {
			const bool covered_elsewhere = std::any_of(coalitions_.begin(), coalitions_.end(), [c](Coalition o) {
				return o != c && c.subset_of(o);
			});
			if (covered_elsewhere) {
				continue;
			}
		}
		kept.push_back(c);
	}
	return CoalitionStructure{std::move(kept)};
}

std::string CoalitionStructure::to_string() const
{
	std::ostringstream os;
	for (std::size_t i = 0; i < coalitions_.size(); ++i) {
		if (i > 0) {
			os << '|';
		}
		os << coalitions_[i].to_string();
	}
	return os.str();
}

bool operator<(const CoalitionStructure& a, const CoalitionStructure& b)
{
	return std::lexicographical_compare(a.coalitions_.begin(), a.coalitions_.end(), b.coalitions_.begin(),
	                                    b.coalitions_.end());
}

} // namespace lcg::cfg
