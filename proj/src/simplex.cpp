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

#include <lcg/simplex.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcg::lp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr std::size_t kDegenerateRun = 50;

} // namespace

Solution maximize(const Problem& p)
{
	if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || p.c.size() != p.cols) {
		throw std::invalid_argument("simplex: inconsistent problem dimensions");
	}
	for (double v : p.b) {
		if (!(v >= 0.0)) {
			throw std::invalid_argument("simplex: right-hand side must be non-negative");
		}
	}

	const std::size_t m = p.rows;
	const std::size_t n = p.cols + p.rows;  // structural + slack
	const std::size_t width = n + 1;        // last column holds the rhs
	std::vector<double> t((m + 1) * width, 0.0);
	auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * width + c]; };

	for (std::size_t r = 0; r < m; ++r) {
		for (std::size_t c = 0; c < p.cols; ++c) {
			at(r, c) = p.a[r * p.cols + c];
		}
		at(r, p.cols + r) = 1.0;
		at(r, n) = p.b[r];
	}
	for (std::size_t c = 0; c < p.cols; ++c) {
		at(m, c) = -p.c[c];
	}

	std::vector<std::size_t> basis(m);
	for (std::size_t r = 0; r < m; ++r) {
		basis[r] = p.cols + r;
	}

	Solution sol;
	std::size_t degenerate = 0;
	for (;;) {
		const bool bland = degenerate >= kDegenerateRun;
		std::size_t enter = n;
		double best = -kPivotTol;
		for (std::size_t c = 0; c < n; ++c) {
			const double rc = at(m, c);
			if (rc < best) {
				enter = c;
				if (bland) {
					break;
				}
				best = rc;
			}
		}
		if (enter == n) {
			break;
		}

		std::size_t leave = m;
		double ratio = std::numeric_limits<double>::infinity();
		for (std::size_t r = 0; r < m; ++r) {
			const double coef = at(r, enter);
			if (coef > kPivotTol) {
				const double q = at(r, n) / coef;
				if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && leave < m && basis[r] < basis[leave])) {
					ratio = q;
					leave = r;
				}
			}
		}
		if (leave == m) {
			sol.bounded = false;
			return sol;
		}
		degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;

		const double piv = at(leave, enter);
		for (std::size_t c = 0; c < width; ++c) {
			at(leave, c) /= piv;
		}
		for (std::size_t r = 0; r <= m; ++r) {
			if (r == leave) {
				continue;
			}
			const double f = at(r, enter);
			if (f == 0.0) {
				continue;
			}
			for (std::size_t c = 0; c < width; ++c) {
				at(r, c) -= f * at(leave, c);
			}
		}
		basis[leave] = enter;
		++sol.pivots;
	}

	sol.x.assign(p.cols, 0.0);
	for (std::size_t r = 0; r < m; ++r) {
		if (basis[r] < p.cols) {
			sol.x[basis[r]] = std::max(0.0, at(r, n));
		}
	}
	sol.objective = 0.0;
	for (std::size_t c = 0; c < p.cols; ++c) {
		sol.objective += p.c[c] * sol.x[c];
	}
	return sol;
}

} // namespace lcg::lp
