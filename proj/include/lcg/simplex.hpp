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

#ifndef LCG_SIMPLEX_HPP
#define LCG_SIMPLEX_HPP

#include <cstddef>
#include <vector>

namespace lcg::lp {

/// maximize c'x  subject to  A x <= b, x >= 0, with b >= 0 so that the
/// origin is feasible. A is row-major, rows x cols.
struct Problem
{
	std::size_t rows{0};
	std::size_t cols{0};
	std::vector<double> a;
	std::vector<double> b;
	std::vector<double> c;
};

struct Solution
{
	bool bounded{true};
	double objective{0.0};
	std::vector<double> x;
	std::size_t pivots{0};
};

/// Dense primal simplex. Uses the largest-coefficient rule and switches to
/// Bland's rule after a run of degenerate pivots, so it always terminates.
Solution maximize(const Problem& problem);

} // namespace lcg::lp

#endif // LCG_SIMPLEX_HPP
