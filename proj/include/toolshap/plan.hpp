// Copyright 2026 The toolshap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "toolshap/errors.hpp"
#include "toolshap/rng.hpp"

namespace toolshap {

// Which coalitions to evaluate for one analysis, decided up front so the
// total cost is known before the first agent call. Three tiers:
//   - the full toolkit (reference answer),
//   - every leave-one-out subset (one per tool),
//   - m distinct subsets of size <= n-2 drawn without replacement, where
//     m = floor(rho * (2^n - n - 1)) and the pool includes the empty set.
// rho = 1 therefore covers every subset; the evaluation budget scales
// linearly in rho: 1 + n + m calls in total.
struct CoalitionPlan {
  int n = 0;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::uint32_t baseline_mask = 0;
  std::vector<std::uint32_t> leave_one_out;  // index i -> full minus tool i
  std::vector<std::uint32_t> sampled;        // plan order = evaluation order

  std::size_t total_evaluations() const {
    return 1 + leave_one_out.size() + sampled.size();
  }
};

inline CoalitionPlan build_plan(int n, double rho, std::uint64_t seed) {
  if (n < 1 || n > 30) {
    throw CatalogTooLargeError(n);  // also rejects n < 1; message names the count
  }
  if (!(rho > 0.0) || rho > 1.0) throw InvalidRhoError(rho);

  CoalitionPlan plan;
  plan.n = n;
  plan.rho = rho;
  plan.seed = seed;
  plan.baseline_mask =
      n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1u);

  plan.leave_one_out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    plan.leave_one_out.push_back(plan.baseline_mask & ~(std::uint32_t{1} << i));
  }

  // Pool: all masks of popcount <= n-2, empty set included. Everything
  // except the full set and the n leave-one-out sets (the only masks of
  // popcount n and n-1), so |pool| = 2^n - n - 1.
  const std::uint64_t pool_size = (std::uint64_t{1} << n) - static_cast<std::uint64_t>(n) - 1;
  const std::uint64_t m = static_cast<std::uint64_t>(
      std::floor(rho * static_cast<double>(pool_size)));
  if (m == 0) return plan;

  std::mt19937_64 rng(seed);
  if (pool_size <= (std::uint64_t{1} << 20)) {
    // Small pool: materialize, partially shuffle, take a prefix. Gives an
    // exact uniform sample without replacement.
    std::vector<std::uint32_t> pool;
    pool.reserve(pool_size);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      if (std::popcount(mask) <= n - 2) pool.push_back(mask);
    }
    fisher_yates(pool, rng);
    plan.sampled.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    // Large pool: rejection-sample distinct masks. rho <= 1 keeps the
    // acceptance rate workable for any n we allow.
    std::set<std::uint32_t> chosen;
    while (chosen.size() < m) {
      const auto mask = static_cast<std::uint32_t>(
          uniform_below(rng, std::uint64_t{1} << n));
      if (std::popcount(mask) > n - 2) continue;
      if (chosen.insert(mask).second) plan.sampled.push_back(mask);
    }
  }
  return plan;
}

}  // namespace toolshap
