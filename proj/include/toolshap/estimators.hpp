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
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "toolshap/errors.hpp"
#include "toolshap/evaluation.hpp"
#include "toolshap/rng.hpp"

namespace toolshap {

// Attribution scores over all 2^n coalition values: tool i's score is the
// average, over every subset S not containing i, of how much adding i to S
// changes the value, weighted by |S|!(n-|S|-1)!/n!. Needs the full table.
inline std::vector<double> exact_shapley(const ValueTable& table) {
  if (!table.complete()) throw IncompleteTableError();
  const int n = table.n;

  // weight[s] = s!(n-s-1)!/n!, built multiplicatively: weight[0] = 1/n,
  // weight[s] = weight[s-1] * s / (n-s). Exact in intent, floating in carry;
  // well-conditioned for n <= 30.
  std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
  weight[0] = 1.0 / n;
  for (int s = 1; s < n; ++s) {
    weight[static_cast<std::size_t>(s)] =
        weight[static_cast<std::size_t>(s - 1)] * s / (n - s);
  }

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  const std::uint32_t all =
      n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1u);
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    double acc = 0.0;
    for (std::uint32_t s = 0; s <= all; ++s) {
      if (s & bit) continue;
      acc += weight[static_cast<std::size_t>(std::popcount(s))] *
             (table.at(s | bit) - table.at(s));
      if (s == all) break;  // guard the n == 32 wrap, harmless otherwise
    }
    phi[static_cast<std::size_t>(i)] = acc;
  }
  return phi;
}

// Monte Carlo attribution via random orderings: walk each ordering from the
// empty set, crediting every tool with its marginal contribution at the
// moment it joins; average over orderings. Unbiased for the exact scores.
// When all n! orderings fit inside the permutation budget they are
// enumerated instead, making the result exact.
inline std::vector<double> permutation_mc_shapley(
    const std::function<double(std::uint32_t)>& value_oracle, int n,
    int permutations, std::uint64_t seed) {
  if (n < 1) throw EmptyCatalogError();
  if (permutations < 1) throw ConfigError("permutations must be >= 1");

  std::vector<double> marginal_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  const auto walk = [&](const std::vector<int>& ordering) {
    std::uint32_t mask = 0;
    double prev = value_oracle(0);
    for (const int idx : ordering) {
      mask |= std::uint32_t{1} << idx;
      const double next = value_oracle(mask);
      marginal_sum[static_cast<std::size_t>(idx)] += next - prev;
      prev = next;
    }
  };

  // n! without overflow concerns: cap the running product at the budget.
  std::uint64_t factorial = 1;
  bool factorial_fits = true;
  for (int k = 2; k <= n && factorial_fits; ++k) {
    if (factorial > static_cast<std::uint64_t>(permutations) / k) {
      factorial_fits = false;
    } else {
      factorial *= static_cast<std::uint64_t>(k);
    }
  }

  std::uint64_t walked = 0;
  if (factorial_fits && factorial <= static_cast<std::uint64_t>(permutations)) {
    do {
      walk(order);
      ++walked;
    } while (std::next_permutation(order.begin(), order.end()));
  } else {
    std::mt19937_64 rng(seed);
    for (int p = 0; p < permutations; ++p) {
      fisher_yates(order, rng);
      walk(order);
      ++walked;
    }
  }

  std::vector<double> phi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    phi[static_cast<std::size_t>(i)] =
        marginal_sum[static_cast<std::size_t>(i)] / static_cast<double>(walked);
  }
  return phi;
}

// Attribution from a partial table: tool i's score is the mean value of the
// evaluated coalitions containing i minus the mean of those without it. The
// plan's baseline and leave-one-out tiers guarantee both sides are
// populated for every tool. Coarser than the exact scores, but built from
// exactly the evaluations the plan paid for, and it preserves ranking on
// games where one tool carries the answer.
inline std::vector<double> subset_mc_shapley(const ValueTable& table) {
  const int n = table.n;
  if (n < 1) throw EmptyCatalogError();

  std::vector<double> with_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> without_sum(static_cast<std::size_t>(n), 0.0);
  std::vector<std::uint64_t> with_count(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> without_count(static_cast<std::size_t>(n), 0);

  for (const auto& [mask, value] : table.values) {
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if ((mask >> i) & 1u) {
        with_sum[idx] += value;
        ++with_count[idx];
      } else {
        without_sum[idx] += value;
        ++without_count[idx];
      }
    }
  }

  std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double with_mean =
        with_count[idx] ? with_sum[idx] / static_cast<double>(with_count[idx]) : 0.0;
    const double without_mean =
        without_count[idx] ? without_sum[idx] / static_cast<double>(without_count[idx])
                           : 0.0;
    phi[idx] = with_mean - without_mean;
  }
  return phi;
}

// Report-friendly normalization: negative scores clip to zero, the rest
// scale to sum to 1. All-nonpositive input yields the zero vector.
inline std::vector<double> normalize_shares(const std::vector<double>& phi) {
  std::vector<double> shares(phi.size(), 0.0);
  double total = 0.0;
  for (const double v : phi) total += std::max(v, 0.0);
  if (total <= 0.0) return shares;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    shares[i] = std::max(phi[i], 0.0) / total;
  }
  return shares;
}

// Index of the largest score; ties break toward the lower index so results
// are stable across runs and platforms.
inline int argmax_index(const std::vector<double>& phi) {
  if (phi.empty()) throw EmptyCatalogError();
  std::size_t best = 0;
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (phi[i] > phi[best]) best = i;
  }
  return static_cast<int>(best);
}

inline int argmin_index(const std::vector<double>& phi) {
  if (phi.empty()) throw EmptyCatalogError();
  std::size_t best = 0;
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (phi[i] < phi[best]) best = i;
  }
  return static_cast<int>(best);
}

}  // namespace toolshap
