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

#include <cstdint>
#include <random>
#include <vector>

namespace toolshap {

// Unbiased draw from [0, bound) via rejection sampling. std::uniform_int_
// distribution is implementation-defined, which would tie report bytes to a
// particular standard library; this keeps seeded runs identical everywhere.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // bound == 0 would loop forever; callers guarantee bound >= 1.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

// In-place Fisher-Yates shuffle. Same rationale as uniform_below:
// std::shuffle's draw sequence is not pinned by the standard.
template <typename T>
void fisher_yates(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i)));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace toolshap
