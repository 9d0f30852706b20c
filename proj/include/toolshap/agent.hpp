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

#include <atomic>
#include <cstdint>
#include <string>

#include "toolshap/catalog.hpp"
#include "toolshap/coalition.hpp"
#include "toolshap/types.hpp"

namespace toolshap {

// An agent answers a prompt while confined to a coalition of its catalog's
// tools. Implementations must treat the coalition as a hard boundary: tools
// outside it do not exist for the duration of the call.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual AgentResponse respond(const std::string& prompt,
                                const Coalition& coalition) = 0;

  virtual const ToolCatalog& catalog() const = 0;

  // Stable identifier, used in cache keys. Different behaviours (different
  // script, model, or endpoint) must produce different ids.
  virtual std::string id() const = 0;

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 protected:
  void count_call() { calls_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> calls_{0};
};

}  // namespace toolshap
