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

#include <fstream>
#include <iostream>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "toolshap/agent.hpp"
#include "toolshap/coalition.hpp"
#include "toolshap/util.hpp"

namespace toolshap {

// Append-only JSONL store of agent responses keyed by
// (agent id, prompt, coalition). Makes repeated analyses of the same
// prompt/catalog pair free, which matters when the agent is a paid API.
//
// The key hashes the prompt but keeps the agent id and coalition readable,
// so a cache file can be audited by eye.
class ResponseCache {
 public:
  ResponseCache() = default;  // in-memory only

  explicit ResponseCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) return;  // no file yet: it will be created on first store
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("text")) {
        // A torn trailing line from a killed process is expected; anything
        // corrupt is skipped so the rest of the cache stays usable.
        std::cerr << "warning: dropping corrupt cache line " << line_no
                  << " in " << path_ << "\n";
        continue;
      }
      entries_[j["key"].get<std::string>()] = j["text"].get<std::string>();
    }
    // A file that does not end in a newline holds a torn fragment; the next
    // append must start on a fresh line, not glue onto it.
    in.clear();
    in.seekg(0, std::ios::end);
    if (in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      needs_newline_ = in.get() != '\n';
    }
  }

  static std::string make_key(const std::string& agent_id,
                              const std::string& prompt,
                              const std::string& coalition_key) {
    // '\x1f' (unit separator) cannot appear in tool names or agent ids.
    return agent_id + '\x1f' + to_hex(fnv1a64(prompt)) + '\x1f' + coalition_key;
  }

  bool lookup(const std::string& key, std::string* text) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    *text = it->second;
    return true;
  }

  void store(const std::string& key, const std::string& text) {
    entries_[key] = text;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) {
      // Losing persistence is worth a warning, not a failed analysis.
      std::cerr << "warning: cannot append to cache file " << path_
                << "; continuing in memory\n";
      path_.clear();
      return;
    }
    if (needs_newline_) {
      out << "\n";
      needs_newline_ = false;
    }
    nlohmann::json j = {{"key", key}, {"text", text}};
    out << j.dump() << "\n";
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::string path_;
  bool needs_newline_ = false;
  std::unordered_map<std::string, std::string> entries_;
};

// Wraps Agent::respond with the cache. Hits are tagged
// ResponseSource::cache and cost zero agent calls.
inline AgentResponse cached_respond(Agent& agent, ResponseCache& cache,
                                    const std::string& prompt,
                                    const Coalition& coalition) {
  const std::string key = ResponseCache::make_key(
      agent.id(), prompt, coalition_key(coalition, agent.catalog()));
  std::string text;
  if (cache.lookup(key, &text)) {
    AgentResponse hit;
    hit.text = text;
    hit.source = ResponseSource::cache;
    return hit;
  }
  AgentResponse fresh = agent.respond(prompt, coalition);
  cache.store(key, fresh.text);
  return fresh;
}

}  // namespace toolshap
