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
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/errors.hpp"
#include "toolshap/util.hpp"

namespace toolshap {

// One parameter in a tool's call schema.
struct ToolParam {
  std::string name;
  std::string type;  // "string" | "number" | "boolean"
  bool required = true;

  friend bool operator==(const ToolParam&, const ToolParam&) = default;
};

inline void to_json(nlohmann::json& j, const ToolParam& p) {
  j = nlohmann::json{{"name", p.name}, {"type", p.type}, {"required", p.required}};
}

inline void from_json(const nlohmann::json& j, ToolParam& p) {
  j.at("name").get_to(p.name);
  j.at("type").get_to(p.type);
  p.required = j.value("required", true);
}

// A callable tool as the agent sees it: name + description are what a model
// conditions on, schema is the declared argument list, executor_id selects
// the function that actually runs when the tool is called.
struct Tool {
  std::string name;
  std::string description;
  std::vector<ToolParam> schema;
  std::string executor_id;

  friend bool operator==(const Tool&, const Tool&) = default;
};

inline void to_json(nlohmann::json& j, const Tool& t) {
  j = nlohmann::json{{"name", t.name},
                     {"description", t.description},
                     {"schema", t.schema},
                     {"executor_id", t.executor_id}};
}

inline void from_json(const nlohmann::json& j, Tool& t) {
  j.at("name").get_to(t.name);
  j.at("description").get_to(t.description);
  t.schema = j.value("schema", std::vector<ToolParam>{});
  j.at("executor_id").get_to(t.executor_id);
}

// Ordered, immutable-after-construction set of tools. Tool order is
// significant: bit i of a coalition mask refers to tools()[i].
class ToolCatalog {
 public:
  static constexpr int kMaxTools = 30;

  ToolCatalog() = default;

  explicit ToolCatalog(std::vector<Tool> tools) : tools_(std::move(tools)) {
    if (tools_.empty()) throw EmptyCatalogError();
    if (tools_.size() > static_cast<std::size_t>(kMaxTools)) {
      throw CatalogTooLargeError(static_cast<int>(tools_.size()));
    }
    std::set<std::string> seen;
    for (const Tool& t : tools_) {
      if (!seen.insert(t.name).second) throw DuplicateNameError(t.name);
    }
    fingerprint_ = fnv1a64(canonical_json().dump());
  }

  static ToolCatalog from_json(const nlohmann::json& j) {
    return ToolCatalog(j.at("tools").get<std::vector<Tool>>());
  }

  static ToolCatalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"tools", tools_}};
  }

  int size() const { return static_cast<int>(tools_.size()); }
  const std::vector<Tool>& tools() const { return tools_; }
  const Tool& tool(int i) const { return tools_.at(static_cast<std::size_t>(i)); }

  std::optional<int> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < tools_.size(); ++i) {
      if (tools_[i].name == name) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool contains(const std::string& name) const { return index_of(name).has_value(); }

  // Stable across processes and platforms; coalitions carry it so a mask can
  // never be applied to the wrong catalog.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  nlohmann::json canonical_json() const {
    // Only identity-bearing fields enter the fingerprint, in tool order.
    nlohmann::json arr = nlohmann::json::array();
    for (const Tool& t : tools_) {
      nlohmann::json params = nlohmann::json::array();
      for (const ToolParam& p : t.schema) {
        params.push_back({p.name, p.type, p.required});
      }
      arr.push_back({t.name, t.description, params, t.executor_id});
    }
    return arr;
  }

  std::vector<Tool> tools_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace toolshap
