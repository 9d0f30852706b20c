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
#include <map>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/agent.hpp"
#include "toolshap/executors.hpp"
#include "toolshap/util.hpp"

namespace toolshap {

// One behaviour rule for the scripted agent. A rule fires when its pattern
// matches the prompt AND every required tool is present in the coalition.
// When it fires, each required tool is invoked with its tool_args and the
// response template is rendered with {ToolName} placeholders replaced by the
// corresponding tool result.
struct ScriptRule {
  std::string pattern;
  bool is_regex = false;
  std::vector<std::string> required_tools;
  std::map<std::string, nlohmann::json> tool_args;
  std::string response_template;

  friend bool operator==(const ScriptRule&, const ScriptRule&) = default;
};

inline void to_json(nlohmann::json& j, const ScriptRule& r) {
  j = nlohmann::json{{"pattern", r.pattern},
                     {"is_regex", r.is_regex},
                     {"required_tools", r.required_tools},
                     {"tool_args", r.tool_args},
                     {"response_template", r.response_template}};
}

inline void from_json(const nlohmann::json& j, ScriptRule& r) {
  j.at("pattern").get_to(r.pattern);
  r.is_regex = j.value("is_regex", false);
  r.required_tools = j.value("required_tools", std::vector<std::string>{});
  r.tool_args = j.value("tool_args", std::map<std::string, nlohmann::json>{});
  j.at("response_template").get_to(r.response_template);
}

// A deterministic agent behaviour: an ordered rule list plus a fallback
// response for prompts no rule can serve within the given coalition.
struct AgentScript {
  std::vector<ScriptRule> rules;
  std::string fallback_response;

  std::uint64_t fingerprint() const;
  static AgentScript load(const std::string& path);

  friend bool operator==(const AgentScript&, const AgentScript&) = default;
};

inline void to_json(nlohmann::json& j, const AgentScript& s) {
  j = nlohmann::json{{"rules", s.rules}, {"fallback_response", s.fallback_response}};
}

inline void from_json(const nlohmann::json& j, AgentScript& s) {
  j.at("rules").get_to(s.rules);
  j.at("fallback_response").get_to(s.fallback_response);
}

inline std::uint64_t AgentScript::fingerprint() const {
  const nlohmann::json j = *this;
  return fnv1a64(j.dump());
}

inline AgentScript AgentScript::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script file: " + path);
  nlohmann::json j;
  in >> j;
  return j.get<AgentScript>();
}

// Rule-driven agent. Rules are tried in order; the first whose pattern
// matches and whose required tools are all inside the coalition wins. No
// rule -> fallback. Identical (prompt, coalition) always produces an
// identical response, which is what makes cached and replayed runs exact.
class ScriptedAgent : public Agent {
 public:
  ScriptedAgent(ToolCatalog catalog, AgentScript script)
      : catalog_(std::move(catalog)), script_(std::move(script)) {
    for (const ScriptRule& rule : script_.rules) {
      for (const std::string& tool : rule.required_tools) {
        if (!catalog_.contains(tool)) throw UnknownToolError(tool);
      }
    }
    id_ = "scripted-" + to_hex(catalog_.fingerprint() ^ script_.fingerprint());
  }

  AgentResponse respond(const std::string& prompt,
                        const Coalition& coalition) override {
    require_bound(coalition, catalog_);
    count_call();
    const std::string prompt_lower = detail::ascii_lower(prompt);
    for (const ScriptRule& rule : script_.rules) {
      if (!matches(rule, prompt, prompt_lower)) continue;
      if (!tools_available(rule, coalition)) continue;
      return fire(rule);
    }
    return AgentResponse{script_.fallback_response, {}, 1, ResponseSource::scripted};
  }

  const ToolCatalog& catalog() const override { return catalog_; }
  std::string id() const override { return id_; }
  const AgentScript& script() const { return script_; }

 private:
  static bool matches(const ScriptRule& rule, const std::string& prompt,
                      const std::string& prompt_lower) {
    if (rule.is_regex) {
      return std::regex_search(prompt,
                               std::regex(rule.pattern, std::regex::icase));
    }
    return prompt_lower.find(detail::ascii_lower(rule.pattern)) !=
           std::string::npos;
  }

  bool tools_available(const ScriptRule& rule, const Coalition& coalition) const {
    for (const std::string& tool : rule.required_tools) {
      const auto idx = catalog_.index_of(tool);
      if (!idx || !coalition.contains(*idx)) return false;
    }
    return true;
  }

  AgentResponse fire(const ScriptRule& rule) const {
    AgentResponse response;
    response.source = ResponseSource::scripted;
    std::map<std::string, std::string> results;
    for (const std::string& tool_name : rule.required_tools) {
      const Tool& tool = catalog_.tool(*catalog_.index_of(tool_name));
      const auto args_it = rule.tool_args.find(tool_name);
      const nlohmann::json args = args_it == rule.tool_args.end()
                                      ? nlohmann::json::object()
                                      : args_it->second;
      const std::string result = execute_tool(tool.executor_id, args);
      results[tool_name] = result;
      response.tool_calls_made.push_back(ToolCall{tool_name, args, result});
    }
    response.text = render(rule.response_template, results);
    return response;
  }

  static std::string render(const std::string& tmpl,
                            const std::map<std::string, std::string>& results) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
      if (tmpl[i] == '{') {
        const std::size_t close = tmpl.find('}', i + 1);
        if (close != std::string::npos) {
          const std::string key = tmpl.substr(i + 1, close - i - 1);
          const auto it = results.find(key);
          if (it != results.end()) {
            out += it->second;
            i = close + 1;
            continue;
          }
        }
      }
      out += tmpl[i];
      ++i;
    }
    return out;
  }

  ToolCatalog catalog_;
  AgentScript script_;
  std::string id_;
};

}  // namespace toolshap
