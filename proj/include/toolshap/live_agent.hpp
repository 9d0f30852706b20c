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

#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "toolshap/agent.hpp"
#include "toolshap/executors.hpp"

namespace toolshap {

// Connection settings for an OpenAI-style chat-completions endpoint.
// api_key_env names an environment variable; the key itself never appears in
// config files or reports.
struct LiveAgentConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8080/v1"
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  int max_turns = 4;
  int request_timeout_s = 60;
  int max_retries = 2;
  double temperature = 0.0;
};

inline void to_json(nlohmann::json& j, const LiveAgentConfig& c) {
  j = nlohmann::json{{"base_url", c.base_url},
                     {"model", c.model},
                     {"api_key_env", c.api_key_env},
                     {"max_turns", c.max_turns},
                     {"request_timeout_s", c.request_timeout_s},
                     {"max_retries", c.max_retries},
                     {"temperature", c.temperature}};
}

inline void from_json(const nlohmann::json& j, LiveAgentConfig& c) {
  // Presence requirements live in RunConfig::load, which can name the field
  // in a proper error; here every key is optional.
  c.base_url = j.value("base_url", std::string());
  c.model = j.value("model", std::string());
  c.api_key_env = j.value("api_key_env", std::string("OPENAI_API_KEY"));
  c.max_turns = j.value("max_turns", 4);
  c.request_timeout_s = j.value("request_timeout_s", 60);
  c.max_retries = j.value("max_retries", 2);
  c.temperature = j.value("temperature", 0.0);
}

namespace detail {

// Splits "http://host:port/prefix" into the client origin and path prefix.
struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path part, no trailing slash
};

inline ParsedUrl parse_base_url(const std::string& base_url) {
  const std::size_t scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base_url must include a scheme: " + base_url);
  }
  const std::size_t path_start = base_url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string::npos) {
    out.origin = base_url;
  } else {
    out.origin = base_url.substr(0, path_start);
    out.prefix = base_url.substr(path_start);
  }
  while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  return out;
}

// Tool declarations in the chat-completions "functions as tools" format.
inline nlohmann::json tool_declarations(const ToolCatalog& catalog,
                                        const Coalition& coalition) {
  nlohmann::json tools = nlohmann::json::array();
  for (int i = 0; i < catalog.size(); ++i) {
    if (!coalition.contains(i)) continue;
    const Tool& t = catalog.tool(i);
    nlohmann::json properties = nlohmann::json::object();
    nlohmann::json required = nlohmann::json::array();
    for (const ToolParam& p : t.schema) {
      properties[p.name] = {{"type", p.type}};
      if (p.required) required.push_back(p.name);
    }
    tools.push_back({{"type", "function"},
                     {"function",
                      {{"name", t.name},
                       {"description", t.description},
                       {"parameters",
                        {{"type", "object"},
                         {"properties", properties},
                         {"required", required}}}}}});
  }
  return tools;
}

}  // namespace detail

// Drives one prompt through a chat-completions tool loop: send messages,
// execute any tool calls the model makes (confined to the coalition), feed
// results back, and stop at the first plain-text answer. Transport failures
// are retried up to config.max_retries before giving up; a model that keeps
// calling tools past max_turns is an error, not an answer.
inline AgentResponse run_tool_loop(const LiveAgentConfig& config,
                                   const ToolCatalog& catalog,
                                   const Coalition& coalition,
                                   const std::string& prompt) {
  const detail::ParsedUrl url = detail::parse_base_url(config.base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(config.request_timeout_s);
  client.set_read_timeout(config.request_timeout_s);

  httplib::Headers headers;
  if (const char* key = std::getenv(config.api_key_env.c_str());
      key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const nlohmann::json tools = detail::tool_declarations(catalog, coalition);
  nlohmann::json messages = nlohmann::json::array();
  messages.push_back({{"role", "user"}, {"content", prompt}});

  AgentResponse response;
  response.source = ResponseSource::live;

  for (int turn = 1; turn <= config.max_turns; ++turn) {
    response.turns = turn;
    nlohmann::json body = {{"model", config.model},
                           {"messages", messages},
                           {"temperature", config.temperature}};
    if (!tools.empty()) {
      body["tools"] = tools;
      body["tool_choice"] = "auto";
    }

    nlohmann::json reply;
    std::string last_failure;
    bool got_reply = false;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
      auto res = client.Post(url.prefix + "/chat/completions", headers,
                             body.dump(), "application/json");
      if (!res) {
        last_failure = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_failure = "HTTP " + std::to_string(res->status);
        continue;
      }
      reply = nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (reply.is_discarded() || !reply.contains("choices") ||
          reply["choices"].empty()) {
        last_failure = "unparseable completion body";
        continue;
      }
      got_reply = true;
      break;
    }
    if (!got_reply) throw AgentUnavailableError(last_failure);

    const nlohmann::json& message = reply["choices"][0]["message"];
    // The assistant turn goes back into the transcript verbatim, so the
    // model sees exactly what it produced (including its tool_calls block).
    messages.push_back(message);

    if (!message.contains("tool_calls") || message["tool_calls"].empty()) {
      response.text = message.value("content", "");
      return response;
    }

    for (const nlohmann::json& call : message["tool_calls"]) {
      const std::string call_id = call.value("id", "");
      const std::string name = call.contains("function")
                                   ? call["function"].value("name", "")
                                   : "";
      const std::string raw_args = call.contains("function")
                                       ? call["function"].value("arguments", "{}")
                                       : "{}";
      std::string result;
      nlohmann::json args =
          nlohmann::json::parse(raw_args, nullptr, /*allow_exceptions=*/false);
      const auto idx = catalog.index_of(name);
      if (!idx || !coalition.contains(*idx)) {
        // A tool outside the coalition does not exist for this call. Tell
        // the model so instead of failing the whole evaluation.
        result = "error: no such tool: " + name;
        args = nlohmann::json::object();
      } else if (args.is_discarded() || !args.is_object()) {
        result = "error: tool arguments were not a JSON object";
        args = nlohmann::json::object();
      } else {
        result = execute_tool(catalog.tool(*idx).executor_id, args);
      }
      response.tool_calls_made.push_back(ToolCall{name, args, result});
      messages.push_back({{"role", "tool"},
                          {"tool_call_id", call_id},
                          {"content", result}});
    }
  }
  throw MaxTurnsExceededError(config.max_turns);
}

// Agent backed by a live chat-completions endpoint.
class LiveAgent : public Agent {
 public:
  LiveAgent(ToolCatalog catalog, LiveAgentConfig config)
      : catalog_(std::move(catalog)), config_(std::move(config)) {
    id_ = "live-" + config_.model + "-" + to_hex(catalog_.fingerprint());
  }

  AgentResponse respond(const std::string& prompt,
                        const Coalition& coalition) override {
    require_bound(coalition, catalog_);
    count_call();
    return run_tool_loop(config_, catalog_, coalition, prompt);
  }

  const ToolCatalog& catalog() const override { return catalog_; }
  std::string id() const override { return id_; }
  const LiveAgentConfig& config() const { return config_; }

 private:
  ToolCatalog catalog_;
  LiveAgentConfig config_;
  std::string id_;
};

}  // namespace toolshap
