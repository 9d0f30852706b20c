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

#include <string>
#include <vector>

#include "toolshap/catalog.hpp"
#include "toolshap/report_io.hpp"
#include "toolshap/script_agent.hpp"
#include "toolshap/types.hpp"

// Built-in demo material: three catalogs, a scripted agent behaviour, and
// prompt suites for each evaluation protocol. Designed so every prompt has
// exactly one tool whose presence changes the answer, which gives the test
// suite known-true attributions to check against. `toolshap init` writes
// all of it to disk as editable JSON.

namespace toolshap::bundled {

// ---- catalogs ---------------------------------------------------------------

inline std::vector<Tool> core_tools() {
  return {
      Tool{"Calculator",
           "Evaluates arithmetic expressions with +, -, *, / and parentheses.",
           {ToolParam{"expression", "string", true}},
           "calc.eval"},
      Tool{"QueryStock",
           "Returns the latest stock price for a ticker symbol.",
           {ToolParam{"symbol", "string", true}},
           "stock.quote"},
      Tool{"Wiki",
           "Looks up a short encyclopedia summary for a topic.",
           {ToolParam{"topic", "string", true}},
           "wiki.lookup"},
  };
}

// Three tools, one per bundled domain.
inline ToolCatalog core_catalog() { return ToolCatalog(core_tools()); }

// Core three plus four tools no bundled prompt ever needs.
inline ToolCatalog injection_catalog() {
  std::vector<Tool> tools = core_tools();
  tools.push_back(Tool{"AddAlarm",
                       "Sets an alarm for the given time.",
                       {ToolParam{"time", "string", true}},
                       "alarm.add"});
  tools.push_back(Tool{"AddReminder",
                       "Saves a reminder note.",
                       {ToolParam{"text", "string", true}},
                       "reminder.add"});
  tools.push_back(Tool{"PlayMusic",
                       "Plays the named track.",
                       {ToolParam{"track", "string", true}},
                       "music.play"});
  tools.push_back(Tool{"BookHotel",
                       "Books a room at the named hotel.",
                       {ToolParam{"name", "string", true}},
                       "hotel.book"});
  return ToolCatalog(std::move(tools));
}

// Core three plus three off-domain tools; used by the cross-domain protocol.
inline ToolCatalog cross_domain_catalog() {
  std::vector<Tool> tools = core_tools();
  tools.push_back(Tool{"AddAlarm",
                       "Sets an alarm for the given time.",
                       {ToolParam{"time", "string", true}},
                       "alarm.add"});
  tools.push_back(Tool{"PlayMusic",
                       "Plays the named track.",
                       {ToolParam{"track", "string", true}},
                       "music.play"});
  tools.push_back(Tool{"Translate",
                       "Translates text into the target language.",
                       {ToolParam{"text", "string", true},
                        ToolParam{"target", "string", true}},
                       "translate.text"});
  return ToolCatalog(std::move(tools));
}

// ---- scripted behaviour -----------------------------------------------------

// One rule per bundled prompt. The fallback shares no token with any rendered
// rule template, so "answer lost" registers as similarity 0 under the
// term-frequency backend — handy for tests that need exact drops.
inline AgentScript script() {
  AgentScript s;
  s.fallback_response = "Cannot help; toolkit unavailable.";
  const auto rule = [](std::string pattern, std::string tool,
                       nlohmann::json args, std::string tmpl) {
    ScriptRule r;
    r.pattern = std::move(pattern);
    r.required_tools = {tool};
    r.tool_args[tool] = std::move(args);
    r.response_template = std::move(tmpl);
    return r;
  };
  s.rules = {
      rule("(5+6)*3", "Calculator", {{"expression", "(5+6)*3"}},
           "Calculator computed: {Calculator}"),
      rule("12*(7-3)", "Calculator", {{"expression", "12*(7-3)"}},
           "Calculator computed: {Calculator}"),
      rule("(9+15)/4", "Calculator", {{"expression", "(9+15)/4"}},
           "Calculator computed: {Calculator}"),
      rule("price of ACME", "QueryStock", {{"symbol", "ACME"}},
           "QueryStock reports {QueryStock}"),
      rule("price of AAPL", "QueryStock", {{"symbol", "AAPL"}},
           "QueryStock reports {QueryStock}"),
      rule("price of MSFT", "QueryStock", {{"symbol", "MSFT"}},
           "QueryStock reports {QueryStock}"),
      rule("photosynthesis", "Wiki", {{"topic", "photosynthesis"}},
           "Wiki entry: {Wiki}"),
      rule("Eiffel Tower", "Wiki", {{"topic", "Eiffel Tower"}},
           "Wiki entry: {Wiki}"),
      rule("quantum entanglement", "Wiki", {{"topic", "quantum entanglement"}},
           "Wiki entry: {Wiki}"),
  };
  return s;
}

// ---- prompt suites ------------------------------------------------------------

// Nine prompts, three per domain; the consistency and cross-domain suites.
inline std::vector<PromptCase> consistency_suite() {
  return {
      PromptCase{"math-1", "Calculate (5+6)*3", Domain::math, "Calculator"},
      PromptCase{"math-2", "Calculate 12*(7-3)", Domain::math, "Calculator"},
      PromptCase{"math-3", "Calculate (9+15)/4", Domain::math, "Calculator"},
      PromptCase{"finance-1", "What is the stock price of ACME?",
                 Domain::finance, "QueryStock"},
      PromptCase{"finance-2", "What is the stock price of AAPL?",
                 Domain::finance, "QueryStock"},
      PromptCase{"finance-3", "What is the stock price of MSFT?",
                 Domain::finance, "QueryStock"},
      PromptCase{"knowledge-1", "Tell me about photosynthesis.",
                 Domain::knowledge, "Wiki"},
      PromptCase{"knowledge-2", "Tell me about the Eiffel Tower.",
                 Domain::knowledge, "Wiki"},
      PromptCase{"knowledge-3", "Tell me about quantum entanglement.",
                 Domain::knowledge, "Wiki"},
  };
}

// Seven prompts used against the distractor-heavy catalog.
inline std::vector<PromptCase> injection_suite() {
  const std::vector<PromptCase> base = consistency_suite();
  return {base[0], base[1], base[2], base[3], base[4], base[6], base[7]};
}

inline std::vector<PromptCase> cross_domain_suite() { return consistency_suite(); }

inline std::vector<std::uint64_t> default_seeds() { return {11, 23, 47}; }

// ---- disk form -----------------------------------------------------------------

inline nlohmann::json suite_to_json(const std::vector<PromptCase>& suite) {
  return nlohmann::json{{"prompts", suite}};
}

// Writes every bundled piece plus a ready-to-run config into dir. The file
// names here are the ones the written config refers to.
inline void write_bundle(const std::string& dir) {
  write_text_atomic(dir + "/core_catalog.json",
                    core_catalog().to_json().dump(2) + "\n");
  write_text_atomic(dir + "/injection_catalog.json",
                    injection_catalog().to_json().dump(2) + "\n");
  write_text_atomic(dir + "/cross_domain_catalog.json",
                    cross_domain_catalog().to_json().dump(2) + "\n");
  write_text_atomic(dir + "/script.json",
                    nlohmann::json(script()).dump(2) + "\n");
  write_text_atomic(dir + "/consistency_suite.json",
                    suite_to_json(consistency_suite()).dump(2) + "\n");
  write_text_atomic(dir + "/injection_suite.json",
                    suite_to_json(injection_suite()).dump(2) + "\n");
  write_text_atomic(dir + "/cross_domain_suite.json",
                    suite_to_json(cross_domain_suite()).dump(2) + "\n");

  const nlohmann::json config = {
      {"catalog_path", "core_catalog.json"},
      {"script_path", "script.json"},
      {"prompt", "Calculate (5+6)*3"},
      {"prompt_suite_path", "consistency_suite.json"},
      {"agent_mode", "scripted"},
      {"backend", "tf_cosine"},
      {"estimator", "subset_mc"},
      {"permutations", 200},
      {"rho", 0.5},
      {"seed", 11},
      {"runs", 3},
      {"seeds", default_seeds()},
      {"output_dir", "out"},
      {"experiment_catalogs",
       {{"consistency", "core_catalog.json"},
        {"faithfulness", "core_catalog.json"},
        {"injection", "injection_catalog.json"},
        {"cross_domain", "cross_domain_catalog.json"}}},
      {"experiment_suites",
       {{"consistency", "consistency_suite.json"},
        {"faithfulness", "consistency_suite.json"},
        {"injection", "injection_suite.json"},
        {"cross_domain", "cross_domain_suite.json"}}},
  };
  write_text_atomic(dir + "/config.json", config.dump(2) + "\n");
}

}  // namespace toolshap::bundled
