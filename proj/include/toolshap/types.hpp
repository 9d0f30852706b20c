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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/errors.hpp"

namespace toolshap {

// ---- prompts ---------------------------------------------------------------

enum class Domain { math, finance, knowledge, other };

inline std::string to_string(Domain d) {
  switch (d) {
    case Domain::math: return "math";
    case Domain::finance: return "finance";
    case Domain::knowledge: return "knowledge";
    case Domain::other: return "other";
  }
  return "other";
}

inline Domain domain_from_string(const std::string& s) {
  if (s == "math") return Domain::math;
  if (s == "finance") return Domain::finance;
  if (s == "knowledge") return Domain::knowledge;
  if (s == "other") return Domain::other;
  throw ConfigError("unknown domain: " + s);
}

// One benchmark prompt: the text, which domain it belongs to, and which
// tool a competent agent is expected to lean on.
struct PromptCase {
  std::string id;
  std::string text;
  Domain domain = Domain::other;
  std::string expected_tool;

  friend bool operator==(const PromptCase&, const PromptCase&) = default;
};

inline void to_json(nlohmann::json& j, const PromptCase& p) {
  j = nlohmann::json{{"id", p.id},
                     {"text", p.text},
                     {"domain", to_string(p.domain)},
                     {"expected_tool", p.expected_tool}};
}

inline void from_json(const nlohmann::json& j, PromptCase& p) {
  j.at("id").get_to(p.id);
  j.at("text").get_to(p.text);
  p.domain = domain_from_string(j.value("domain", std::string("other")));
  p.expected_tool = j.value("expected_tool", std::string());
}

// ---- agent responses -------------------------------------------------------

enum class ResponseSource { scripted, live, cache };

inline std::string to_string(ResponseSource s) {
  switch (s) {
    case ResponseSource::scripted: return "scripted";
    case ResponseSource::live: return "live";
    case ResponseSource::cache: return "cache";
  }
  return "scripted";
}

struct ToolCall {
  std::string tool;
  nlohmann::json arguments;
  std::string result;

  friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

inline void to_json(nlohmann::json& j, const ToolCall& c) {
  j = nlohmann::json{{"tool", c.tool}, {"arguments", c.arguments}, {"result", c.result}};
}

inline void from_json(const nlohmann::json& j, ToolCall& c) {
  j.at("tool").get_to(c.tool);
  c.arguments = j.value("arguments", nlohmann::json::object());
  c.result = j.value("result", std::string());
}

struct AgentResponse {
  std::string text;
  std::vector<ToolCall> tool_calls_made;
  int turns = 1;
  ResponseSource source = ResponseSource::scripted;
};

// ---- coalition evaluations ---------------------------------------------------

enum class EvalPhase { baseline, leave_one_out, sampled };

inline std::string to_string(EvalPhase p) {
  switch (p) {
    case EvalPhase::baseline: return "baseline";
    case EvalPhase::leave_one_out: return "leave_one_out";
    case EvalPhase::sampled: return "sampled";
  }
  return "sampled";
}

inline EvalPhase eval_phase_from_string(const std::string& s) {
  if (s == "baseline") return EvalPhase::baseline;
  if (s == "leave_one_out") return EvalPhase::leave_one_out;
  if (s == "sampled") return EvalPhase::sampled;
  throw ConfigError("unknown evaluation phase: " + s);
}

// One row of the evaluation log: which subset was run, what the agent said,
// and how close that was to the full-toolkit answer.
struct CoalitionEvaluation {
  std::uint32_t mask = 0;
  std::string coalition_key;
  EvalPhase phase = EvalPhase::sampled;
  double value = 0.0;
  std::string response_text;

  friend bool operator==(const CoalitionEvaluation&, const CoalitionEvaluation&) = default;
};

inline void to_json(nlohmann::json& j, const CoalitionEvaluation& e) {
  j = nlohmann::json{{"mask", e.mask},
                     {"coalition", e.coalition_key},
                     {"phase", to_string(e.phase)},
                     {"value", e.value},
                     {"response_text", e.response_text}};
}

inline void from_json(const nlohmann::json& j, CoalitionEvaluation& e) {
  j.at("mask").get_to(e.mask);
  j.at("coalition").get_to(e.coalition_key);
  e.phase = eval_phase_from_string(j.at("phase").get<std::string>());
  j.at("value").get_to(e.value);
  e.response_text = j.value("response_text", std::string());
}

// ---- estimators --------------------------------------------------------------

enum class EstimatorKind { exact, permutation_mc, subset_mc };

inline std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::exact: return "exact";
    case EstimatorKind::permutation_mc: return "permutation_mc";
    case EstimatorKind::subset_mc: return "subset_mc";
  }
  return "subset_mc";
}

inline EstimatorKind estimator_from_string(const std::string& s) {
  if (s == "exact") return EstimatorKind::exact;
  if (s == "permutation" || s == "permutation_mc") return EstimatorKind::permutation_mc;
  if (s == "subset" || s == "subset_mc") return EstimatorKind::subset_mc;
  throw ConfigError("unknown estimator: " + s);
}

struct EstimatorChoice {
  EstimatorKind kind = EstimatorKind::subset_mc;
  int permutations = 200;  // used by permutation_mc only

  friend bool operator==(const EstimatorChoice&, const EstimatorChoice&) = default;
};

}  // namespace toolshap
