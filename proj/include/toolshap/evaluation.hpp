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
#include <map>
#include <string>
#include <vector>

#include "toolshap/agent.hpp"
#include "toolshap/coalition.hpp"
#include "toolshap/plan.hpp"
#include "toolshap/response_cache.hpp"
#include "toolshap/similarity.hpp"
#include "toolshap/types.hpp"

namespace toolshap {

// Sparse value table: mask -> v(mask). Complete when every one of the 2^n
// masks has an entry, which the exact estimator requires.
struct ValueTable {
  int n = 0;
  std::map<std::uint32_t, double> values;

  bool contains(std::uint32_t mask) const { return values.count(mask) != 0; }

  double at(std::uint32_t mask) const {
    const auto it = values.find(mask);
    if (it == values.end()) throw IncompleteTableError();
    return it->second;
  }

  bool complete() const {
    return values.size() == (std::uint64_t{1} << n);
  }
};

// Everything one pass over a plan produces: the numeric table for the
// estimators and the human-readable log for the report.
struct EvaluationRun {
  ValueTable table;
  std::vector<CoalitionEvaluation> log;
  std::string baseline_text;
};

// Runs the plan: ask the agent for the full-toolkit answer once, then score
// every other planned coalition's answer against it. Rows land in the log
// in plan order (baseline, leave-one-out by tool index, then samples), so
// two runs with equal plans produce byte-identical logs.
inline EvaluationRun evaluate_plan(Agent& agent, SimilarityBackend& backend,
                                   const std::string& prompt,
                                   const CoalitionPlan& plan,
                                   ResponseCache& cache) {
  const ToolCatalog& catalog = agent.catalog();
  EvaluationRun run;
  run.table.n = plan.n;

  const Coalition full{plan.baseline_mask, catalog.fingerprint()};
  const std::string full_key = coalition_key(full, catalog);
  try {
    run.baseline_text = cached_respond(agent, cache, prompt, full).text;
  } catch (const Error& e) {
    throw EvaluationFailedError(full_key, e.what());
  }
  // By construction v(T) = sim(answer, answer) = 1; recorded, not assumed,
  // so the report shows the backend's own self-similarity.
  double full_value = 1.0;
  try {
    full_value = coalition_value(backend, run.baseline_text, run.baseline_text);
  } catch (const Error& e) {
    throw EvaluationFailedError(full_key, e.what());
  }
  run.table.values[plan.baseline_mask] = full_value;
  run.log.push_back(CoalitionEvaluation{plan.baseline_mask, full_key,
                                        EvalPhase::baseline, full_value,
                                        run.baseline_text});

  const auto evaluate_one = [&](std::uint32_t mask, EvalPhase phase) {
    const Coalition c{mask, catalog.fingerprint()};
    const std::string key = coalition_key(c, catalog);
    try {
      const AgentResponse resp = cached_respond(agent, cache, prompt, c);
      const double value =
          coalition_value(backend, resp.text, run.baseline_text);
      run.table.values[mask] = value;
      run.log.push_back(
          CoalitionEvaluation{mask, key, phase, value, resp.text});
    } catch (const EvaluationFailedError&) {
      throw;
    } catch (const Error& e) {
      throw EvaluationFailedError(key, e.what());
    }
  };

  for (const std::uint32_t mask : plan.leave_one_out) {
    evaluate_one(mask, EvalPhase::leave_one_out);
  }
  for (const std::uint32_t mask : plan.sampled) {
    evaluate_one(mask, EvalPhase::sampled);
  }
  return run;
}

}  // namespace toolshap
