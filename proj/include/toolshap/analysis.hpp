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

#include "toolshap/estimators.hpp"
#include "toolshap/evaluation.hpp"
#include "toolshap/plan.hpp"
#include "toolshap/report_io.hpp"

namespace toolshap {

struct AnalysisOptions {
  double rho = 0.5;
  std::uint64_t seed = 11;
  EstimatorChoice estimator{EstimatorKind::subset_mc, 200};
  std::string agent_mode = "scripted";
};

// One end-to-end attribution: plan the coalitions, run the agent over them,
// estimate per-tool scores, normalize shares, and assemble the report.
//
// The exact estimator needs a value for every one of the 2^n coalitions, so
// it ignores the requested sampling ratio and runs the full enumeration;
// the report echoes the effective ratio actually used.
inline ShapleyReport analyze(Agent& agent, SimilarityBackend& backend,
                             ResponseCache& cache, const std::string& prompt,
                             const AnalysisOptions& options) {
  const ToolCatalog& catalog = agent.catalog();
  const double effective_rho =
      options.estimator.kind == EstimatorKind::exact ? 1.0 : options.rho;

  const CoalitionPlan plan =
      build_plan(catalog.size(), effective_rho, options.seed);
  EvaluationRun run = evaluate_plan(agent, backend, prompt, plan, cache);

  std::vector<double> phi;
  switch (options.estimator.kind) {
    case EstimatorKind::exact:
      phi = exact_shapley(run.table);
      break;
    case EstimatorKind::permutation_mc: {
      // The permutation walk may visit coalitions the plan never evaluated;
      // those are computed on demand and appended to the log, so the report
      // still accounts for every agent call.
      const auto oracle = [&](std::uint32_t mask) -> double {
        if (run.table.contains(mask)) return run.table.at(mask);
        const Coalition c{mask, catalog.fingerprint()};
        const std::string key = coalition_key(c, catalog);
        try {
          const AgentResponse resp = cached_respond(agent, cache, prompt, c);
          const double value =
              coalition_value(backend, resp.text, run.baseline_text);
          run.table.values[mask] = value;
          run.log.push_back(
              CoalitionEvaluation{mask, key, EvalPhase::sampled, value, resp.text});
          return value;
        } catch (const Error& e) {
          throw EvaluationFailedError(key, e.what());
        }
      };
      phi = permutation_mc_shapley(oracle, catalog.size(),
                                   options.estimator.permutations, options.seed);
      break;
    }
    case EstimatorKind::subset_mc:
      phi = subset_mc_shapley(run.table);
      break;
  }

  ShapleyReport report;
  report.prompt = prompt;
  report.agent_id = agent.id();
  report.agent_mode = options.agent_mode;
  report.backend = backend.kind();
  report.estimator = options.estimator;
  report.seed = options.seed;
  report.sampling_ratio = effective_rho;
  report.catalog_fingerprint = catalog.fingerprint();
  for (const Tool& t : catalog.tools()) report.tool_names.push_back(t.name);
  report.baseline_text = run.baseline_text;
  report.phi = phi;
  report.shares = normalize_shares(phi);
  report.evaluations = std::move(run.log);
  return report;
}

}  // namespace toolshap
