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

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/analysis.hpp"
#include "toolshap/render.hpp"

namespace toolshap {

// Settings shared by the four evaluation protocols. One full analysis runs
// per (prompt, seed) pair; seeds.size() must equal runs.
struct ExperimentConfig {
  std::vector<PromptCase> suite;
  int runs = 3;
  double rho = 0.5;
  EstimatorChoice estimator{EstimatorKind::subset_mc, 200};
  std::vector<std::uint64_t> seeds{11, 23, 47};
  std::string agent_mode = "scripted";

  void validate() const {
    if (suite.empty()) throw ConfigError("experiment suite holds no prompts");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (seeds.size() != static_cast<std::size_t>(runs)) {
      throw ConfigError("seeds list length (" + std::to_string(seeds.size()) +
                        ") must equal runs (" + std::to_string(runs) + ")");
    }
  }
};

// Execution dependencies plus an optional output directory. When out_dir is
// set, each per-prompt analysis lands in {out_dir}/{prompt_id}/run{k}.json
// and the protocol's summary in {out_dir}/metrics.json.
struct ExperimentContext {
  Agent* agent = nullptr;
  SimilarityBackend* backend = nullptr;
  ResponseCache* cache = nullptr;
  std::string out_dir;
};

// Aggregated outcome of one protocol. Fields other than top1_accuracy are
// protocol-specific and stay unset (absent from JSON) elsewhere.
struct ExperimentMetrics {
  std::string experiment;
  double top1_accuracy = 0.0;
  std::vector<double> stability_cosines;
  std::optional<double> mean_stability;
  std::optional<double> quality_drop_high;
  std::optional<double> quality_drop_low;
  std::optional<double> shap_gap;
  std::optional<double> shap_ratio;
  std::map<std::string, std::map<std::string, double>> domain_tool_matrix;
  nlohmann::json details = nlohmann::json::array();  // per-(prompt, run) rows
};

inline void to_json(nlohmann::json& j, const ExperimentMetrics& m) {
  j = nlohmann::json{{"experiment", m.experiment},
                     {"top1_accuracy", m.top1_accuracy},
                     {"details", m.details}};
  if (!m.stability_cosines.empty()) j["stability_cosines"] = m.stability_cosines;
  if (m.mean_stability) j["mean_stability"] = *m.mean_stability;
  if (m.quality_drop_high) j["quality_drop_high"] = *m.quality_drop_high;
  if (m.quality_drop_low) j["quality_drop_low"] = *m.quality_drop_low;
  if (m.shap_gap) j["shap_gap"] = *m.shap_gap;
  if (m.shap_ratio) j["shap_ratio"] = *m.shap_ratio;
  if (!m.domain_tool_matrix.empty()) j["domain_tool_matrix"] = m.domain_tool_matrix;
}

// Cosine between two per-tool score vectors; the consistency protocol's
// run-to-run agreement measure.
inline double shap_vector_cosine(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ZeroVectorError();
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace detail {

inline AnalysisOptions options_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  AnalysisOptions opts;
  opts.rho = cfg.rho;
  opts.seed = seed;
  opts.estimator = cfg.estimator;
  opts.agent_mode = cfg.agent_mode;
  return opts;
}

inline void maybe_write_run_report(const ExperimentContext& ctx,
                                   const std::string& prompt_id, int run_index,
                                   const ShapleyReport& report) {
  if (ctx.out_dir.empty()) return;
  write_report(report, ctx.out_dir + "/" + prompt_id + "/run" +
                           std::to_string(run_index + 1) + ".json");
}

inline void maybe_write_metrics(const ExperimentContext& ctx,
                                const ExperimentMetrics& metrics) {
  if (ctx.out_dir.empty()) return;
  write_text_atomic(ctx.out_dir + "/metrics.json",
                    nlohmann::json(metrics).dump(2) + "\n");
}

inline bool top1_hit(const ShapleyReport& report, const std::string& expected) {
  const int best = argmax_index(report.phi);
  return report.tool_names[static_cast<std::size_t>(best)] == expected;
}

}  // namespace detail

// Protocol 1 — run-to-run consistency. Repeats every analysis under each
// seed and reports (a) all pairwise cosines between a prompt's per-run
// score vectors and (b) how often the top-scored tool is the expected one.
inline ExperimentMetrics run_consistency(const ExperimentConfig& cfg,
                                         const ExperimentContext& ctx) {
  cfg.validate();
  if (cfg.runs < 2) throw ConfigError("consistency needs runs >= 2");

  ExperimentMetrics metrics;
  metrics.experiment = "consistency";
  std::uint64_t hits = 0, total = 0;

  for (const PromptCase& prompt : cfg.suite) {
    std::vector<std::vector<double>> run_phis;
    for (int k = 0; k < cfg.runs; ++k) {
      const ShapleyReport report =
          analyze(*ctx.agent, *ctx.backend, *ctx.cache, prompt.text,
                  detail::options_for(cfg, cfg.seeds[static_cast<std::size_t>(k)]));
      detail::maybe_write_run_report(ctx, prompt.id, k, report);
      run_phis.push_back(report.phi);
      const bool hit = detail::top1_hit(report, prompt.expected_tool);
      hits += hit ? 1 : 0;
      ++total;
      metrics.details.push_back({{"prompt_id", prompt.id},
                                 {"run", k + 1},
                                 {"seed", cfg.seeds[static_cast<std::size_t>(k)]},
                                 {"phi", report.phi},
                                 {"top1", hit}});
    }
    for (std::size_t a = 0; a < run_phis.size(); ++a) {
      for (std::size_t b = a + 1; b < run_phis.size(); ++b) {
        metrics.stability_cosines.push_back(
            shap_vector_cosine(run_phis[a], run_phis[b]));
      }
    }
  }

  double sum = 0.0;
  for (const double c : metrics.stability_cosines) sum += c;
  metrics.mean_stability =
      metrics.stability_cosines.empty()
          ? 1.0
          : sum / static_cast<double>(metrics.stability_cosines.size());
  metrics.top1_accuracy = static_cast<double>(hits) / static_cast<double>(total);
  detail::maybe_write_metrics(ctx, metrics);
  return metrics;
}

// Protocol 2 — faithfulness. If the scores mean anything, removing the
// top-scored tool should hurt the answer and removing the bottom-scored
// tool should not. quality_drop = 1 - sim(answer without the tool,
// full-toolkit answer), averaged separately over high and low removals.
inline ExperimentMetrics run_faithfulness(const ExperimentConfig& cfg,
                                          const ExperimentContext& ctx) {
  cfg.validate();
  ExperimentMetrics metrics;
  metrics.experiment = "faithfulness";
  const ToolCatalog& catalog = ctx.agent->catalog();

  double drop_high_sum = 0.0, drop_low_sum = 0.0;
  std::uint64_t hits = 0, total = 0;

  for (const PromptCase& prompt : cfg.suite) {
    for (int k = 0; k < cfg.runs; ++k) {
      const ShapleyReport report =
          analyze(*ctx.agent, *ctx.backend, *ctx.cache, prompt.text,
                  detail::options_for(cfg, cfg.seeds[static_cast<std::size_t>(k)]));
      detail::maybe_write_run_report(ctx, prompt.id, k, report);

      const int high = argmax_index(report.phi);
      const int low = argmin_index(report.phi);
      const auto drop_without = [&](int tool_index) {
        Coalition c = full_coalition(catalog);
        c.mask &= ~(std::uint32_t{1} << tool_index);
        const AgentResponse resp =
            cached_respond(*ctx.agent, *ctx.cache, prompt.text, c);
        return 1.0 - ctx.backend->similarity(resp.text, report.baseline_text);
      };
      const double drop_high = drop_without(high);
      const double drop_low = drop_without(low);
      drop_high_sum += drop_high;
      drop_low_sum += drop_low;

      const bool hit = detail::top1_hit(report, prompt.expected_tool);
      hits += hit ? 1 : 0;
      ++total;
      metrics.details.push_back(
          {{"prompt_id", prompt.id},
           {"run", k + 1},
           {"removed_high", report.tool_names[static_cast<std::size_t>(high)]},
           {"removed_low", report.tool_names[static_cast<std::size_t>(low)]},
           {"quality_drop_high", drop_high},
           {"quality_drop_low", drop_low},
           {"top1", hit}});
    }
  }

  metrics.quality_drop_high = drop_high_sum / static_cast<double>(total);
  metrics.quality_drop_low = drop_low_sum / static_cast<double>(total);
  metrics.top1_accuracy = static_cast<double>(hits) / static_cast<double>(total);
  detail::maybe_write_metrics(ctx, metrics);
  return metrics;
}

// Protocol 3 — distractor injection. The catalog mixes task-relevant tools
// with tools no prompt needs (any tool that is not some prompt's
// expected_tool counts as a distractor). Reports the mean score gap
// between expected tools and distractors, the corresponding ratio when the
// distractor mean is positive, and top-1 accuracy.
inline ExperimentMetrics run_injection(const ExperimentConfig& cfg,
                                       const ExperimentContext& ctx) {
  cfg.validate();
  ExperimentMetrics metrics;
  metrics.experiment = "injection";
  const ToolCatalog& catalog = ctx.agent->catalog();

  std::set<std::string> expected_tools;
  for (const PromptCase& prompt : cfg.suite) {
    expected_tools.insert(prompt.expected_tool);
  }
  std::vector<int> distractor_indices;
  for (int i = 0; i < catalog.size(); ++i) {
    if (!expected_tools.count(catalog.tool(i).name)) {
      distractor_indices.push_back(i);
    }
  }
  if (distractor_indices.empty()) {
    throw ConfigError("injection suite expects every catalog tool; no distractors");
  }

  double expected_sum = 0.0, distractor_sum = 0.0;
  std::uint64_t expected_count = 0, distractor_count = 0;
  std::uint64_t hits = 0, total = 0;

  for (const PromptCase& prompt : cfg.suite) {
    for (int k = 0; k < cfg.runs; ++k) {
      const ShapleyReport report =
          analyze(*ctx.agent, *ctx.backend, *ctx.cache, prompt.text,
                  detail::options_for(cfg, cfg.seeds[static_cast<std::size_t>(k)]));
      detail::maybe_write_run_report(ctx, prompt.id, k, report);

      const auto expected_index = catalog.index_of(prompt.expected_tool);
      if (!expected_index) throw UnknownToolError(prompt.expected_tool);
      const double phi_expected =
          report.phi[static_cast<std::size_t>(*expected_index)];
      expected_sum += phi_expected;
      ++expected_count;

      double prompt_distractor_sum = 0.0;
      for (const int d : distractor_indices) {
        prompt_distractor_sum += report.phi[static_cast<std::size_t>(d)];
      }
      distractor_sum += prompt_distractor_sum;
      distractor_count += distractor_indices.size();

      const double prompt_gap =
          phi_expected -
          prompt_distractor_sum / static_cast<double>(distractor_indices.size());
      const bool hit = detail::top1_hit(report, prompt.expected_tool);
      hits += hit ? 1 : 0;
      ++total;
      metrics.details.push_back({{"prompt_id", prompt.id},
                                 {"run", k + 1},
                                 {"phi_expected", phi_expected},
                                 {"gap", prompt_gap},
                                 {"top1", hit}});
    }
  }

  const double mean_expected =
      expected_sum / static_cast<double>(expected_count);
  const double mean_distractor =
      distractor_sum / static_cast<double>(distractor_count);
  metrics.shap_gap = mean_expected - mean_distractor;
  if (mean_distractor > 1e-12) {
    metrics.shap_ratio = mean_expected / mean_distractor;
  }
  metrics.top1_accuracy = static_cast<double>(hits) / static_cast<double>(total);
  detail::maybe_write_metrics(ctx, metrics);
  return metrics;
}

// Protocol 4 — cross-domain attribution. Prompts span several domains; the
// matrix row for domain d holds each tool's mean score over d's prompts.
// Sound attribution concentrates each row's mass on that domain's tool.
inline ExperimentMetrics run_cross_domain(const ExperimentConfig& cfg,
                                          const ExperimentContext& ctx) {
  cfg.validate();
  ExperimentMetrics metrics;
  metrics.experiment = "cross_domain";
  const ToolCatalog& catalog = ctx.agent->catalog();

  std::map<std::string, std::vector<double>> domain_sums;
  std::map<std::string, std::uint64_t> domain_counts;
  std::uint64_t hits = 0, total = 0;

  for (const PromptCase& prompt : cfg.suite) {
    for (int k = 0; k < cfg.runs; ++k) {
      const ShapleyReport report =
          analyze(*ctx.agent, *ctx.backend, *ctx.cache, prompt.text,
                  detail::options_for(cfg, cfg.seeds[static_cast<std::size_t>(k)]));
      detail::maybe_write_run_report(ctx, prompt.id, k, report);

      const std::string domain = to_string(prompt.domain);
      auto& sums = domain_sums[domain];
      if (sums.empty()) sums.assign(report.phi.size(), 0.0);
      for (std::size_t i = 0; i < report.phi.size(); ++i) {
        sums[i] += report.phi[i];
      }
      domain_counts[domain] += 1;

      const bool hit = detail::top1_hit(report, prompt.expected_tool);
      hits += hit ? 1 : 0;
      ++total;
      metrics.details.push_back({{"prompt_id", prompt.id},
                                 {"run", k + 1},
                                 {"domain", domain},
                                 {"phi", report.phi},
                                 {"top1", hit}});
    }
  }

  for (const auto& [domain, sums] : domain_sums) {
    const double count = static_cast<double>(domain_counts[domain]);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      metrics.domain_tool_matrix[domain][catalog.tool(static_cast<int>(i)).name] =
          sums[i] / count;
    }
  }
  metrics.top1_accuracy = static_cast<double>(hits) / static_cast<double>(total);
  detail::maybe_write_metrics(ctx, metrics);
  return metrics;
}

}  // namespace toolshap
