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

// toolshap CLI: per-tool importance attribution for tool-using agents.
//
//   toolshap init --out <dir>                  write the bundled demo files
//   toolshap analyze --config <path> [...]     score one prompt's tools
//   toolshap experiment <name> --config <path> run an evaluation protocol
//   toolshap report <path>                     re-render a saved report
//
// Exit codes: 0 success, 1 configuration/usage error, 2 agent or embedding
// backend unavailable.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <toolshap.hpp>

namespace {

int cmd_analyze(const std::string& config_path,
                const std::optional<std::string>& prompt_override,
                const std::optional<double>& rho_override,
                const std::optional<std::uint64_t>& seed_override,
                const std::optional<std::string>& estimator_override,
                const std::optional<std::string>& backend_override,
                const std::optional<std::string>& out_override) {
  toolshap::RunConfig config = toolshap::RunConfig::load(config_path);
  if (rho_override) {
    config.rho = *rho_override;
    if (!(config.rho > 0.0) || config.rho > 1.0) {
      throw toolshap::InvalidRhoError(config.rho);
    }
  }
  if (seed_override) config.seed = *seed_override;
  if (estimator_override) {
    config.estimator.kind = toolshap::estimator_from_string(*estimator_override);
  }
  if (backend_override) {
    config.backend = toolshap::backend_from_string(*backend_override);
    if (config.backend == toolshap::BackendKind::embedding_cosine &&
        config.embedding.base_url.empty()) {
      throw toolshap::ConfigError(
          "backend \"embedding_cosine\" needs an embedding.base_url");
    }
  }
  if (out_override) config.output_dir = *out_override;

  const std::string prompt = prompt_override.value_or(config.prompt);
  if (prompt.empty()) {
    throw toolshap::ConfigError(
        "no prompt: pass --prompt or set \"prompt\" in the config");
  }

  auto agent = config.make_agent(config.catalog_path);
  toolshap::SimilarityBackend backend = config.make_backend();
  toolshap::ResponseCache cache =
      config.response_cache_path.empty()
          ? toolshap::ResponseCache()
          : toolshap::ResponseCache(config.response_cache_path);

  toolshap::AnalysisOptions options;
  options.rho = config.rho;
  options.seed = config.seed;
  options.estimator = config.estimator;
  options.agent_mode = config.agent_mode;

  const toolshap::ShapleyReport report =
      toolshap::analyze(*agent, backend, cache, prompt, options);

  const std::string report_path = config.output_dir + "/report.json";
  toolshap::write_report(report, report_path);
  toolshap::write_text_atomic(config.output_dir + "/report.csv",
                              toolshap::report_to_csv(report));

  std::cout << toolshap::render_report_summary(report) << "\n"
            << toolshap::render_bar_chart(report) << "\nwrote " << report_path
            << "\n";
  return 0;
}

int cmd_experiment(std::string name, const std::string& config_path) {
  if (name == "cross-domain") name = "cross_domain";  // accepted spelling
  const toolshap::RunConfig config = toolshap::RunConfig::load(config_path);

  const auto catalog_it = config.experiment_catalogs.find(name);
  const auto suite_it = config.experiment_suites.find(name);
  if (catalog_it == config.experiment_catalogs.end() ||
      suite_it == config.experiment_suites.end()) {
    throw toolshap::ConfigError(
        "config lists no catalog/suite for experiment \"" + name + "\"");
  }

  auto agent = config.make_agent(catalog_it->second);
  toolshap::SimilarityBackend backend = config.make_backend();
  toolshap::ResponseCache cache =
      config.response_cache_path.empty()
          ? toolshap::ResponseCache()
          : toolshap::ResponseCache(config.response_cache_path);

  toolshap::ExperimentConfig experiment;
  experiment.suite = toolshap::RunConfig::load_suite(suite_it->second);
  experiment.runs = config.runs;
  experiment.rho = config.rho;
  experiment.estimator = config.estimator;
  experiment.seeds = config.seeds;
  experiment.agent_mode = config.agent_mode;

  toolshap::ExperimentContext context;
  context.agent = agent.get();
  context.backend = &backend;
  context.cache = &cache;
  context.out_dir = config.output_dir + "/" + name;

  toolshap::ExperimentMetrics metrics;
  if (name == "consistency") {
    metrics = toolshap::run_consistency(experiment, context);
  } else if (name == "faithfulness") {
    metrics = toolshap::run_faithfulness(experiment, context);
  } else if (name == "injection") {
    metrics = toolshap::run_injection(experiment, context);
  } else if (name == "cross_domain") {
    metrics = toolshap::run_cross_domain(experiment, context);
  } else {
    throw toolshap::ConfigError(
        "unknown experiment \"" + name +
        "\"; expected consistency, faithfulness, injection, or cross-domain");
  }

  std::cout << nlohmann::json(metrics).dump(2) << "\nwrote " << context.out_dir
            << "/metrics.json\n";
  return 0;
}

int cmd_report(const std::string& path) {
  const toolshap::ShapleyReport report = toolshap::load_report(path);
  std::cout << toolshap::render_report_summary(report) << "\n"
            << toolshap::render_bar_chart(report);
  return 0;
}

int cmd_init(const std::string& out_dir) {
  toolshap::bundled::write_bundle(out_dir);
  std::cout << "wrote bundled catalogs, script, prompt suites, and config to "
            << out_dir << "\n"
            << "try: toolshap analyze --config " << out_dir << "/config.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-tool importance attribution for tool-using agents"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Score one prompt's tools");
  std::string analyze_config;
  std::optional<std::string> prompt_override, estimator_override,
      backend_override, out_override;
  std::optional<double> rho_override;
  std::optional<std::uint64_t> seed_override;
  analyze->add_option("--config", analyze_config, "Run configuration file")
      ->required();
  analyze->add_option("--prompt", prompt_override, "Prompt to analyze");
  analyze->add_option("--rho", rho_override, "Sampling ratio in (0, 1]");
  analyze->add_option("--seed", seed_override, "Sampling seed");
  analyze->add_option("--estimator", estimator_override,
                      "exact | permutation | subset");
  analyze->add_option("--backend", backend_override, "tf | embedding");
  analyze->add_option("--out", out_override, "Output directory");

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Run an evaluation protocol");
  std::string experiment_name, experiment_config;
  experiment
      ->add_option("name", experiment_name,
                   "consistency | faithfulness | injection | cross-domain")
      ->required();
  experiment->add_option("--config", experiment_config, "Run configuration file")
      ->required();

  // report
  auto* report = app.add_subcommand("report", "Re-render a saved report");
  std::string report_path;
  report->add_option("path", report_path, "Report JSON file")->required();

  // init
  auto* init = app.add_subcommand("init", "Write the bundled demo files");
  std::string init_out = "toolshap-demo";
  init->add_option("--out", init_out, "Directory to create");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(analyze_config, prompt_override, rho_override,
                         seed_override, estimator_override, backend_override,
                         out_override);
    }
    if (experiment->parsed()) {
      return cmd_experiment(experiment_name, experiment_config);
    }
    if (report->parsed()) return cmd_report(report_path);
    if (init->parsed()) return cmd_init(init_out);
  } catch (const toolshap::AgentUnavailableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toolshap::EmbeddingUnavailableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toolshap::EvaluationFailedError& e) {
    // Evaluation aborts wrap agent/backend outages mid-run.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const toolshap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
