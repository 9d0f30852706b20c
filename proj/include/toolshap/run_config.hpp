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

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/live_agent.hpp"
#include "toolshap/script_agent.hpp"
#include "toolshap/similarity.hpp"
#include "toolshap/types.hpp"

namespace toolshap {

// Everything a CLI run needs, loaded from one JSON file. Relative paths in
// the file resolve against the file's own directory, so a config directory
// can be moved as a unit. Secrets never appear inline: live/embedding
// sections name an environment variable instead.
struct RunConfig {
  std::string catalog_path;
  std::string script_path;        // scripted mode behaviour
  std::string prompt;             // default prompt for `analyze`
  std::string prompt_suite_path;  // optional suite file
  std::string agent_mode = "scripted";  // "scripted" | "live"
  LiveAgentConfig live;
  BackendKind backend = BackendKind::tf_cosine;
  EmbeddingConfig embedding;
  EstimatorChoice estimator{EstimatorKind::subset_mc, 200};
  double rho = 0.5;
  std::uint64_t seed = 11;
  int runs = 3;
  std::vector<std::uint64_t> seeds{11, 23, 47};
  std::string output_dir = "out";
  int concurrency_limit = 1;
  std::string response_cache_path;
  std::map<std::string, std::string> experiment_catalogs;
  std::map<std::string, std::string> experiment_suites;

  static RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);

    RunConfig cfg;
    cfg.catalog_path = j.value("catalog_path", std::string());
    cfg.script_path = j.value("script_path", std::string());
    cfg.prompt = j.value("prompt", std::string());
    cfg.prompt_suite_path = j.value("prompt_suite_path", std::string());
    cfg.agent_mode = j.value("agent_mode", std::string("scripted"));
    if (cfg.agent_mode != "scripted" && cfg.agent_mode != "live") {
      throw ConfigError("agent_mode must be \"scripted\" or \"live\", got \"" +
                        cfg.agent_mode + "\"");
    }
    if (j.contains("live")) cfg.live = j["live"].get<LiveAgentConfig>();
    if (cfg.agent_mode == "live" && cfg.live.base_url.empty()) {
      throw ConfigError("agent_mode \"live\" needs a live.base_url");
    }
    if (cfg.agent_mode == "live" && cfg.live.model.empty()) {
      throw ConfigError("agent_mode \"live\" needs a live.model");
    }
    cfg.backend = backend_from_string(j.value("backend", std::string("tf_cosine")));
    if (j.contains("embedding")) {
      cfg.embedding = j["embedding"].get<EmbeddingConfig>();
    }
    if (cfg.backend == BackendKind::embedding_cosine &&
        cfg.embedding.base_url.empty()) {
      throw ConfigError("backend \"embedding_cosine\" needs an embedding.base_url");
    }
    cfg.estimator.kind =
        estimator_from_string(j.value("estimator", std::string("subset_mc")));
    cfg.estimator.permutations = j.value("permutations", 200);
    if (cfg.estimator.permutations < 1) {
      throw ConfigError("permutations must be >= 1");
    }
    cfg.rho = j.value("rho", 0.5);
    if (!(cfg.rho > 0.0) || cfg.rho > 1.0) throw InvalidRhoError(cfg.rho);
    cfg.seed = j.value("seed", std::uint64_t{11});
    cfg.runs = j.value("runs", 3);
    cfg.seeds = j.value("seeds", std::vector<std::uint64_t>{11, 23, 47});
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.concurrency_limit = j.value("concurrency_limit", 1);
    cfg.response_cache_path = j.value("response_cache_path", std::string());
    cfg.experiment_catalogs = j.value(
        "experiment_catalogs", std::map<std::string, std::string>{});
    cfg.experiment_suites =
        j.value("experiment_suites", std::map<std::string, std::string>{});

    cfg.resolve_and_check(std::filesystem::path(path).parent_path());
    return cfg;
  }

  // Builds the configured agent over the given catalog file.
  std::unique_ptr<Agent> make_agent(const std::string& catalog_file) const {
    ToolCatalog catalog = ToolCatalog::load(catalog_file);
    if (agent_mode == "live") {
      return std::make_unique<LiveAgent>(std::move(catalog), live);
    }
    if (script_path.empty()) {
      throw ConfigError("agent_mode \"scripted\" needs a script_path");
    }
    return std::make_unique<ScriptedAgent>(std::move(catalog),
                                           AgentScript::load(script_path));
  }

  SimilarityBackend make_backend() const {
    if (backend == BackendKind::tf_cosine) return SimilarityBackend();
    return SimilarityBackend(embedding);
  }

  static std::vector<PromptCase> load_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open prompt suite: " + path);
    nlohmann::json j;
    in >> j;
    return j.at("prompts").get<std::vector<PromptCase>>();
  }

 private:
  void resolve_and_check(const std::filesystem::path& base) {
    const auto resolve = [&](std::string& p) {
      if (p.empty()) return;
      std::filesystem::path fp(p);
      if (fp.is_relative()) p = (base / fp).string();
    };
    const auto require_exists = [](const std::string& p, const char* what) {
      if (p.empty() || std::filesystem::exists(p)) return;
      throw ConfigError(std::string(what) + " does not exist: " + p);
    };

    resolve(catalog_path);
    require_exists(catalog_path, "catalog_path");
    resolve(script_path);
    if (agent_mode == "scripted") require_exists(script_path, "script_path");
    resolve(prompt_suite_path);
    require_exists(prompt_suite_path, "prompt_suite_path");
    for (auto& [name, p] : experiment_catalogs) {
      resolve(p);
      require_exists(p, "experiment catalog");
    }
    for (auto& [name, p] : experiment_suites) {
      resolve(p);
      require_exists(p, "experiment suite");
    }
    // Cache files and output_dir are outputs: resolved, not required.
    resolve(response_cache_path);
    resolve(embedding.cache_path);
    resolve(output_dir);
  }
};

}  // namespace toolshap
