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

#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include <toolshap/bundle.hpp>
#include <toolshap/run_config.hpp>

namespace toolshap {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("toolshap_cfg_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream(path) << j.dump(2) << "\n";
}

// A minimal but valid config directory: one catalog, one script, a config
// pointing at both by relative name.
std::string write_minimal_config(const TempDir& dir, nlohmann::json extra = {}) {
  write_json(dir.file("catalog.json"),
             bundled::core_catalog().to_json());
  nlohmann::json script = bundled::script();
  write_json(dir.file("script.json"), script);
  nlohmann::json cfg = {{"catalog_path", "catalog.json"},
                        {"script_path", "script.json"},
                        {"prompt", "Calculate (5+6)*3"}};
  for (auto& [key, value] : extra.items()) cfg[key] = value;
  write_json(dir.file("config.json"), cfg);
  return dir.file("config.json");
}

TEST(Bundle, WritesACompleteWorkingDirectory) {
  TempDir dir;
  bundled::write_bundle(dir.path().string());

  for (const char* name :
       {"core_catalog.json", "injection_catalog.json",
        "cross_domain_catalog.json", "script.json", "consistency_suite.json",
        "injection_suite.json", "cross_domain_suite.json", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir.file(name))) << name;
  }

  const ToolCatalog core = ToolCatalog::load(dir.file("core_catalog.json"));
  EXPECT_EQ(core.size(), 3);
  EXPECT_EQ(core.tools(), bundled::core_catalog().tools());
  EXPECT_EQ(core.fingerprint(), bundled::core_catalog().fingerprint());

  const ToolCatalog injection =
      ToolCatalog::load(dir.file("injection_catalog.json"));
  EXPECT_EQ(injection.size(), 7);
  EXPECT_NE(injection.fingerprint(), core.fingerprint());
  // Core tools come first, in the same order.
  for (int i = 0; i < core.size(); ++i) {
    EXPECT_EQ(injection.tool(i), core.tool(i));
  }

  const ToolCatalog cross =
      ToolCatalog::load(dir.file("cross_domain_catalog.json"));
  EXPECT_EQ(cross.size(), 6);

  const AgentScript script = AgentScript::load(dir.file("script.json"));
  EXPECT_EQ(script.fingerprint(), bundled::script().fingerprint());
}

TEST(Bundle, SuitesRoundTripThroughTheirFiles) {
  TempDir dir;
  bundled::write_bundle(dir.path().string());

  const auto consistency =
      RunConfig::load_suite(dir.file("consistency_suite.json"));
  ASSERT_EQ(consistency.size(), 9u);
  EXPECT_EQ(consistency, bundled::consistency_suite());
  EXPECT_EQ(consistency[0].id, "math-1");
  EXPECT_EQ(consistency[0].expected_tool, "Calculator");
  EXPECT_EQ(consistency[3].domain, Domain::finance);

  const auto injection = RunConfig::load_suite(dir.file("injection_suite.json"));
  ASSERT_EQ(injection.size(), 7u);
  EXPECT_EQ(injection, bundled::injection_suite());

  const auto cross = RunConfig::load_suite(dir.file("cross_domain_suite.json"));
  EXPECT_EQ(cross, bundled::cross_domain_suite());
}

TEST(Bundle, ConfigLoadsAndBuildsAWorkingAgent) {
  TempDir dir;
  bundled::write_bundle(dir.path().string());
  const RunConfig cfg = RunConfig::load(dir.file("config.json"));

  EXPECT_EQ(cfg.agent_mode, "scripted");
  EXPECT_EQ(cfg.backend, BackendKind::tf_cosine);
  EXPECT_EQ(cfg.estimator.kind, EstimatorKind::subset_mc);
  EXPECT_EQ(cfg.estimator.permutations, 200);
  EXPECT_DOUBLE_EQ(cfg.rho, 0.5);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.runs, 3);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{11, 23, 47}));
  EXPECT_EQ(cfg.prompt, "Calculate (5+6)*3");

  // Relative entries resolve against the config's own directory.
  EXPECT_TRUE(fs::path(cfg.catalog_path).is_absolute());
  EXPECT_EQ(cfg.catalog_path, dir.file("core_catalog.json"));
  EXPECT_EQ(cfg.experiment_catalogs.at("injection"),
            dir.file("injection_catalog.json"));
  EXPECT_EQ(cfg.experiment_suites.at("cross_domain"),
            dir.file("cross_domain_suite.json"));
  ASSERT_EQ(cfg.experiment_catalogs.size(), 4u);
  ASSERT_EQ(cfg.experiment_suites.size(), 4u);

  const auto agent = cfg.make_agent(cfg.catalog_path);
  const AgentResponse r =
      agent->respond("Calculate (5+6)*3", full_coalition(agent->catalog()));
  EXPECT_EQ(r.text, "Calculator computed: 33");

  SimilarityBackend backend = cfg.make_backend();
  EXPECT_EQ(backend.kind(), BackendKind::tf_cosine);
}

TEST(RunConfigLoad, AppliesDocumentedDefaults) {
  TempDir dir;
  const RunConfig cfg = RunConfig::load(write_minimal_config(dir));
  EXPECT_EQ(cfg.agent_mode, "scripted");
  EXPECT_EQ(cfg.backend, BackendKind::tf_cosine);
  EXPECT_EQ(cfg.estimator.kind, EstimatorKind::subset_mc);
  EXPECT_DOUBLE_EQ(cfg.rho, 0.5);
  EXPECT_EQ(cfg.runs, 3);
  EXPECT_EQ(cfg.concurrency_limit, 1);
  EXPECT_EQ(cfg.output_dir, dir.file("out"));  // resolved, not required
  EXPECT_TRUE(cfg.response_cache_path.empty());
}

TEST(RunConfigLoad, MissingFilesAreNamedInTheError) {
  TempDir dir;
  write_json(dir.file("script.json"), nlohmann::json(bundled::script()));
  write_json(dir.file("config.json"),
             {{"catalog_path", "absent_catalog.json"},
              {"script_path", "script.json"}});
  try {
    RunConfig::load(dir.file("config.json"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("absent_catalog.json"),
              std::string::npos);
    EXPECT_NE(std::string(e.what()).find("catalog_path"), std::string::npos);
  }
}

TEST(RunConfigLoad, ScriptIsOnlyRequiredForScriptedMode) {
  TempDir dir;
  write_json(dir.file("catalog.json"), bundled::core_catalog().to_json());

  // Scripted mode with a dangling script path: rejected.
  write_json(dir.file("config.json"), {{"catalog_path", "catalog.json"},
                                       {"script_path", "missing.json"}});
  EXPECT_THROW(RunConfig::load(dir.file("config.json")), ConfigError);

  // Live mode never looks at the script file.
  write_json(dir.file("config.json"),
             {{"catalog_path", "catalog.json"},
              {"script_path", "missing.json"},
              {"agent_mode", "live"},
              {"live",
               {{"base_url", "http://127.0.0.1:1/v1"}, {"model", "test-model"}}}});
  const RunConfig cfg = RunConfig::load(dir.file("config.json"));
  EXPECT_EQ(cfg.agent_mode, "live");
  const auto agent = cfg.make_agent(cfg.catalog_path);
  EXPECT_EQ(agent->id().rfind("live-", 0), 0u);
}

TEST(RunConfigLoad, LiveModeNeedsBothUrlAndModel) {
  TempDir dir;
  write_json(dir.file("catalog.json"), bundled::core_catalog().to_json());

  write_json(dir.file("config.json"),
             {{"catalog_path", "catalog.json"},
              {"agent_mode", "live"},
              {"live", {{"model", "test-model"}}}});
  EXPECT_THROW(RunConfig::load(dir.file("config.json")), ConfigError);

  write_json(dir.file("config.json"),
             {{"catalog_path", "catalog.json"},
              {"agent_mode", "live"},
              {"live", {{"base_url", "http://127.0.0.1:1/v1"}}}});
  try {
    RunConfig::load(dir.file("config.json"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("live.model"), std::string::npos);
  }
}

TEST(RunConfigLoad, RejectsInvalidSettings) {
  TempDir dir;

  EXPECT_THROW(RunConfig::load(write_minimal_config(dir, {{"rho", 1.5}})),
               InvalidRhoError);
  EXPECT_THROW(RunConfig::load(write_minimal_config(dir, {{"rho", 0.0}})),
               InvalidRhoError);
  EXPECT_THROW(
      RunConfig::load(write_minimal_config(dir, {{"permutations", 0}})),
      ConfigError);
  EXPECT_THROW(
      RunConfig::load(write_minimal_config(dir, {{"agent_mode", "psychic"}})),
      ConfigError);
  EXPECT_THROW(
      RunConfig::load(write_minimal_config(dir, {{"agent_mode", "live"}})),
      ConfigError);  // live without live.base_url
  EXPECT_THROW(
      RunConfig::load(write_minimal_config(dir, {{"backend", "embedding_cosine"}})),
      ConfigError);  // embedding without embedding.base_url
  EXPECT_THROW(
      RunConfig::load(write_minimal_config(dir, {{"estimator", "oracle"}})),
      ConfigError);
}

TEST(RunConfigLoad, EmbeddingBackendNeedsOnlyABaseUrl) {
  TempDir dir;
  const RunConfig cfg = RunConfig::load(write_minimal_config(
      dir, {{"backend", "embedding_cosine"},
            {"embedding", {{"base_url", "http://127.0.0.1:1/v1"}}}}));
  EXPECT_EQ(cfg.backend, BackendKind::embedding_cosine);
  SimilarityBackend backend = cfg.make_backend();
  EXPECT_EQ(backend.kind(), BackendKind::embedding_cosine);
}

TEST(RunConfigLoad, AbsolutePathsPassThroughUnchanged) {
  TempDir dir;
  write_json(dir.file("catalog.json"), bundled::core_catalog().to_json());
  write_json(dir.file("script.json"), nlohmann::json(bundled::script()));
  TempDir elsewhere;
  write_json(elsewhere.file("config.json"),
             {{"catalog_path", dir.file("catalog.json")},
              {"script_path", dir.file("script.json")}});
  const RunConfig cfg = RunConfig::load(elsewhere.file("config.json"));
  EXPECT_EQ(cfg.catalog_path, dir.file("catalog.json"));
  EXPECT_EQ(cfg.script_path, dir.file("script.json"));
}

TEST(RunConfigLoad, BadConfigFilesAreRejected) {
  TempDir dir;
  EXPECT_THROW(RunConfig::load(dir.file("no_such_config.json")), ConfigError);
  std::ofstream(dir.file("broken.json")) << "{ this is not json";
  EXPECT_THROW(RunConfig::load(dir.file("broken.json")), ConfigError);
}

TEST(RunConfigLoad, MissingSuiteFileIsRejected) {
  TempDir dir;
  EXPECT_THROW(RunConfig::load(write_minimal_config(
                   dir, {{"prompt_suite_path", "no_suite.json"}})),
               ConfigError);
  EXPECT_THROW(RunConfig::load_suite(dir.file("no_suite.json")), ConfigError);
}

TEST(BundledSuites, InjectionSuiteIsAProperSubset) {
  const auto base = bundled::consistency_suite();
  const auto injected = bundled::injection_suite();
  ASSERT_EQ(injected.size(), 7u);
  for (const PromptCase& p : injected) {
    EXPECT_NE(std::find(base.begin(), base.end(), p), base.end()) << p.id;
  }
  // The injection catalog adds tools no prompt expects.
  const ToolCatalog catalog = bundled::injection_catalog();
  int distractors = 0;
  for (int i = 0; i < catalog.size(); ++i) {
    bool expected = false;
    for (const PromptCase& p : injected) {
      expected |= p.expected_tool == catalog.tool(i).name;
    }
    distractors += expected ? 0 : 1;
  }
  EXPECT_EQ(distractors, 4);
}

TEST(BundledScript, CoversEverySuitePromptDeterministically) {
  const ToolCatalog catalog = bundled::core_catalog();
  ScriptedAgent agent(catalog, bundled::script());
  const Coalition all = full_coalition(catalog);
  for (const PromptCase& p : bundled::consistency_suite()) {
    const AgentResponse r = agent.respond(p.text, all);
    ASSERT_EQ(r.tool_calls_made.size(), 1u) << p.id;
    EXPECT_EQ(r.tool_calls_made[0].tool, p.expected_tool) << p.id;
    EXPECT_NE(r.text, agent.respond(p.text, empty_coalition(catalog)).text)
        << p.id;
  }
}

}  // namespace
}  // namespace toolshap
