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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "toolshap/errors.hpp"
#include "toolshap/similarity.hpp"
#include "toolshap/types.hpp"
#include "toolshap/util.hpp"

namespace toolshap {

inline constexpr const char* kReportVersion = "1";

// Full record of one attribution run. Carries everything needed to
// reproduce it: seed, sampling ratio, estimator, backend, catalog
// fingerprint, tool order, and the complete evaluation log.
struct ShapleyReport {
  std::string version = kReportVersion;
  std::string prompt;
  std::string agent_id;
  std::string agent_mode;  // "scripted" | "live"
  BackendKind backend = BackendKind::tf_cosine;
  EstimatorChoice estimator;
  std::uint64_t seed = 0;
  double sampling_ratio = 1.0;  // effective value the run used
  std::uint64_t catalog_fingerprint = 0;
  std::vector<std::string> tool_names;
  std::string baseline_text;
  std::vector<double> phi;
  std::vector<double> shares;
  std::vector<CoalitionEvaluation> evaluations;
  nlohmann::json metrics;  // optional; null when absent

  friend bool operator==(const ShapleyReport&, const ShapleyReport&) = default;
};

inline nlohmann::json report_to_json(const ShapleyReport& r) {
  nlohmann::json j;
  j["version"] = r.version;
  j["config"] = {{"prompt", r.prompt},
                 {"agent_id", r.agent_id},
                 {"agent_mode", r.agent_mode},
                 {"backend", to_string(r.backend)},
                 {"estimator", to_string(r.estimator.kind)},
                 {"permutations", r.estimator.permutations},
                 {"rho", r.sampling_ratio},
                 {"seed", r.seed}};
  j["catalog_fingerprint"] = to_hex(r.catalog_fingerprint);
  j["tools"] = r.tool_names;
  j["baseline_text"] = r.baseline_text;
  j["phi"] = r.phi;
  j["shares"] = r.shares;
  j["evaluations"] = r.evaluations;
  j["evaluation_count"] = r.evaluations.size();
  if (!r.metrics.is_null()) j["metrics"] = r.metrics;
  return j;
}

inline ShapleyReport report_from_json(const nlohmann::json& j) {
  ShapleyReport r;
  r.version = j.at("version").get<std::string>();
  const nlohmann::json& cfg = j.at("config");
  r.prompt = cfg.at("prompt").get<std::string>();
  r.agent_id = cfg.at("agent_id").get<std::string>();
  r.agent_mode = cfg.at("agent_mode").get<std::string>();
  r.backend = backend_from_string(cfg.at("backend").get<std::string>());
  r.estimator.kind = estimator_from_string(cfg.at("estimator").get<std::string>());
  r.estimator.permutations = cfg.value("permutations", 200);
  r.sampling_ratio = cfg.at("rho").get<double>();
  r.seed = cfg.at("seed").get<std::uint64_t>();
  r.catalog_fingerprint =
      std::stoull(j.at("catalog_fingerprint").get<std::string>(), nullptr, 16);
  r.tool_names = j.at("tools").get<std::vector<std::string>>();
  r.baseline_text = j.at("baseline_text").get<std::string>();
  r.phi = j.at("phi").get<std::vector<double>>();
  r.shares = j.at("shares").get<std::vector<double>>();
  r.evaluations = j.at("evaluations").get<std::vector<CoalitionEvaluation>>();
  r.metrics = j.contains("metrics") ? j["metrics"] : nlohmann::json();
  return r;
}

// Serialized form used for files: 2-space indent, keys in sorted order
// (nlohmann objects are ordered maps), trailing newline. Identical reports
// serialize to identical bytes.
inline std::string report_to_string(const ShapleyReport& r) {
  return report_to_json(r).dump(2) + "\n";
}

// Write-to-temp + rename so a crash mid-write never leaves a truncated
// report behind.
inline void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " +
                              target.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
    if (!out.good()) throw ConfigError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot replace " + path + ": " + ec.message());
  }
}

inline void write_report(const ShapleyReport& r, const std::string& path) {
  write_text_atomic(path, report_to_string(r));
}

inline ShapleyReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report file: " + path);
  nlohmann::json j;
  in >> j;
  return report_from_json(j);
}

// Flat spreadsheet view: one row per tool.
inline std::string report_to_csv(const ShapleyReport& r) {
  std::string out = "tool,phi,share\n";
  for (std::size_t i = 0; i < r.tool_names.size(); ++i) {
    out += r.tool_names[i];
    out += ',';
    out += nlohmann::json(r.phi[i]).dump();
    out += ',';
    out += nlohmann::json(r.shares[i]).dump();
    out += '\n';
  }
  return out;
}

}  // namespace toolshap
