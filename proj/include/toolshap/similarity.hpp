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

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "toolshap/errors.hpp"
#include "toolshap/util.hpp"

namespace toolshap {

// Cosine over raw count/embedding vectors. Zero-norm input yields 0 rather
// than NaN: an empty response is maximally unlike any non-empty one.
inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace detail {

// ASCII-lowercased tokens split on runs of non-alphanumerics.
inline std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace detail

// Term-frequency cosine similarity between two texts. Cheap, deterministic,
// dependency-free; the default way to compare agent responses.
inline double tf_cosine(const std::string& a, const std::string& b) {
  const std::vector<std::string> ta = detail::tokenize(a);
  const std::vector<std::string> tb = detail::tokenize(b);
  if (ta.empty() && tb.empty()) return 1.0;  // two silences agree
  if (ta.empty() || tb.empty()) return 0.0;

  std::map<std::string, double> ca, cb;
  for (const std::string& t : ta) ca[t] += 1.0;
  for (const std::string& t : tb) cb[t] += 1.0;

  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [token, count] : ca) {
    na += count * count;
    const auto it = cb.find(token);
    if (it != cb.end()) dot += count * it->second;
  }
  for (const auto& [token, count] : cb) nb += count * count;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

enum class BackendKind { tf_cosine, embedding_cosine };

inline std::string to_string(BackendKind k) {
  return k == BackendKind::tf_cosine ? "tf_cosine" : "embedding_cosine";
}

inline BackendKind backend_from_string(const std::string& s) {
  if (s == "tf" || s == "tf_cosine") return BackendKind::tf_cosine;
  if (s == "embedding" || s == "embedding_cosine") return BackendKind::embedding_cosine;
  throw ConfigError("unknown similarity backend: " + s);
}

struct EmbeddingConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8080/v1"
  std::string model = "text-embedding-3-small";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string cache_path;  // empty -> in-memory only
  int request_timeout_s = 60;
  int max_retries = 2;
};

inline void to_json(nlohmann::json& j, const EmbeddingConfig& c) {
  j = nlohmann::json{{"base_url", c.base_url},
                     {"model", c.model},
                     {"api_key_env", c.api_key_env},
                     {"cache_path", c.cache_path},
                     {"request_timeout_s", c.request_timeout_s},
                     {"max_retries", c.max_retries}};
}

inline void from_json(const nlohmann::json& j, EmbeddingConfig& c) {
  j.at("base_url").get_to(c.base_url);
  c.model = j.value("model", std::string("text-embedding-3-small"));
  c.api_key_env = j.value("api_key_env", std::string("OPENAI_API_KEY"));
  c.cache_path = j.value("cache_path", std::string());
  c.request_timeout_s = j.value("request_timeout_s", 60);
  c.max_retries = j.value("max_retries", 2);
}

// Client for an OpenAI-style /embeddings endpoint with a persistent JSONL
// cache keyed by (model, text hash). Embeddings of identical texts are only
// ever fetched once per cache file.
class EmbeddingClient {
 public:
  explicit EmbeddingClient(EmbeddingConfig config) : config_(std::move(config)) {
    if (config_.cache_path.empty()) return;
    std::ifstream in(config_.cache_path);
    if (!in) return;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("vector")) {
        std::cerr << "warning: dropping corrupt embedding-cache line "
                  << line_no << " in " << config_.cache_path << "\n";
        continue;
      }
      cache_[j["key"].get<std::string>()] =
          j["vector"].get<std::vector<double>>();
    }
  }

  std::vector<double> embed(const std::string& text) {
    const std::string key = config_.model + '\x1f' + to_hex(fnv1a64(text));
    if (const auto it = cache_.find(key); it != cache_.end()) {
      check_dimension(it->second.size());
      return it->second;
    }

    const std::vector<double> vec = fetch(text);
    check_dimension(vec.size());
    cache_[key] = vec;
    persist(key, vec);
    return vec;
  }

  std::uint64_t requests() const { return requests_.load(std::memory_order_relaxed); }

 private:
  std::vector<double> fetch(const std::string& text) {
    const std::size_t scheme_end = config_.base_url.find("://");
    if (scheme_end == std::string::npos) {
      throw ConfigError("base_url must include a scheme: " + config_.base_url);
    }
    const std::size_t path_start = config_.base_url.find('/', scheme_end + 3);
    const std::string origin = path_start == std::string::npos
                                   ? config_.base_url
                                   : config_.base_url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos
                             ? std::string()
                             : config_.base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client client(origin);
    client.set_connection_timeout(config_.request_timeout_s);
    client.set_read_timeout(config_.request_timeout_s);
    httplib::Headers headers;
    if (const char* api_key = std::getenv(config_.api_key_env.c_str());
        api_key != nullptr && *api_key != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + api_key);
    }

    const nlohmann::json body = {{"model", config_.model}, {"input", text}};
    std::string last_failure;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      requests_.fetch_add(1, std::memory_order_relaxed);
      auto res = client.Post(prefix + "/embeddings", headers, body.dump(),
                             "application/json");
      if (!res) {
        last_failure = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_failure = "HTTP " + std::to_string(res->status);
        continue;
      }
      nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.contains("data") || j["data"].empty() ||
          !j["data"][0].contains("embedding")) {
        last_failure = "unparseable embeddings body";
        continue;
      }
      return j["data"][0]["embedding"].get<std::vector<double>>();
    }
    throw EmbeddingUnavailableError(last_failure);
  }

  void check_dimension(std::size_t dim) {
    if (dimension_ == 0) {
      dimension_ = dim;
      return;
    }
    if (dim != dimension_) throw DimensionMismatchError(dimension_, dim);
  }

  void persist(const std::string& key, const std::vector<double>& vec) {
    if (config_.cache_path.empty()) return;
    std::ofstream out(config_.cache_path, std::ios::app);
    if (!out) {
      std::cerr << "warning: cannot append to embedding cache "
                << config_.cache_path << "; continuing in memory\n";
      config_.cache_path.clear();
      return;
    }
    nlohmann::json j = {{"key", key}, {"vector", vec}};
    out << j.dump() << "\n";
  }

  EmbeddingConfig config_;
  std::unordered_map<std::string, std::vector<double>> cache_;
  std::size_t dimension_ = 0;
  std::atomic<std::uint64_t> requests_{0};
};

// Uniform front door for text similarity: either local term-frequency
// cosine or embedding cosine through an EmbeddingClient.
class SimilarityBackend {
 public:
  SimilarityBackend() : kind_(BackendKind::tf_cosine) {}

  explicit SimilarityBackend(EmbeddingConfig config)
      : kind_(BackendKind::embedding_cosine),
        client_(std::make_shared<EmbeddingClient>(std::move(config))) {}

  double similarity(const std::string& a, const std::string& b) {
    if (kind_ == BackendKind::tf_cosine) return tf_cosine(a, b);
    return cosine(client_->embed(a), client_->embed(b));
  }

  BackendKind kind() const { return kind_; }
  EmbeddingClient* client() { return client_.get(); }

 private:
  BackendKind kind_;
  std::shared_ptr<EmbeddingClient> client_;
};

// The quantity everything downstream attributes: how much of the
// full-toolkit answer a restricted toolkit preserves.
inline double coalition_value(SimilarityBackend& backend,
                              const std::string& restricted_text,
                              const std::string& full_text) {
  return backend.similarity(restricted_text, full_text);
}

}  // namespace toolshap
