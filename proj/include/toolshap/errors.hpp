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

#include <stdexcept>
#include <string>

namespace toolshap {

// Base for every library error. CLI maps subtypes to exit codes:
// availability errors -> 2, everything else -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- catalog / coalition -------------------------------------------------

class CatalogError : public Error {
 public:
  using Error::Error;
};

class EmptyCatalogError : public CatalogError {
 public:
  EmptyCatalogError() : CatalogError("catalog holds no tools") {}
};

class CatalogTooLargeError : public CatalogError {
 public:
  explicit CatalogTooLargeError(int n)
      : CatalogError("catalog holds " + std::to_string(n) +
                     " tools; at most 30 are supported") {}
};

class UnknownToolError : public Error {
 public:
  explicit UnknownToolError(const std::string& name)
      : Error("unknown tool: " + name) {}
};

class DuplicateNameError : public Error {
 public:
  explicit DuplicateNameError(const std::string& name)
      : Error("duplicate name: " + name) {}
};

class FingerprintMismatchError : public Error {
 public:
  FingerprintMismatchError()
      : Error("coalition was built against a different catalog") {}
};

// ---- agents / executors ---------------------------------------------------

class ExecutorNotFoundError : public Error {
 public:
  explicit ExecutorNotFoundError(const std::string& id)
      : Error("no executor registered for id: " + id) {}
};

class AgentUnavailableError : public Error {
 public:
  explicit AgentUnavailableError(const std::string& detail)
      : Error("agent unavailable: " + detail) {}
};

class MaxTurnsExceededError : public Error {
 public:
  explicit MaxTurnsExceededError(int max_turns)
      : Error("tool loop did not settle within " + std::to_string(max_turns) +
              " turns") {}
};

class CacheIOError : public Error {
 public:
  using Error::Error;
};

// ---- similarity -----------------------------------------------------------

class EmbeddingUnavailableError : public Error {
 public:
  explicit EmbeddingUnavailableError(const std::string& detail)
      : Error("embedding backend unavailable: " + detail) {}
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::size_t cached, std::size_t live)
      : Error("embedding dimension mismatch: cache has " +
              std::to_string(cached) + ", backend returned " +
              std::to_string(live)) {}
};

class ZeroVectorError : public Error {
 public:
  ZeroVectorError() : Error("cosine of a zero vector is undefined") {}
};

// ---- estimation -----------------------------------------------------------

class InvalidRhoError : public Error {
 public:
  explicit InvalidRhoError(double rho)
      : Error("rho must lie in (0, 1], got " + std::to_string(rho)) {}
};

class IncompleteTableError : public Error {
 public:
  IncompleteTableError()
      : Error("exact estimator needs a value for every coalition") {}
};

class EvaluationFailedError : public Error {
 public:
  EvaluationFailedError(const std::string& coalition_key,
                        const std::string& cause)
      : Error("evaluation failed for coalition [" + coalition_key +
              "]: " + cause) {}
};

// ---- configuration ---------------------------------------------------------

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace toolshap
