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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "toolshap/catalog.hpp"
#include "toolshap/errors.hpp"

namespace toolshap {

// A subset of a catalog's tools, as a bitmask over tool indices. The
// catalog fingerprint travels with the mask so cross-catalog mixups fail
// loudly instead of silently addressing the wrong tools.
struct Coalition {
  std::uint32_t mask = 0;
  std::uint64_t catalog_fingerprint = 0;

  bool contains(int index) const { return (mask >> index) & 1u; }
  int size() const { return std::popcount(mask); }

  friend bool operator==(const Coalition&, const Coalition&) = default;
};

inline void require_bound(const Coalition& c, const ToolCatalog& catalog) {
  if (c.catalog_fingerprint != catalog.fingerprint()) {
    throw FingerprintMismatchError();
  }
}

inline Coalition full_coalition(const ToolCatalog& catalog) {
  const std::uint32_t mask =
      catalog.size() == 32 ? ~std::uint32_t{0}
                           : ((std::uint32_t{1} << catalog.size()) - 1u);
  return Coalition{mask, catalog.fingerprint()};
}

inline Coalition empty_coalition(const ToolCatalog& catalog) {
  return Coalition{0u, catalog.fingerprint()};
}

inline Coalition coalition_from_names(const ToolCatalog& catalog,
                                      const std::vector<std::string>& names) {
  std::uint32_t mask = 0;
  for (const std::string& name : names) {
    const auto idx = catalog.index_of(name);
    if (!idx) throw UnknownToolError(name);
    mask |= std::uint32_t{1} << *idx;
  }
  return Coalition{mask, catalog.fingerprint()};
}

inline std::vector<std::string> member_names(const Coalition& c,
                                             const ToolCatalog& catalog) {
  require_bound(c, catalog);
  std::vector<std::string> names;
  for (int i = 0; i < catalog.size(); ++i) {
    if (c.contains(i)) names.push_back(catalog.tool(i).name);
  }
  return names;
}

// Canonical text form: member names in catalog order joined by '|'. Used in
// cache keys, report entries, and error messages. Empty coalition -> "".
inline std::string coalition_key(const Coalition& c, const ToolCatalog& catalog) {
  std::string key;
  for (const std::string& name : member_names(c, catalog)) {
    if (!key.empty()) key += '|';
    key += name;
  }
  return key;
}

}  // namespace toolshap
