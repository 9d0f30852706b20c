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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "toolshap/report_io.hpp"

namespace toolshap {

// Terminal view of a report: one line per tool, highest score first, with a
// bar proportional to the score (width 40 = the maximum). Nonpositive
// scores get empty bars; an all-zero report renders without dividing.
inline std::string render_bar_chart(const ShapleyReport& report) {
  constexpr int kBarWidth = 40;
  const std::size_t n = report.tool_names.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.phi[a] > report.phi[b];
  });

  std::size_t name_width = 4;
  for (const std::string& name : report.tool_names) {
    name_width = std::max(name_width, name.size());
  }
  double max_phi = 0.0;
  for (const double v : report.phi) max_phi = std::max(max_phi, v);

  std::string out;
  for (const std::size_t i : order) {
    const double phi = report.phi[i];
    int width = 0;
    if (max_phi > 0.0 && phi > 0.0) {
      width = static_cast<int>(std::floor(phi / max_phi * kBarWidth));
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%-*s  %8.3f  %6.3f  ",
                  static_cast<int>(name_width), report.tool_names[i].c_str(),
                  phi, report.shares[i]);
    out += line;
    for (int b = 0; b < width; ++b) out += "█";
    out += '\n';
  }
  return out;
}

// Header lines printed above the chart by the CLI.
inline std::string render_report_summary(const ShapleyReport& report) {
  std::string out;
  out += "prompt:      " + report.prompt + "\n";
  out += "agent:       " + report.agent_id + " (" + report.agent_mode + ")\n";
  out += "estimator:   " + to_string(report.estimator.kind) + "\n";
  out += "backend:     " + to_string(report.backend) + "\n";
  char line[128];
  std::snprintf(line, sizeof(line), "rho: %g  seed: %llu  evaluations: %zu\n",
                report.sampling_ratio,
                static_cast<unsigned long long>(report.seed),
                report.evaluations.size());
  out += line;
  out += "baseline:    " + report.baseline_text + "\n";
  return out;
}

}  // namespace toolshap
