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

// Umbrella header: the whole library in dependency order.

#include "toolshap/errors.hpp"      // IWYU pragma: export
#include "toolshap/util.hpp"        // IWYU pragma: export
#include "toolshap/rng.hpp"         // IWYU pragma: export
#include "toolshap/catalog.hpp"     // IWYU pragma: export
#include "toolshap/coalition.hpp"   // IWYU pragma: export
#include "toolshap/types.hpp"       // IWYU pragma: export
#include "toolshap/executors.hpp"   // IWYU pragma: export
#include "toolshap/agent.hpp"       // IWYU pragma: export
#include "toolshap/script_agent.hpp"  // IWYU pragma: export
#include "toolshap/live_agent.hpp"  // IWYU pragma: export
#include "toolshap/response_cache.hpp"  // IWYU pragma: export
#include "toolshap/similarity.hpp"  // IWYU pragma: export
#include "toolshap/plan.hpp"        // IWYU pragma: export
#include "toolshap/evaluation.hpp"  // IWYU pragma: export
#include "toolshap/estimators.hpp"  // IWYU pragma: export
#include "toolshap/analysis.hpp"    // IWYU pragma: export
#include "toolshap/report_io.hpp"   // IWYU pragma: export
#include "toolshap/render.hpp"      // IWYU pragma: export
#include "toolshap/experiments.hpp"  // IWYU pragma: export
#include "toolshap/bundle.hpp"      // IWYU pragma: export
#include "toolshap/run_config.hpp"  // IWYU pragma: export
