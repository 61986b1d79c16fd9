// Copyright 2026 The sandmine authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The exploratory phase: test-generation strategies drive an app's GUI
// event graph under a seeded event budget and record every sensitive API
// the interpreted handlers call.

#ifndef SANDMINE_EXPLORE_HPP
#define SANDMINE_EXPLORE_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "interp.hpp"
#include "ir.hpp"

namespace sandmine {

enum class StrategyKind { Random, ModelBased, Humanoid, Joker };

struct Strategy {
  StrategyKind kind = StrategyKind::Random;
  std::uint64_t seed = 0;
  int budget = 200;  // GUI events per run; ignored by joker
};

/// "random", "modelbased", "humanoid" or "joker"; throws listing the valid
/// names otherwise.
StrategyKind strategy_from_name(const std::string& name);
std::string strategy_name(StrategyKind kind);
const std::vector<std::string>& strategy_names();

struct ExecutionTrace {
  std::string app_id;
  Strategy strategy;
  int repetition = 1;
  std::vector<std::pair<std::string, std::string>> events;  // (screen, widget)
  std::set<ApiId> sensitive_calls;
  bool truncated = false;
};

/// One exploration run. Launch handlers (entry points, then the start
/// screen's on_enter) always run before any event, even at budget 0; joker
/// runs nothing at all. Deterministic given (app, catalog, strategy).
ExecutionTrace run_exploration(const AppModel& app,
                               const SensitiveCatalog& catalog,
                               const Strategy& strategy, int repetition = 1,
                               const InterpLimits& limits = {});

/// Union of sensitive calls across repetitions of the same (app, strategy).
std::set<ApiId> union_traces(const std::vector<ExecutionTrace>& traces);

std::string trace_to_json(const ExecutionTrace& trace);

}  // namespace sandmine

#endif  // SANDMINE_EXPLORE_HPP
