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

#include "explore.hpp"

#include <algorithm>

#include "error.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace sandmine {

namespace {

const std::vector<std::string> kStrategyNames = {"random", "modelbased",
                                                 "humanoid", "joker"};

// Widget selection per strategy. All randomness is drawn from `rng` in
// execution order, so shorter budgets consume a prefix of longer ones.
std::size_t pick_widget(const Screen& screen, StrategyKind kind, Rng& rng,
                        std::set<std::pair<std::string, std::string>>& visited) {
  const auto& widgets = screen.widgets;
  switch (kind) {
    case StrategyKind::Random:
      return static_cast<std::size_t>(rng.below(widgets.size()));
    case StrategyKind::ModelBased: {
      // Prefer unvisited widgets, smallest widget id first; once everything
      // on the screen has been tried, fall back to uniform choice.
      const Widget* best = nullptr;
      std::size_t best_index = 0;
      for (std::size_t i = 0; i < widgets.size(); ++i) {
        if (visited.count({screen.id, widgets[i].id})) continue;
        if (!best || widgets[i].id < best->id) {
          best = &widgets[i];
          best_index = i;
        }
      }
      if (best) return best_index;
      return static_cast<std::size_t>(rng.below(widgets.size()));
    }
    case StrategyKind::Humanoid: {
      double total = 0;
      for (const auto& w : widgets) total += w.weight;
      double r = rng.unit() * total;
      double acc = 0;
      for (std::size_t i = 0; i < widgets.size(); ++i) {
        acc += widgets[i].weight;
        if (r < acc) return i;
      }
      return widgets.size() - 1;
    }
    case StrategyKind::Joker: break;
  }
  return 0;  // unreachable: joker never picks
}

}  // namespace

StrategyKind strategy_from_name(const std::string& name) {
  if (name == "random") return StrategyKind::Random;
  if (name == "modelbased") return StrategyKind::ModelBased;
  if (name == "humanoid") return StrategyKind::Humanoid;
  if (name == "joker") return StrategyKind::Joker;
  std::string valid;
  for (const auto& n : kStrategyNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown tool '" + name + "' (valid tools: " + valid + ")");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Random: return "random";
    case StrategyKind::ModelBased: return "modelbased";
    case StrategyKind::Humanoid: return "humanoid";
    case StrategyKind::Joker: return "joker";
  }
  return "random";
}

const std::vector<std::string>& strategy_names() { return kStrategyNames; }

ExecutionTrace run_exploration(const AppModel& app,
                               const SensitiveCatalog& catalog,
                               const Strategy& strategy, int repetition,
                               const InterpLimits& limits) {
  if (strategy.budget < 0) {
    throw Error(ErrorKind::InvalidArgument, "budget must be non-negative");
  }
  ExecutionTrace trace;
  trace.app_id = app.id;
  trace.strategy = strategy;
  trace.repetition = repetition;

  // Joker models a tool that never launches the app: no handlers run and
  // its dynamic call set is empty by construction.
  if (strategy.kind == StrategyKind::Joker) return trace;

  Interpreter interp(app, catalog, limits);
  Interpreter::RunState state;
  Rng rng(strategy.seed);
  auto coin = [&rng]() { return rng.coin(); };

  // App launch: entry handlers, then the start screen is entered.
  for (const auto& entry : app.entry_points) interp.invoke(entry, state, coin);
  const Screen* current = app.screens.empty() ? nullptr : &app.screens.front();
  if (current && current->on_enter) interp.invoke(*current->on_enter, state, coin);

  std::set<std::pair<std::string, std::string>> visited;
  for (int event = 0; event < strategy.budget; ++event) {
    if (!current || current->widgets.empty()) break;  // nothing to interact with
    std::size_t index = pick_widget(*current, strategy.kind, rng, visited);
    const Widget& widget = current->widgets[index];
    trace.events.emplace_back(current->id, widget.id);
    visited.insert({current->id, widget.id});
    interp.invoke(widget.handler, state, coin);
    if (widget.transition) {
      current = app.find_screen(*widget.transition);
      if (current && current->on_enter) interp.invoke(*current->on_enter, state, coin);
    }
  }

  trace.sensitive_calls = std::move(state.sensitive_calls);
  trace.truncated = state.truncated;
  return trace;
}

std::set<ApiId> union_traces(const std::vector<ExecutionTrace>& traces) {
  std::set<ApiId> out;
  for (const auto& t : traces) {
    if (t.app_id != traces.front().app_id ||
        t.strategy.kind != traces.front().strategy.kind) {
      throw Error(ErrorKind::InvalidArgument,
                  "union_traces: traces mix apps or strategies ('" +
                      t.app_id + "'/" + strategy_name(t.strategy.kind) +
                      " vs '" + traces.front().app_id + "'/" +
                      strategy_name(traces.front().strategy.kind) + ")");
    }
    out.insert(t.sensitive_calls.begin(), t.sensitive_calls.end());
  }
  return out;
}

std::string trace_to_json(const ExecutionTrace& trace) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& [screen, widget] : trace.events) {
    events.push_back({screen, widget});
  }
  nlohmann::json j{
      {"app_id", trace.app_id},
      {"strategy",
       {{"name", strategy_name(trace.strategy.kind)},
        {"seed", trace.strategy.seed},
        {"budget", trace.strategy.budget}}},
      {"repetition", trace.repetition},
      {"events", events},
      {"sensitive_calls", trace.sensitive_calls},
      {"truncated", trace.truncated},
  };
  return j.dump(2);
}

}  // namespace sandmine
