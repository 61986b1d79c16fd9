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

#include "bench.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "error.hpp"
#include "sandbox.hpp"
#include "static_analysis.hpp"

namespace sandmine {

void validate_config(const ExperimentConfig& config) {
  if (config.tools.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no tools selected");
  }
  for (const auto& tool : config.tools) strategy_from_name(tool);
  std::set<std::string> unique(config.tools.begin(), config.tools.end());
  if (unique.size() != config.tools.size()) {
    throw Error(ErrorKind::InvalidArgument, "tool list contains duplicates");
  }
  if (config.repetitions < 1) {
    throw Error(ErrorKind::InvalidArgument, "repetitions must be >= 1");
  }
  if (config.budget < 0) {
    throw Error(ErrorKind::InvalidArgument, "budget must be >= 0");
  }
  if (config.output_format != "csv" && config.output_format != "json" &&
      config.output_format != "markdown") {
    throw Error(ErrorKind::InvalidArgument,
                "unknown output format '" + config.output_format +
                    "' (expected csv, json or markdown)");
  }
}

std::uint64_t repetition_seed(const ExperimentConfig& config, int repetition) {
  return config.seed + static_cast<std::uint64_t>(repetition - 1);
}

namespace {

struct PairWork {
  // Per repetition (index 0 = repetition 1) dynamic call sets.
  std::vector<std::set<ApiId>> benign_dynamic, malign_dynamic;
  std::set<ApiId> benign_union, malign_union;
  std::optional<StaticCallSet> benign_static, malign_static;
};

std::set<ApiId> with_static(const std::set<ApiId>& dynamic,
                            const StaticCallSet& stat) {
  std::set<ApiId> out = dynamic;
  out.insert(stat.apis.begin(), stat.apis.end());
  return out;
}

}  // namespace

RunResult run_experiment(const std::vector<AppPair>& dataset,
                         const SensitiveCatalog& catalog,
                         const ExperimentConfig& config, bool keep_traces) {
  validate_config(config);

  RunResult result;
  result.config = config;

  std::vector<const AppPair*> pairs;
  for (const auto& pair : dataset) pairs.push_back(&pair);
  std::sort(pairs.begin(), pairs.end(),
            [](const AppPair* a, const AppPair* b) {
              return a->pair_id < b->pair_id;
            });

  const bool run_ws = !config.disable_static;

  for (const AppPair* pair : pairs) {
    PairWork work;
    try {
      if (run_ws) {
        work.benign_static = static_sensitive_set(pair->benign, catalog);
        work.malign_static = static_sensitive_set(pair->malign, catalog);
      }
    } catch (const std::exception& e) {
      result.skipped.emplace_back(pair->pair_id, e.what());
      continue;
    }
    result.pair_ids.push_back(pair->pair_id);

    for (const auto& tool : config.tools) {
      StrategyKind kind = strategy_from_name(tool);
      work.benign_dynamic.clear();
      work.malign_dynamic.clear();
      work.benign_union.clear();
      work.malign_union.clear();

      for (int rep = 1; rep <= config.repetitions; ++rep) {
        Strategy strategy{kind, repetition_seed(config, rep), config.budget};
        ExecutionTrace benign_trace = run_exploration(
            pair->benign, catalog, strategy, rep, config.limits);
        ExecutionTrace malign_trace = run_exploration(
            pair->malign, catalog, strategy, rep, config.limits);
        work.benign_dynamic.push_back(benign_trace.sensitive_calls);
        work.malign_dynamic.push_back(malign_trace.sensitive_calls);
        work.benign_union.insert(benign_trace.sensitive_calls.begin(),
                                 benign_trace.sensitive_calls.end());
        work.malign_union.insert(malign_trace.sensitive_calls.begin(),
                                 malign_trace.sensitive_calls.end());
        if (keep_traces) {
          result.traces.push_back(std::move(benign_trace));
          result.traces.push_back(std::move(malign_trace));
        }
      }

      auto judge = [&](const std::set<ApiId>& benign_dyn,
                       const std::set<ApiId>& malign_dyn, bool use_static) {
        Sandbox box = build_sandbox(
            pair->benign.id, benign_dyn,
            use_static ? work.benign_static : std::optional<StaticCallSet>{});
        std::set<ApiId> observed =
            use_static ? with_static(malign_dyn, *work.malign_static)
                       : malign_dyn;
        return detect(*pair, box, observed, tool);
      };

      for (int mode = 0; mode < 2; ++mode) {
        bool use_static = mode == 0;
        if (use_static && !run_ws) continue;
        for (int rep = 1; rep <= config.repetitions; ++rep) {
          SandboxVerdict v = judge(work.benign_dynamic[rep - 1],
                                   work.malign_dynamic[rep - 1], use_static);
          result.observations.push_back(
              {tool, rep, use_static, pair->pair_id, v.detected});
        }
        SandboxVerdict v = judge(work.benign_union, work.malign_union,
                                 use_static);
        result.observations.push_back(
            {tool, kUnionRepetition, use_static, pair->pair_id, v.detected});
        auto& table = use_static ? result.union_ws : result.union_wos;
        table[tool][pair->pair_id] = v.detected;
        result.union_verdicts.push_back(std::move(v));
      }
    }
  }

  std::sort(result.observations.begin(), result.observations.end(),
            [](const Observation& a, const Observation& b) {
              if (a.tool != b.tool) return a.tool < b.tool;
              if (a.static_enabled != b.static_enabled)
                return a.static_enabled > b.static_enabled;  // WS first
              if (a.pair_id != b.pair_id) return a.pair_id < b.pair_id;
              return a.repetition < b.repetition;
            });
  std::sort(result.union_verdicts.begin(), result.union_verdicts.end(),
            [](const SandboxVerdict& a, const SandboxVerdict& b) {
              if (a.tool != b.tool) return a.tool < b.tool;
              if (a.with_static != b.with_static)
                return a.with_static > b.with_static;
              return a.pair_id < b.pair_id;
            });
  return result;
}

std::map<std::string, int> count_detections(const VerdictTable& verdicts) {
  std::map<std::string, int> counts;
  for (const auto& [tool, by_pair] : verdicts) {
    int n = 0;
    for (const auto& [pair, detected] : by_pair) n += detected ? 1 : 0;
    counts[tool] = n;
  }
  return counts;
}

std::optional<double> impact(long long ws_count, long long wos_count) {
  if (ws_count == 0) return std::nullopt;
  return static_cast<double>(ws_count - wos_count) * 100.0 /
         static_cast<double>(ws_count);
}

std::string format_impact(const std::optional<double>& value) {
  if (!value) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *value);
  return buf;
}

OverlapReport overlap_report(const VerdictTable& verdicts_by_tool) {
  if (verdicts_by_tool.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no verdicts to overlap");
  }
  OverlapReport report;
  const auto& reference = verdicts_by_tool.begin()->second;
  for (const auto& [tool, by_pair] : verdicts_by_tool) {
    report.tools.push_back(tool);
    if (by_pair.size() != reference.size() ||
        !std::equal(by_pair.begin(), by_pair.end(), reference.begin(),
                    [](const auto& a, const auto& b) {
                      return a.first == b.first;
                    })) {
      throw Error(ErrorKind::InvalidArgument,
                  "tool '" + tool + "' was evaluated on a different pair set");
    }
  }

  report.total_pairs = static_cast<int>(reference.size());
  for (const auto& [pair_id, unused] : reference) {
    std::vector<std::string> detectors;
    for (const auto& [tool, by_pair] : verdicts_by_tool) {
      if (by_pair.at(pair_id)) detectors.push_back(tool);
    }
    if (detectors.empty()) {
      ++report.detected_by_none;
    } else {
      ++report.detected_by_any;
      ++report.regions[detectors];
    }
  }
  return report;
}

std::map<std::string, CombinedCount> combine_detectors(
    const std::map<std::string, std::set<std::string>>& detected_by_tool,
    const std::set<std::string>& detected_by_taint) {
  std::map<std::string, CombinedCount> out;
  for (const auto& [tool, detected] : detected_by_tool) {
    CombinedCount c;
    c.tool_alone = static_cast<int>(detected.size());
    c.taint_alone = static_cast<int>(detected_by_taint.size());
    std::set<std::string> merged = detected;
    merged.insert(detected_by_taint.begin(), detected_by_taint.end());
    c.combined = static_cast<int>(merged.size());
    c.increase = c.combined - c.tool_alone;
    out[tool] = c;
  }
  return out;
}

Formula parse_formula(const std::string& text) {
  auto lowered = text;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto tilde = lowered.find('~');
  if (tilde == std::string::npos) {
    throw Error(ErrorKind::InvalidArgument,
                "formula must look like 'detected ~ tool + static + repetition'");
  }
  std::set<std::string> terms;
  std::string term;
  for (std::size_t i = tilde + 1; i <= lowered.size(); ++i) {
    char c = i < lowered.size() ? lowered[i] : '+';
    if (c == '+') {
      if (!term.empty()) terms.insert(term);
      term.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      term += c;
    }
  }
  if (terms == std::set<std::string>{"1"}) return Formula::InterceptOnly;
  if (terms == std::set<std::string>{"tool"}) return Formula::Tool;
  if (terms == std::set<std::string>{"tool", "static", "repetition"} ||
      terms == std::set<std::string>{"tool", "staticanalysis", "repetition"}) {
    return Formula::ToolStaticRepetition;
  }
  throw Error(ErrorKind::InvalidArgument,
              "unsupported formula terms; use '1', 'tool', or "
              "'tool + static + repetition'");
}

std::string formula_text(Formula formula) {
  switch (formula) {
    case Formula::InterceptOnly: return "detected ~ 1";
    case Formula::Tool: return "detected ~ tool";
    case Formula::ToolStaticRepetition:
      return "detected ~ tool + static + repetition";
  }
  return "detected ~ 1";
}

RegressionFit fit_logistic(const std::vector<Observation>& observations,
                           Formula formula) {
  std::vector<const Observation*> rows;
  for (const auto& obs : observations) {
    if (obs.repetition != kUnionRepetition) rows.push_back(&obs);
  }
  if (rows.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no per-repetition observations");
  }

  std::set<std::string> levels;
  for (const auto* obs : rows) levels.insert(obs->tool);

  std::vector<std::string> names{"(Intercept)"};
  std::vector<std::string> contrast_levels;
  if (formula != Formula::InterceptOnly) {
    // Indicator contrasts; the alphabetically first tool is the reference.
    bool first = true;
    for (const auto& level : levels) {
      if (first) {
        first = false;
        continue;
      }
      contrast_levels.push_back(level);
      names.push_back("tool[" + level + "]");
    }
  }
  if (formula == Formula::ToolStaticRepetition) {
    names.push_back("static");
    names.push_back("repetition");
  }

  std::vector<std::vector<double>> design;
  std::vector<int> outcomes;
  design.reserve(rows.size());
  outcomes.reserve(rows.size());
  for (const auto* obs : rows) {
    std::vector<double> row{1.0};
    for (const auto& level : contrast_levels) {
      row.push_back(obs->tool == level ? 1.0 : 0.0);
    }
    if (formula == Formula::ToolStaticRepetition) {
      row.push_back(obs->static_enabled ? 1.0 : 0.0);
      row.push_back(static_cast<double>(obs->repetition));
    }
    design.push_back(std::move(row));
    outcomes.push_back(obs->detected ? 1 : 0);
  }
  return fit_logistic_matrix(design, outcomes, names);
}

}  // namespace sandmine
