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
// Experiment harness: runs the tool x pair detection matrix, aggregates
// detection counts, the static-impact metric, tool-overlap partitions,
// combined detector counts, and logistic-regression significance tests.

#ifndef SANDMINE_BENCH_HPP
#define SANDMINE_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "explore.hpp"
#include "interp.hpp"
#include "ir.hpp"
#include "logistic.hpp"
#include "sandbox.hpp"

namespace sandmine {

struct ExperimentConfig {
  std::vector<std::string> tools = {"random", "modelbased", "humanoid", "joker"};
  int budget = 200;
  int repetitions = 3;
  /// Disables the static component entirely: only the WOS pass runs. By
  /// default both WS and WOS passes run so the impact metric is computable
  /// from a single invocation.
  bool disable_static = false;
  std::uint64_t seed = 42;
  std::string output_format = "markdown";  // csv | json | markdown
  InterpLimits limits;
};

/// Checks tool names, repetitions and output format; throws on bad values.
void validate_config(const ExperimentConfig& config);

/// Seed used for repetition k (1-based). Benign and malign runs of a pair
/// share it, so identical apps produce identical traces.
std::uint64_t repetition_seed(const ExperimentConfig& config, int repetition);

struct Observation {
  std::string tool;
  int repetition = 1;  // 1..r; 0 is the union-of-repetitions row
  bool static_enabled = false;
  std::string pair_id;
  bool detected = false;
};

inline constexpr int kUnionRepetition = 0;

/// tool -> pair_id -> detected (union-of-repetitions verdicts).
using VerdictTable = std::map<std::string, std::map<std::string, bool>>;

struct RunResult {
  ExperimentConfig config;
  std::vector<std::string> pair_ids;
  std::vector<std::pair<std::string, std::string>> skipped;  // (pair, reason)
  std::vector<Observation> observations;                     // sorted, stable
  VerdictTable union_ws;   // empty when the static pass is disabled
  VerdictTable union_wos;
  /// Union-of-repetitions verdicts with their offending API sets, for the
  /// qualitative dissection of what tripped each detection.
  std::vector<SandboxVerdict> union_verdicts;
  std::vector<ExecutionTrace> traces;  // populated when keep_traces is set
};

RunResult run_experiment(const std::vector<AppPair>& dataset,
                         const SensitiveCatalog& catalog,
                         const ExperimentConfig& config,
                         bool keep_traces = false);

std::map<std::string, int> count_detections(const VerdictTable& verdicts);

/// Percentage drop in detections when the static component is removed:
/// (ws - wos) * 100 / ws. Undefined (nullopt) when ws is 0; negative values
/// are reported as-is.
std::optional<double> impact(long long ws_count, long long wos_count);

/// Two decimals, or "n/a" for the undefined case.
std::string format_impact(const std::optional<double>& value);

struct OverlapReport {
  std::vector<std::string> tools;  // sorted
  /// Exact-detector partition: pairs detected by precisely this tool subset.
  std::map<std::vector<std::string>, int> regions;
  int detected_by_any = 0;
  int detected_by_none = 0;
  int total_pairs = 0;
};

/// Requires every tool to have been evaluated on the same pair set.
OverlapReport overlap_report(const VerdictTable& verdicts_by_tool);

struct CombinedCount {
  int tool_alone = 0;
  int taint_alone = 0;
  int combined = 0;   // |tool u taint|
  int increase = 0;   // combined - tool_alone
};

std::map<std::string, CombinedCount> combine_detectors(
    const std::map<std::string, std::set<std::string>>& detected_by_tool,
    const std::set<std::string>& detected_by_taint);

enum class Formula { InterceptOnly, Tool, ToolStaticRepetition };

/// Accepts "detected ~ 1", "detected ~ tool" and
/// "detected ~ tool + static + repetition" (response name and case are
/// ignored; "malware" works as well).
Formula parse_formula(const std::string& text);
std::string formula_text(Formula formula);

/// Encodes observations (categorical tools as indicator contrasts against
/// the alphabetically first tool, repetition numeric) and fits by IRLS.
/// Union rows (repetition 0) are excluded.
RegressionFit fit_logistic(const std::vector<Observation>& observations,
                           Formula formula);

}  // namespace sandmine

#endif  // SANDMINE_BENCH_HPP
