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
// Results-directory plumbing: writing runs to disk, loading them back, and
// rendering reports. Layout of a run directory:
//
//   config.json         echo of the experiment configuration
//   observations.csv    tool,repetition,static_enabled,pair_id,detected
//   summary.json        counts and union verdicts (feeds `report`)
//   traces/             one JSON record per exploration run
//   report.md|json|csv  rendered report
//
// and of a taint run directory:
//
//   flows/              one JSON flow set per app version
//   taint_verdicts.csv  pair_id,s1,s2,s3,detected
//   taint_observations.csv   taint-vs-static rows for `regress`
//   timings.csv         wall-clock per app (reporting only)
//   taint_summary.json

#ifndef SANDMINE_HARNESS_HPP
#define SANDMINE_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bench.hpp"
#include "json.hpp"
#include "taint.hpp"

namespace sandmine {

struct DatasetLoad {
  std::vector<AppPair> pairs;
  std::vector<std::pair<std::string, std::string>> skipped;  // (pair, reason)
  std::vector<std::string> warnings;
};

/// Like parse_pair_dataset but demotes broken pairs to logged skips, the
/// way the harness treats apps it cannot instrument.
DatasetLoad load_dataset_lenient(const std::string& dir);

void write_observations_csv(const std::string& path,
                            const std::vector<Observation>& observations);
std::vector<Observation> read_observations_csv(const std::string& path);

nlohmann::json summary_json(const RunResult& result);

/// Runs the experiment and writes the run directory; returns the summary.
nlohmann::json run_experiment_to_dir(const std::vector<AppPair>& dataset,
                                     const DatasetLoad* load_info,
                                     const SensitiveCatalog& catalog,
                                     const ExperimentConfig& config,
                                     const std::string& out_dir);

/// Taint-differences every pair, comparing against the static-only detector;
/// writes the taint run directory and returns its summary.
nlohmann::json taint_dataset_to_dir(const std::vector<AppPair>& dataset,
                                    const SensitiveCatalog& catalog,
                                    const std::string& out_dir);

/// Table-style report (detection counts + impact, overlap partition, and,
/// when a taint summary is supplied, combined detector counts).
/// `format` is csv, json or markdown.
std::string render_report(const nlohmann::json& summary,
                          const std::optional<nlohmann::json>& taint_summary,
                          const std::string& format);

std::string render_report_from_dirs(const std::string& results_dir,
                                    const std::optional<std::string>& taint_dir,
                                    const std::string& format);

std::string render_regression(const RegressionFit& fit,
                              const std::string& format);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace sandmine

#endif  // SANDMINE_HARNESS_HPP
