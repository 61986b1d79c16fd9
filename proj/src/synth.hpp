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
// Synthetic benign/malign pair generator with constructed ground truth.
// Every pair belongs to a class with a known detection signature:
//
//   static_only        leak in a handler no GUI path reaches: the static
//                      pass and the taint differencer see it, dynamic
//                      exploration cannot
//   launch_call        new sensitive call at app launch: any tool that runs
//                      the app sees it
//   random_unique      new call behind a widget that, under the experiment
//                      seeds, only the random strategy fires
//   modelbased_unique  likewise for the model-based strategy
//   humanoid_unique    likewise for the weight-guided strategy
//   taint_only         an existing source rewired into an existing sink:
//                      the API set is unchanged, only the flow is new
//   manifest_only      metadata-only repackaging; nothing detects it
//   identical          no change at all
//
// The tool-unique classes are calibrated by replaying the exact exploration
// the experiment will run (same seeds, same budget), so the recorded ground
// truth is exact for that configuration.

#ifndef SANDMINE_SYNTH_HPP
#define SANDMINE_SYNTH_HPP

#include <set>
#include <string>
#include <vector>

#include "bench.hpp"
#include "catalog.hpp"
#include "ir.hpp"
#include "json.hpp"

namespace sandmine {

struct SynthProfile {
  int static_only = 6;
  int launch_call = 8;
  int random_unique = 3;
  int modelbased_unique = 2;
  int humanoid_unique = 1;
  int taint_only = 5;
  int manifest_only = 3;
  int identical = 2;

  int total() const {
    return static_only + launch_call + random_unique + modelbased_unique +
           humanoid_unique + taint_only + manifest_only + identical;
  }
};

struct SynthPairInfo {
  std::string pair_id;
  std::string klass;
  bool ws_detected = false;  // sandbox detection with the static pass (any tool)
  std::set<std::string> wos_detected_by;  // tools that detect without it
  bool taint_detected = false;
  std::set<std::string> changed_metadata;
  std::set<std::string> added_permissions;
};

struct SynthDataset {
  std::vector<AppPair> pairs;
  std::vector<SynthPairInfo> info;
};

/// Generates the dataset and verifies every pair's signature against the
/// real pipeline under `config` (tools listed there are the ones calibrated
/// against). Deterministic for a fixed profile and configuration.
SynthDataset generate_synth_dataset(const SynthProfile& profile,
                                    const ExperimentConfig& config,
                                    const SensitiveCatalog& catalog);

/// Writes `<dir>/<pair_id>/{benign.app,malign.app}` plus ground_truth.json.
void write_synth_dataset(const std::string& dir, const SynthDataset& dataset,
                         const ExperimentConfig& config);

nlohmann::json ground_truth_json(const SynthDataset& dataset,
                                 const ExperimentConfig& config);

}  // namespace sandmine

#endif  // SANDMINE_SYNTH_HPP
