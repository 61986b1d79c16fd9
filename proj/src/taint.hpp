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
// Flow-sensitive, context-insensitive, field-blind taint propagation over
// method bodies, and the two-version differencing detector built on it.
//
// Propagation rules: an assignment copies taint; a source-class API call
// taints its result; a sink-class API call with a tainted argument emits one
// flow per originating source; method calls carry taint through parameters
// and back through returns. Branches join both arms (may-analysis). Nothing
// else propagates - in particular a non-source external call returns an
// untainted value.

#ifndef SANDMINE_TAINT_HPP
#define SANDMINE_TAINT_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "ir.hpp"

namespace sandmine {

/// Statement path a taint took from its source call to a sink call.
using Witness = std::vector<std::pair<MethodId, int>>;

using SourceSinkPair = std::pair<ApiId, ApiId>;

struct FlowSet {
  std::string app_id;
  /// One flow per (source, sink) endpoint pair; the witness is the first
  /// path that established the flow.
  std::map<SourceSinkPair, Witness> flows;

  std::set<SourceSinkPair> pairs() const;
  bool contains(const ApiId& source, const ApiId& sink) const {
    return flows.count({source, sink}) != 0;
  }
};

/// Per-variable taint at one program point: variable -> originating source
/// APIs, each with the witness path that carried it here.
struct TaintState {
  std::map<VarName, std::map<ApiId, Witness>> tainted;

  /// Union of source sets; existing witnesses win. Returns true when a new
  /// (variable, source) membership appeared - witnesses never affect
  /// fixpoint decisions.
  bool join(const TaintState& other);

  bool operator==(const TaintState& other) const;  // membership only
};

/// Analyzes the app from the same synthetic roots as the static component
/// (entry points, widget handlers, on_enter targets) to a global fixpoint.
/// App state persists across GUI events, so root exit states feed back into
/// root entry states until the flow set stabilizes.
FlowSet analyze_taint(const AppModel& app, const SensitiveCatalog& catalog);

struct TaintVerdict {
  std::string pair_id;
  FlowSet s1;  // benign flows
  FlowSet s2;  // malign flows
  std::set<SourceSinkPair> s3;  // pairs(s2) \ pairs(s1)
  bool detected = false;        // s3 non-empty
};

/// The differencing detector: flows of the suspect version not exhibited by
/// the trusted version, projected to (source, sink) endpoint pairs.
TaintVerdict taint_diff(const AppPair& pair, const SensitiveCatalog& catalog);

std::string flowset_to_json(const FlowSet& flows);

}  // namespace sandmine

#endif  // SANDMINE_TAINT_HPP
