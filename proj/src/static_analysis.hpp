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
// Static component: context-insensitive call-graph reachability from the
// GUI/entry roots down to sensitive APIs, plus manifest diffing.

#ifndef SANDMINE_STATIC_ANALYSIS_HPP
#define SANDMINE_STATIC_ANALYSIS_HPP

#include <set>
#include <string>
#include <utility>

#include "catalog.hpp"
#include "ir.hpp"

namespace sandmine {

/// Call graph over declared methods and referenced external API ids. A
/// synthetic root node links every entry point, widget handler and
/// on_enter target, whether or not the GUI can actually reach them.
struct CallGraph {
  static constexpr const char* kRoot = "<root>";

  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;

  std::set<std::string> reachable_from_root() const;
};

CallGraph build_call_graph(const AppModel& app);

struct StaticCallSet {
  std::string app_id;
  std::set<ApiId> apis;
};

/// Cataloged APIs reachable from the synthetic root. Declared methods shadow
/// catalog names: a call that resolves to an app method is never an API call.
StaticCallSet static_sensitive_set(const AppModel& app,
                                   const SensitiveCatalog& catalog);

struct ManifestDiff {
  std::set<std::string> added_permissions;    // in malign, not benign
  std::set<std::string> removed_permissions;  // in benign, not malign
  std::set<std::string> changed_metadata;     // keys whose values differ

  bool empty() const {
    return added_permissions.empty() && removed_permissions.empty() &&
           changed_metadata.empty();
  }
};

/// Benign-to-malign manifest differences. Reported for qualitative review
/// only; manifest changes never feed detection.
ManifestDiff diff_manifest(const AppPair& pair);

/// Graphviz rendering of the call graph, for debugging.
std::string to_dot(const CallGraph& graph);

}  // namespace sandmine

#endif  // SANDMINE_STATIC_ANALYSIS_HPP
