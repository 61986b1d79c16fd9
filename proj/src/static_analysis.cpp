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

#include "static_analysis.hpp"

#include <sstream>
#include <vector>

namespace sandmine {

std::set<std::string> CallGraph::reachable_from_root() const {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [from, to] : edges) adj[from].push_back(to);

  std::set<std::string> seen{kRoot};
  std::vector<std::string> stack{kRoot};
  while (!stack.empty()) {
    std::string node = std::move(stack.back());
    stack.pop_back();
    auto it = adj.find(node);
    if (it == adj.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return seen;
}

CallGraph build_call_graph(const AppModel& app) {
  CallGraph g;
  g.nodes.insert(CallGraph::kRoot);

  auto link_root = [&g](const std::string& target) {
    g.nodes.insert(target);
    g.edges.insert({CallGraph::kRoot, target});
  };
  for (const auto& entry : app.entry_points) link_root(entry);
  for (const auto& screen : app.screens) {
    if (screen.on_enter) link_root(*screen.on_enter);
    for (const auto& widget : screen.widgets) link_root(widget.handler);
  }

  for (const auto& [id, body] : app.methods) {
    g.nodes.insert(id);
    for (const auto& stmt : body.statements) {
      if (const auto* api = std::get_if<CallApiStmt>(&stmt)) {
        g.nodes.insert(api->api);
        g.edges.insert({id, api->api});
      } else if (const auto* call = std::get_if<CallMethodStmt>(&stmt)) {
        g.nodes.insert(call->callee);
        g.edges.insert({id, call->callee});
      }
    }
  }
  return g;
}

StaticCallSet static_sensitive_set(const AppModel& app,
                                   const SensitiveCatalog& catalog) {
  CallGraph graph = build_call_graph(app);
  StaticCallSet out;
  out.app_id = app.id;
  for (const auto& node : graph.reachable_from_root()) {
    if (!app.has_method(node) && catalog.is_sensitive(node)) {
      out.apis.insert(node);
    }
  }
  return out;
}

ManifestDiff diff_manifest(const AppPair& pair) {
  const Manifest& b = pair.benign.manifest;
  const Manifest& m = pair.malign.manifest;
  ManifestDiff diff;
  for (const auto& p : m.permissions) {
    if (!b.permissions.count(p)) diff.added_permissions.insert(p);
  }
  for (const auto& p : b.permissions) {
    if (!m.permissions.count(p)) diff.removed_permissions.insert(p);
  }
  // A key missing on one side counts as changed.
  for (const auto& [key, value] : b.metadata) {
    auto it = m.metadata.find(key);
    if (it == m.metadata.end() || it->second != value) {
      diff.changed_metadata.insert(key);
    }
  }
  for (const auto& [key, value] : m.metadata) {
    if (!b.metadata.count(key)) diff.changed_metadata.insert(key);
  }
  return diff;
}

std::string to_dot(const CallGraph& graph) {
  std::ostringstream out;
  out << "digraph callgraph {\n";
  for (const auto& node : graph.nodes) {
    out << "  \"" << node << "\";\n";
  }
  for (const auto& [from, to] : graph.edges) {
    out << "  \"" << from << "\" -> \"" << to << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sandmine
