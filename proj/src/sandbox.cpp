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

#include "sandbox.hpp"

#include "error.hpp"

namespace sandmine {

Sandbox build_sandbox(const std::string& app_id,
                      const std::set<ApiId>& dynamic_calls,
                      const std::optional<StaticCallSet>& static_set) {
  Sandbox box;
  box.app_id = app_id;
  box.allowed = dynamic_calls;
  if (static_set) {
    if (static_set->app_id != app_id) {
      throw Error(ErrorKind::InvalidArgument,
                  "static call set belongs to '" + static_set->app_id +
                      "', sandbox is for '" + app_id + "'");
    }
    box.allowed.insert(static_set->apis.begin(), static_set->apis.end());
    box.built_with_static = true;
  }
  return box;
}

SandboxVerdict detect(const AppPair& pair, const Sandbox& sandbox,
                      const std::set<ApiId>& malign_observed,
                      const std::string& tool) {
  if (sandbox.app_id != pair.benign.id) {
    throw Error(ErrorKind::InvalidArgument,
                "sandbox for '" + sandbox.app_id +
                    "' does not match the benign version '" + pair.benign.id +
                    "' of pair '" + pair.pair_id + "'");
  }
  SandboxVerdict verdict;
  verdict.pair_id = pair.pair_id;
  verdict.tool = tool;
  verdict.with_static = sandbox.built_with_static;
  for (const auto& api : malign_observed) {
    if (!sandbox.allowed.count(api)) verdict.offending.insert(api);
  }
  verdict.detected = !verdict.offending.empty();
  return verdict;
}

}  // namespace sandmine
