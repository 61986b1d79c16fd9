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

#ifndef SANDMINE_SANDBOX_HPP
#define SANDMINE_SANDBOX_HPP

#include <optional>
#include <set>
#include <string>

#include "catalog.hpp"
#include "ir.hpp"
#include "static_analysis.hpp"

namespace sandmine {

/// Per-app allowlist mined in the exploratory phase: the sensitive APIs the
/// trusted version was observed (or statically determined) to call.
struct Sandbox {
  std::string app_id;
  std::set<ApiId> allowed;
  bool built_with_static = false;
};

/// Dynamic calls alone (WOS) or fused with the static call set (WS).
Sandbox build_sandbox(const std::string& app_id,
                      const std::set<ApiId>& dynamic_calls,
                      const std::optional<StaticCallSet>& static_set);

struct SandboxVerdict {
  std::string pair_id;
  std::string tool;
  bool with_static = false;
  std::set<ApiId> offending;  // malign calls outside the sandbox
  bool detected = false;      // offending non-empty
};

/// Flags the pair when the malign observation set contains a sensitive API
/// the benign sandbox does not allow. The sandbox must have been built from
/// the pair's benign version.
SandboxVerdict detect(const AppPair& pair, const Sandbox& sandbox,
                      const std::set<ApiId>& malign_observed,
                      const std::string& tool);

}  // namespace sandmine

#endif  // SANDMINE_SANDBOX_HPP
