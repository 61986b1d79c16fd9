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

#ifndef SANDMINE_INTERP_HPP
#define SANDMINE_INTERP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "catalog.hpp"
#include "ir.hpp"

namespace sandmine {

/// A concrete runtime value. Unknown stands for anything the IR cannot
/// compute itself: results of external API calls and unbound parameters.
struct Value {
  enum class Kind { Unknown, Int, Str };
  Kind kind = Kind::Unknown;
  std::int64_t number = 0;
  std::string text;

  static Value unknown() { return {}; }
  static Value of_int(std::int64_t v) { return {Kind::Int, v, ""}; }
  static Value of_str(std::string s) { return {Kind::Str, 0, std::move(s)}; }
};

struct InterpLimits {
  int step_limit = 10000;  // statements per handler invocation
  int depth_limit = 512;   // nested method calls
};

/// Concrete small-step interpreter over method bodies. Variables live in a
/// single store shared across the whole run (app state persists across GUI
/// events); parameters are bound into that store at each call.
class Interpreter {
 public:
  /// Decides branch outcomes when the condition value is unknown.
  using CoinFlip = std::function<bool()>;

  struct RunState {
    std::map<VarName, Value> store;
    std::set<ApiId> sensitive_calls;
    bool truncated = false;  // a handler hit the step or depth limit
  };

  Interpreter(const AppModel& app, const SensitiveCatalog& catalog,
              InterpLimits limits = {})
      : app_(app), catalog_(catalog), limits_(limits) {}

  /// Invokes a launch handler, widget handler or on_enter target: a declared
  /// method runs with parameters bound to Unknown, anything else is an
  /// external API call. Each invocation gets a fresh step budget.
  void invoke(const MethodId& target, RunState& state, const CoinFlip& coin) const;

 private:
  Value read(const RunState& state, const VarName& var) const;
  Value exec_body(const MethodBody& body, RunState& state, const CoinFlip& coin,
                  int depth, int& steps) const;

  const AppModel& app_;
  const SensitiveCatalog& catalog_;
  InterpLimits limits_;
};

/// Branch truthiness shared with analyses: integers are true when non-zero,
/// strings when non-empty. Unknown values have no truth value here.
bool truthy(const Value& v);

}  // namespace sandmine

#endif  // SANDMINE_INTERP_HPP
