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
// The mini-app intermediate representation: an app is a manifest, a GUI
// event graph (screens and widgets), and a set of methods whose bodies are
// flat statement lists. The text format is documented in docs/ir-format.md.

#ifndef SANDMINE_IR_HPP
#define SANDMINE_IR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "catalog.hpp"

namespace sandmine {

using MethodId = std::string;
using VarName = std::string;

struct Manifest {
  std::set<std::string> permissions;
  std::map<std::string, std::string> metadata;

  bool operator==(const Manifest&) const = default;
};

/// Right-hand side of an assignment: a variable or a literal constant.
struct Operand {
  enum class Kind { Var, IntConst, StrConst };
  Kind kind = Kind::Var;
  std::string text;          // variable name or string payload
  std::int64_t number = 0;   // integer payload

  static Operand var(std::string name) {
    return {Kind::Var, std::move(name), 0};
  }
  static Operand int_const(std::int64_t v) { return {Kind::IntConst, "", v}; }
  static Operand str_const(std::string s) {
    return {Kind::StrConst, std::move(s), 0};
  }

  bool operator==(const Operand&) const = default;
};

struct AssignStmt {
  VarName dst;
  Operand src;
  bool operator==(const AssignStmt&) const = default;
};

/// Call to an external API identifier (anything not declared in the app).
struct CallApiStmt {
  ApiId api;
  std::vector<VarName> args;
  std::optional<VarName> ret;
  bool operator==(const CallApiStmt&) const = default;
};

/// Call to a method declared in the same app.
struct CallMethodStmt {
  MethodId callee;
  std::vector<VarName> args;
  std::optional<VarName> ret;
  bool operator==(const CallMethodStmt&) const = default;
};

struct BranchStmt {
  VarName cond;
  int then_index = 0;
  int else_index = 0;
  bool operator==(const BranchStmt&) const = default;
};

struct ReturnStmt {
  std::optional<VarName> value;
  bool operator==(const ReturnStmt&) const = default;
};

using Statement =
    std::variant<AssignStmt, CallApiStmt, CallMethodStmt, BranchStmt, ReturnStmt>;

struct MethodBody {
  MethodId id;
  std::vector<VarName> params;
  std::vector<Statement> statements;
  bool operator==(const MethodBody&) const = default;
};

struct Widget {
  std::string id;
  MethodId handler;                      // declared method or external API
  std::optional<std::string> transition; // target screen id
  double weight = 1.0;                   // prior interaction likelihood, > 0
  bool operator==(const Widget&) const = default;
};

struct Screen {
  std::string id;
  std::vector<Widget> widgets;
  std::optional<MethodId> on_enter;
  bool operator==(const Screen&) const = default;
};

struct AppModel {
  std::string id;
  Manifest manifest;
  std::vector<Screen> screens;
  std::map<MethodId, MethodBody> methods;
  std::vector<MethodId> entry_points;

  bool has_method(const MethodId& m) const { return methods.count(m) != 0; }
  const Screen* find_screen(const std::string& screen_id) const;

  bool operator==(const AppModel&) const = default;
};

struct AppPair {
  AppModel benign;
  AppModel malign;
  std::string pair_id;
};

struct ParseOptions {
  /// When set, strict reference checking resolves call targets and GUI
  /// handlers against this catalog.
  const SensitiveCatalog* catalog = nullptr;

  /// With strict_refs, a call target or handler that is neither a declared
  /// method nor a cataloged API is a reference error. The default keeps the
  /// permissive reading: unresolved targets become external API calls,
  /// the way real analyzers treat framework methods.
  bool strict_refs = false;

  /// Collects lint diagnostics (reads of never-assigned variables,
  /// unresolved targets under the permissive mode).
  std::vector<std::string>* warnings = nullptr;
};

/// Parses and validates one `.app` source. Throws Error with a line/column
/// on syntax problems and names the offending identifier on reference and
/// duplicate errors. Pure: equal text yields an equal model.
AppModel parse_app(const std::string& text, const ParseOptions& opts = {});

/// Canonical text rendering; `parse_app(serialize(m)) == m`.
std::string serialize(const AppModel& app);

/// Loads one `<dataset_dir>/<pair_id>/{benign.app,malign.app}` pair. A
/// missing half is an error naming the pair; parse errors carry the pair
/// context.
AppPair load_pair(const std::string& dataset_dir, const std::string& pair_id,
                  const ParseOptions& opts = {});

/// Loads `<dir>/<pair_id>/{benign.app,malign.app}` for every subdirectory,
/// sorted by pair id. A subdirectory with only one half of a pair is an
/// error naming the pair; subdirectories without any `.app` file are skipped
/// with a warning, as is an entirely empty dataset.
std::vector<AppPair> parse_pair_dataset(const std::string& dir,
                                        const ParseOptions& opts = {},
                                        std::vector<std::string>* warnings = nullptr);

}  // namespace sandmine

#endif  // SANDMINE_IR_HPP
