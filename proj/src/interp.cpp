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

#include "interp.hpp"

namespace sandmine {

bool truthy(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.number != 0;
    case Value::Kind::Str: return !v.text.empty();
    case Value::Kind::Unknown: break;
  }
  return false;  // callers must special-case Unknown
}

Value Interpreter::read(const RunState& state, const VarName& var) const {
  auto it = state.store.find(var);
  return it == state.store.end() ? Value::unknown() : it->second;
}

void Interpreter::invoke(const MethodId& target, RunState& state,
                         const CoinFlip& coin) const {
  auto it = app_.methods.find(target);
  if (it == app_.methods.end()) {
    // Handler wired straight to an external API.
    if (catalog_.is_sensitive(target)) state.sensitive_calls.insert(target);
    return;
  }
  for (const auto& p : it->second.params) state.store[p] = Value::unknown();
  int steps = 0;
  exec_body(it->second, state, coin, 0, steps);
}

Value Interpreter::exec_body(const MethodBody& body, RunState& state,
                             const CoinFlip& coin, int depth,
                             int& steps) const {
  if (depth > limits_.depth_limit) {
    state.truncated = true;
    return Value::unknown();
  }
  std::size_t pc = 0;
  while (pc < body.statements.size()) {
    if (++steps > limits_.step_limit) {
      state.truncated = true;
      return Value::unknown();
    }
    const Statement& stmt = body.statements[pc];

    if (const auto* a = std::get_if<AssignStmt>(&stmt)) {
      switch (a->src.kind) {
        case Operand::Kind::Var:
          state.store[a->dst] = read(state, a->src.text);
          break;
        case Operand::Kind::IntConst:
          state.store[a->dst] = Value::of_int(a->src.number);
          break;
        case Operand::Kind::StrConst:
          state.store[a->dst] = Value::of_str(a->src.text);
          break;
      }
      ++pc;
    } else if (const auto* c = std::get_if<CallApiStmt>(&stmt)) {
      if (catalog_.is_sensitive(c->api)) state.sensitive_calls.insert(c->api);
      if (c->ret) state.store[*c->ret] = Value::unknown();
      ++pc;
    } else if (const auto* m = std::get_if<CallMethodStmt>(&stmt)) {
      const MethodBody& callee = app_.methods.at(m->callee);
      std::vector<Value> args;
      args.reserve(m->args.size());
      for (const auto& v : m->args) args.push_back(read(state, v));
      for (std::size_t i = 0; i < callee.params.size(); ++i) {
        state.store[callee.params[i]] =
            i < args.size() ? args[i] : Value::unknown();
      }
      Value result = exec_body(callee, state, coin, depth + 1, steps);
      if (state.truncated) return Value::unknown();
      if (m->ret) state.store[*m->ret] = result;
      ++pc;
    } else if (const auto* b = std::get_if<BranchStmt>(&stmt)) {
      Value cond = read(state, b->cond);
      bool taken = cond.kind == Value::Kind::Unknown ? coin() : truthy(cond);
      pc = static_cast<std::size_t>(taken ? b->then_index : b->else_index);
    } else if (const auto* r = std::get_if<ReturnStmt>(&stmt)) {
      return r->value ? read(state, *r->value) : Value::unknown();
    }
  }
  return Value::unknown();
}

}  // namespace sandmine
