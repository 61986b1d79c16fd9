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

#include "taint.hpp"

#include <optional>

#include "json.hpp"

namespace sandmine {

std::set<SourceSinkPair> FlowSet::pairs() const {
  std::set<SourceSinkPair> out;
  for (const auto& [pair, witness] : flows) out.insert(pair);
  return out;
}

bool TaintState::join(const TaintState& other) {
  bool changed = false;
  for (const auto& [var, sources] : other.tainted) {
    auto& mine = tainted[var];
    for (const auto& [source, witness] : sources) {
      if (mine.emplace(source, witness).second) changed = true;
    }
  }
  return changed;
}

bool TaintState::operator==(const TaintState& other) const {
  auto nonempty = [](const std::map<VarName, std::map<ApiId, Witness>>& m) {
    std::map<VarName, std::set<ApiId>> out;
    for (const auto& [var, sources] : m) {
      if (sources.empty()) continue;
      auto& keys = out[var];
      for (const auto& [source, w] : sources) keys.insert(source);
    }
    return out;
  };
  return nonempty(tainted) == nonempty(other.tainted);
}

namespace {

using SourceMap = std::map<ApiId, Witness>;

class TaintEngine {
 public:
  TaintEngine(const AppModel& app, const SensitiveCatalog& catalog)
      : app_(app), catalog_(catalog) {}

  FlowSet run() {
    std::vector<MethodId> roots = collect_roots();
    TaintState global;
    // App state persists across handler invocations, so each root's exit
    // state feeds the next sweep until nothing grows any more.
    for (;;) {
      bool changed = false;
      std::size_t flows_before = flows_.size();
      for (const auto& root : roots) {
        TaintState entry = global;
        const MethodBody& body = app_.methods.at(root);
        // Roots are invoked without arguments: parameters start untainted.
        for (const auto& p : body.params) entry.tainted.erase(p);
        std::set<MethodId> on_stack{root};
        BodyResult result = analyze_body(body, entry, on_stack);
        changed |= global.join(result.exit);
      }
      if (!changed && flows_.size() == flows_before) break;
    }
    FlowSet out;
    out.app_id = app_.id;
    out.flows = std::move(flows_);
    return out;
  }

 private:
  struct BodyResult {
    TaintState exit;       // state after the body completes
    SourceMap ret_taint;   // taint of returned values
  };

  std::vector<MethodId> collect_roots() const {
    std::vector<MethodId> roots;
    std::set<MethodId> seen;
    auto add = [&](const MethodId& m) {
      // Handlers wired straight to external APIs take no arguments and bind
      // no result; they cannot move taint.
      if (app_.has_method(m) && seen.insert(m).second) roots.push_back(m);
    };
    for (const auto& e : app_.entry_points) add(e);
    for (const auto& screen : app_.screens) {
      if (screen.on_enter) add(*screen.on_enter);
      for (const auto& widget : screen.widgets) add(widget.handler);
    }
    return roots;
  }

  static SourceMap append_step(const SourceMap& sources, const MethodId& method,
                               int index) {
    SourceMap out;
    for (const auto& [source, witness] : sources) {
      Witness extended = witness;
      extended.emplace_back(method, index);
      out.emplace(source, std::move(extended));
    }
    return out;
  }

  void emit_flows(const SourceMap& sources, const ApiId& sink,
                  const MethodId& method, int index) {
    for (const auto& [source, witness] : sources) {
      Witness full = witness;
      full.emplace_back(method, index);
      flows_.emplace(SourceSinkPair{source, sink}, std::move(full));
    }
  }

  /// Forward dataflow over the body's statement CFG. Statement i flows to
  /// i+1, branches flow to both targets, returns flow to the body exit.
  BodyResult analyze_body(const MethodBody& body, const TaintState& entry,
                          std::set<MethodId>& on_stack) {
    BodyResult result;
    if (body.statements.empty()) {
      result.exit = entry;
      return result;
    }

    std::vector<std::optional<TaintState>> in_states(body.statements.size());
    in_states[0] = entry;
    std::set<int> worklist{0};
    std::optional<TaintState> exit_state;

    auto flow_to_exit = [&](const TaintState& state) {
      if (!exit_state) {
        exit_state = state;
      } else {
        exit_state->join(state);
      }
    };
    auto flow_to = [&](int target, const TaintState& state) {
      if (target >= static_cast<int>(body.statements.size())) {
        flow_to_exit(state);
        return;
      }
      if (!in_states[target]) {
        in_states[target] = state;
        worklist.insert(target);
      } else if (in_states[target]->join(state)) {
        worklist.insert(target);
      }
    };

    while (!worklist.empty()) {
      int index = *worklist.begin();
      worklist.erase(worklist.begin());
      TaintState state = *in_states[index];
      const Statement& stmt = body.statements[index];

      if (const auto* a = std::get_if<AssignStmt>(&stmt)) {
        if (a->src.kind == Operand::Kind::Var) {
          auto it = state.tainted.find(a->src.text);
          if (it != state.tainted.end() && !it->second.empty()) {
            state.tainted[a->dst] = append_step(it->second, body.id, index);
          } else {
            state.tainted.erase(a->dst);
          }
        } else {
          state.tainted.erase(a->dst);  // constants are clean
        }
        flow_to(index + 1, state);
      } else if (const auto* c = std::get_if<CallApiStmt>(&stmt)) {
        if (catalog_.is_sink(c->api)) {
          for (const auto& arg : c->args) {
            auto it = state.tainted.find(arg);
            if (it != state.tainted.end()) {
              emit_flows(it->second, c->api, body.id, index);
            }
          }
        }
        if (c->ret) {
          if (catalog_.is_source(c->api)) {
            state.tainted[*c->ret] = {{c->api, {{body.id, index}}}};
          } else {
            state.tainted.erase(*c->ret);
          }
        }
        flow_to(index + 1, state);
      } else if (const auto* m = std::get_if<CallMethodStmt>(&stmt)) {
        const MethodBody& callee = app_.methods.at(m->callee);
        if (on_stack.count(m->callee)) {
          // Recursion cut: the call is approximated as a no-op; the outer
          // convergence sweeps pick up whatever still grows.
          if (m->ret) state.tainted.erase(*m->ret);
          flow_to(index + 1, state);
        } else {
          TaintState callee_entry = state;
          for (std::size_t i = 0; i < callee.params.size(); ++i) {
            if (i < m->args.size()) {
              auto it = state.tainted.find(m->args[i]);
              if (it != state.tainted.end() && !it->second.empty()) {
                callee_entry.tainted[callee.params[i]] =
                    append_step(it->second, body.id, index);
                continue;
              }
            }
            callee_entry.tainted.erase(callee.params[i]);
          }
          on_stack.insert(m->callee);
          BodyResult callee_result = analyze_body(callee, callee_entry, on_stack);
          on_stack.erase(m->callee);
          TaintState after = std::move(callee_result.exit);
          if (m->ret) {
            if (!callee_result.ret_taint.empty()) {
              after.tainted[*m->ret] =
                  append_step(callee_result.ret_taint, body.id, index);
            } else {
              after.tainted.erase(*m->ret);
            }
          }
          flow_to(index + 1, after);
        }
      } else if (const auto* b = std::get_if<BranchStmt>(&stmt)) {
        flow_to(b->then_index, state);
        flow_to(b->else_index, state);
      } else if (const auto* r = std::get_if<ReturnStmt>(&stmt)) {
        if (r->value) {
          auto it = state.tainted.find(*r->value);
          if (it != state.tainted.end()) {
            SourceMap stamped = append_step(it->second, body.id, index);
            for (auto& [source, witness] : stamped) {
              result.ret_taint.emplace(source, witness);
            }
          }
        }
        flow_to_exit(state);
      }
    }

    result.exit = exit_state ? std::move(*exit_state) : entry;
    return result;
  }

  const AppModel& app_;
  const SensitiveCatalog& catalog_;
  std::map<SourceSinkPair, Witness> flows_;
};

}  // namespace

FlowSet analyze_taint(const AppModel& app, const SensitiveCatalog& catalog) {
  return TaintEngine(app, catalog).run();
}

TaintVerdict taint_diff(const AppPair& pair, const SensitiveCatalog& catalog) {
  TaintVerdict verdict;
  verdict.pair_id = pair.pair_id;
  verdict.s1 = analyze_taint(pair.benign, catalog);
  verdict.s2 = analyze_taint(pair.malign, catalog);
  auto trusted = verdict.s1.pairs();
  for (const auto& p : verdict.s2.pairs()) {
    if (!trusted.count(p)) verdict.s3.insert(p);
  }
  verdict.detected = !verdict.s3.empty();
  return verdict;
}

std::string flowset_to_json(const FlowSet& flows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [pair, witness] : flows.flows) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& [method, index] : witness) {
      steps.push_back({method, index});
    }
    arr.push_back({{"source", pair.first},
                   {"sink", pair.second},
                   {"witness", steps}});
  }
  nlohmann::json j{{"app_id", flows.app_id}, {"flows", arr}};
  return j.dump(2);
}

}  // namespace sandmine
