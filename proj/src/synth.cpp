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

#include "synth.hpp"

#include <cstdio>
#include <filesystem>

#include "error.hpp"
#include "explore.hpp"
#include "harness.hpp"
#include "sandbox.hpp"
#include "static_analysis.hpp"
#include "taint.hpp"

namespace fs = std::filesystem;

namespace sandmine {

namespace {

const std::vector<ApiId> kSources = {"getDeviceId", "getSubscriberId",
                                     "getSimSerialNumber",
                                     "getLastKnownLocation", "getMacAddress"};
const std::vector<ApiId> kSinks = {"sendSMS", "httpSend", "sendTextMessage"};
const std::vector<std::string> kLeakPermissions = {
    "android.permission.SEND_SMS", "android.permission.RECEIVE_SMS",
    "android.permission.ACCESS_FINE_LOCATION"};

std::string widget_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "w%03d", index);
  return buf;
}

int widget_index(const std::string& name) {
  return std::stoi(name.substr(1));
}

MethodBody make_method(MethodId id, std::vector<VarName> params,
                       std::vector<Statement> statements) {
  MethodBody body;
  body.id = std::move(id);
  body.params = std::move(params);
  body.statements = std::move(statements);
  return body;
}

// Weight layout of the big single-screen app used by the tool-unique
// classes. `heavy_from` widgets get the dominant weight so the
// weight-guided strategy lives there; `light_from` widgets get a negligible
// weight so it provably avoids them.
struct WeightPlan {
  int light_begin = -1, light_end = -1;  // [begin, end)
  int heavy_begin = -1, heavy_end = -1;
};

AppModel grid_app(const std::string& app_id, int widget_count,
                  const WeightPlan& plan) {
  AppModel app;
  app.id = app_id;
  app.manifest.permissions.insert("android.permission.INTERNET");

  Screen home;
  home.id = "home";
  for (int i = 0; i < widget_count; ++i) {
    Widget w;
    w.id = widget_name(i);
    w.handler = "noop";
    if (i >= plan.light_begin && i < plan.light_end) w.weight = 1e-6;
    if (i >= plan.heavy_begin && i < plan.heavy_end) w.weight = 1e8;
    home.widgets.push_back(std::move(w));
  }
  app.screens.push_back(std::move(home));

  app.methods.emplace(
      "main", make_method("main", {"ctx"},
                          {AssignStmt{"msg", Operand::str_const("hello")},
                           CallApiStmt{"log", {"msg"}, std::nullopt}}));
  app.methods.emplace("noop", make_method("noop", {}, {}));
  app.entry_points.push_back("main");
  return app;
}

AppModel small_app(const std::string& app_id) {
  return grid_app(app_id, 3, WeightPlan{});
}

// Which widget indices each strategy fires on `probe` under the experiment
// seeds. The probe shares the malign version's structure, so the firing
// record transfers exactly.
struct FiringRecord {
  std::map<StrategyKind, std::set<int>> fired;
};

FiringRecord simulate_firings(const AppModel& probe,
                              const SensitiveCatalog& catalog,
                              const ExperimentConfig& config) {
  FiringRecord record;
  for (StrategyKind kind : {StrategyKind::Random, StrategyKind::ModelBased,
                            StrategyKind::Humanoid}) {
    auto& fired = record.fired[kind];
    for (int rep = 1; rep <= config.repetitions; ++rep) {
      Strategy strategy{kind, repetition_seed(config, rep), config.budget};
      ExecutionTrace trace =
          run_exploration(probe, catalog, strategy, rep, config.limits);
      for (const auto& [screen, widget] : trace.events) {
        fired.insert(widget_index(widget));
      }
    }
  }
  return record;
}

struct PairSignature {
  bool ws_detected = false;
  std::set<std::string> wos_detected_by;
  bool taint_detected = false;
};

PairSignature measure_pair(const AppPair& pair, const SensitiveCatalog& catalog,
                           const ExperimentConfig& config) {
  PairSignature sig;
  StaticCallSet stat_b = static_sensitive_set(pair.benign, catalog);
  StaticCallSet stat_m = static_sensitive_set(pair.malign, catalog);

  for (const auto& tool : strategy_names()) {
    StrategyKind kind = strategy_from_name(tool);
    std::set<ApiId> dyn_b, dyn_m;
    for (int rep = 1; rep <= config.repetitions; ++rep) {
      Strategy strategy{kind, repetition_seed(config, rep), config.budget};
      auto tb = run_exploration(pair.benign, catalog, strategy, rep, config.limits);
      auto tm = run_exploration(pair.malign, catalog, strategy, rep, config.limits);
      dyn_b.insert(tb.sensitive_calls.begin(), tb.sensitive_calls.end());
      dyn_m.insert(tm.sensitive_calls.begin(), tm.sensitive_calls.end());
    }
    Sandbox wos_box = build_sandbox(pair.benign.id, dyn_b, std::nullopt);
    if (detect(pair, wos_box, dyn_m, tool).detected) {
      sig.wos_detected_by.insert(tool);
    }
    Sandbox ws_box = build_sandbox(pair.benign.id, dyn_b, stat_b);
    std::set<ApiId> observed = dyn_m;
    observed.insert(stat_m.apis.begin(), stat_m.apis.end());
    if (detect(pair, ws_box, observed, tool).detected) sig.ws_detected = true;
  }
  sig.taint_detected = taint_diff(pair, catalog).detected;
  return sig;
}

class Generator {
 public:
  Generator(const SynthProfile& profile, const ExperimentConfig& config,
            const SensitiveCatalog& catalog)
      : profile_(profile), config_(config), catalog_(catalog) {}

  SynthDataset run() {
    int index = 0;
    for (int i = 0; i < profile_.static_only; ++i) make_static_only(index++, i);
    for (int i = 0; i < profile_.launch_call; ++i) make_launch_call(index++, i);
    for (int i = 0; i < profile_.random_unique; ++i) {
      make_tool_unique(index++, i, StrategyKind::Random);
    }
    for (int i = 0; i < profile_.modelbased_unique; ++i) {
      make_tool_unique(index++, i, StrategyKind::ModelBased);
    }
    for (int i = 0; i < profile_.humanoid_unique; ++i) {
      make_tool_unique(index++, i, StrategyKind::Humanoid);
    }
    for (int i = 0; i < profile_.taint_only; ++i) make_taint_only(index++, i);
    for (int i = 0; i < profile_.manifest_only; ++i) make_manifest_only(index++, i);
    for (int i = 0; i < profile_.identical; ++i) make_identical(index++);
    return std::move(dataset_);
  }

 private:
  std::string pair_id(int index, const std::string& tag) const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%02d_", index);
    return buf + tag;
  }

  void push_pair(const std::string& id, AppModel benign, AppModel malign,
                 SynthPairInfo info, const PairSignature& expected) {
    AppPair pair{std::move(benign), std::move(malign), id};
    PairSignature actual = measure_pair(pair, catalog_, config_);
    if (actual.ws_detected != expected.ws_detected ||
        actual.wos_detected_by != expected.wos_detected_by ||
        actual.taint_detected != expected.taint_detected) {
      throw Error(ErrorKind::Analysis,
                  "synthetic pair '" + id +
                      "' does not behave as constructed (class " + info.klass +
                      ")");
    }
    info.pair_id = id;
    info.ws_detected = actual.ws_detected;
    info.wos_detected_by = actual.wos_detected_by;
    info.taint_detected = actual.taint_detected;
    dataset_.info.push_back(std::move(info));
    dataset_.pairs.push_back(std::move(pair));
  }

  void make_static_only(int index, int variant) {
    std::string id = pair_id(index, "static");
    const ApiId& source = kSources[variant % kSources.size()];
    const ApiId& sink = kSinks[variant % kSinks.size()];
    const std::string& permission =
        kLeakPermissions[variant % kLeakPermissions.size()];

    AppModel benign = small_app(id + "_b");
    AppModel malign = small_app(id + "_m");
    malign.manifest.permissions.insert(permission);

    // A screen nothing transitions to: its handler is a static root but no
    // exploration ever shows it on screen.
    Screen hidden;
    hidden.id = "hidden";
    hidden.widgets.push_back(Widget{"wleak", "leakData", std::nullopt, 1.0});
    malign.screens.push_back(std::move(hidden));
    malign.methods.emplace(
        "leakData",
        make_method("leakData", {},
                    {AssignStmt{"peer", Operand::str_const("peer")},
                     CallApiStmt{source, {}, VarName("grab")},
                     CallApiStmt{sink, {"peer", "grab"}, std::nullopt}}));

    SynthPairInfo info;
    info.klass = "static_only";
    info.added_permissions.insert(permission);
    PairSignature expected;
    expected.ws_detected = true;
    expected.taint_detected = true;
    push_pair(id, std::move(benign), std::move(malign), std::move(info), expected);
  }

  void make_launch_call(int index, int variant) {
    std::string id = pair_id(index, "launch");
    const ApiId& source = kSources[variant % kSources.size()];

    AppModel benign = small_app(id + "_b");
    AppModel malign = small_app(id + "_m");
    auto& body = malign.methods.at("main");
    body.statements.push_back(CallApiStmt{source, {}, VarName("grabbed")});

    SynthPairInfo info;
    info.klass = "launch_call";
    PairSignature expected;
    expected.ws_detected = true;
    expected.wos_detected_by = {"humanoid", "modelbased", "random"};
    push_pair(id, std::move(benign), std::move(malign), std::move(info), expected);
  }

  void make_tool_unique(int index, int variant, StrategyKind only_tool) {
    const std::string tag = only_tool == StrategyKind::Random ? "randomonly"
                            : only_tool == StrategyKind::ModelBased
                                ? "modelonly"
                                : "humanonly";
    std::string id = pair_id(index, tag);
    const ApiId& source = kSources[(index + variant) % kSources.size()];

    for (int attempt = 0; attempt < 8; ++attempt) {
      int widget_count = std::max(config_.budget + 50, 250) + 37 * attempt;
      WeightPlan plan;
      if (only_tool == StrategyKind::Random) {
        // Candidates live beyond the model-based coverage prefix and carry
        // negligible weight.
        plan.light_begin = config_.budget;
        plan.light_end = widget_count;
      } else if (only_tool == StrategyKind::ModelBased) {
        plan.light_begin = 0;
        plan.light_end = config_.budget;
      } else {
        plan.heavy_begin = config_.budget;
        plan.heavy_end = widget_count;
      }

      AppModel probe = grid_app(id + "_m", widget_count, plan);
      FiringRecord record = simulate_firings(probe, catalog_, config_);
      const auto& random_fired = record.fired[StrategyKind::Random];
      const auto& model_fired = record.fired[StrategyKind::ModelBased];
      const auto& humanoid_fired = record.fired[StrategyKind::Humanoid];

      int lo = only_tool == StrategyKind::ModelBased ? 0 : config_.budget;
      int hi = only_tool == StrategyKind::ModelBased
                   ? std::min(config_.budget, widget_count)
                   : widget_count;
      int carrier = -1;
      for (int i = lo; i < hi; ++i) {
        bool r = random_fired.count(i), m = model_fired.count(i),
             h = humanoid_fired.count(i);
        bool want = (only_tool == StrategyKind::Random && r && !m && !h) ||
                    (only_tool == StrategyKind::ModelBased && m && !r && !h) ||
                    (only_tool == StrategyKind::Humanoid && h && !r && !m);
        if (want) {
          carrier = i;
          break;
        }
      }
      if (carrier < 0) continue;

      AppModel benign = grid_app(id + "_b", widget_count, plan);
      AppModel malign = std::move(probe);
      malign.screens[0].widgets[carrier].handler = "onLure";
      malign.methods.emplace(
          "onLure", make_method("onLure", {},
                                {CallApiStmt{source, {}, VarName("grabbed")}}));

      SynthPairInfo info;
      info.klass = tag;
      PairSignature expected;
      expected.ws_detected = true;
      expected.wos_detected_by = {strategy_name(only_tool)};
      push_pair(id, std::move(benign), std::move(malign), std::move(info),
                expected);
      return;
    }
    throw Error(ErrorKind::Analysis,
                "could not calibrate a " + tag + " pair for seed " +
                    std::to_string(config_.seed) + ", budget " +
                    std::to_string(config_.budget));
  }

  void make_taint_only(int index, int variant) {
    std::string id = pair_id(index, "taint");
    const ApiId& source = kSources[variant % kSources.size()];
    const ApiId& sink = kSinks[variant % kSinks.size()];

    auto build = [&](const std::string& app_id, bool leak) {
      AppModel app = small_app(app_id);
      auto& body = app.methods.at("main");
      body.statements.push_back(AssignStmt{"dest", Operand::str_const("5550001")});
      body.statements.push_back(CallApiStmt{source, {}, VarName("grabbed")});
      // Benign sends a constant through the same sink; both versions call
      // the same APIs, only the dataflow differs.
      body.statements.push_back(CallApiStmt{
          sink, {"dest", leak ? VarName("grabbed") : VarName("dest")},
          std::nullopt});
      return app;
    };

    SynthPairInfo info;
    info.klass = "taint_only";
    PairSignature expected;
    expected.taint_detected = true;
    push_pair(id, build(id + "_b", false), build(id + "_m", true),
              std::move(info), expected);
  }

  void make_manifest_only(int index, int variant) {
    std::string id = pair_id(index, "manifest");
    AppModel benign = small_app(id + "_b");
    AppModel malign = small_app(id + "_m");
    benign.manifest.metadata["ADMOB_PUBLISHER_ID"] =
        "a14cf7346295891" + std::to_string(variant);
    malign.manifest.metadata["ADMOB_PUBLISHER_ID"] =
        "a14f099bfbf3c61" + std::to_string(variant);

    SynthPairInfo info;
    info.klass = "manifest_only";
    info.changed_metadata.insert("ADMOB_PUBLISHER_ID");
    push_pair(id, std::move(benign), std::move(malign), std::move(info),
              PairSignature{});
  }

  void make_identical(int index) {
    std::string id = pair_id(index, "same");
    SynthPairInfo info;
    info.klass = "identical";
    push_pair(id, small_app(id + "_b"), small_app(id + "_m"), std::move(info),
              PairSignature{});
  }

  SynthProfile profile_;
  ExperimentConfig config_;
  const SensitiveCatalog& catalog_;
  SynthDataset dataset_;
};

}  // namespace

SynthDataset generate_synth_dataset(const SynthProfile& profile,
                                    const ExperimentConfig& config,
                                    const SensitiveCatalog& catalog) {
  validate_config(config);
  return Generator(profile, config, catalog).run();
}

nlohmann::json ground_truth_json(const SynthDataset& dataset,
                                 const ExperimentConfig& config) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& info : dataset.info) {
    pairs.push_back({{"pair_id", info.pair_id},
                     {"class", info.klass},
                     {"ws_detected", info.ws_detected},
                     {"wos_detected_by", info.wos_detected_by},
                     {"taint_detected", info.taint_detected},
                     {"changed_metadata", info.changed_metadata},
                     {"added_permissions", info.added_permissions}});
  }
  return {{"seed", config.seed},
          {"budget", config.budget},
          {"repetitions", config.repetitions},
          {"pairs", pairs}};
}

void write_synth_dataset(const std::string& dir, const SynthDataset& dataset,
                         const ExperimentConfig& config) {
  fs::create_directories(dir);
  for (const auto& pair : dataset.pairs) {
    fs::path base = fs::path(dir) / pair.pair_id;
    fs::create_directories(base);
    write_text_file((base / "benign.app").string(), serialize(pair.benign));
    write_text_file((base / "malign.app").string(), serialize(pair.malign));
  }
  write_text_file((fs::path(dir) / "ground_truth.json").string(),
                  ground_truth_json(dataset, config).dump(2) + "\n");
}

}  // namespace sandmine
