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
// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "harness.hpp"
#include "ir.hpp"
#include "logistic.hpp"
#include "rng.hpp"
#include "sandbox.hpp"
#include "static_analysis.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "synth.hpp"
#include "taint.hpp"

using namespace sandmine;
using sandmine::testing::test_catalog;

namespace fs = std::filesystem;

namespace {

const std::string kRoot = SANDMINE_SOURCE_DIR;
const std::string kFixtures = kRoot + "/data/fixtures";
const std::string kSynthetic = kRoot + "/data/synthetic";

int failures = 0;

struct Criterion {
  std::string detail;  // appended to the PASS/FAIL line
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += ", ";
    detail += text;
  }
};

void run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<void(Criterion&)>& body) {
  Criterion criterion;
  auto start = std::chrono::steady_clock::now();
  try {
    body(criterion);
  } catch (const std::exception& e) {
    criterion.problems.push_back(std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    criterion.problems.push_back("runtime " + std::to_string(elapsed) +
                                 "s exceeds " + std::to_string(budget_seconds) +
                                 "s");
  }
  bool ok = criterion.problems.empty();
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s [%.3fs]%s%s\n", ok ? "PASS" : "FAIL",
              number, title.c_str(), elapsed,
              criterion.detail.empty() ? "" : " - ",
              criterion.detail.c_str());
  for (const auto& problem : criterion.problems) {
    std::printf("     !! %s\n", problem.c_str());
  }
}

struct PairAnalysis {
  std::set<ApiId> dyn_benign, dyn_malign;
  StaticCallSet stat_benign, stat_malign;
};

PairAnalysis explore_pair(const AppPair& pair, const ExperimentConfig& config,
                          StrategyKind kind) {
  PairAnalysis out;
  out.stat_benign = static_sensitive_set(pair.benign, test_catalog());
  out.stat_malign = static_sensitive_set(pair.malign, test_catalog());
  for (int rep = 1; rep <= config.repetitions; ++rep) {
    Strategy strategy{kind, repetition_seed(config, rep), config.budget};
    auto tb = run_exploration(pair.benign, test_catalog(), strategy, rep);
    auto tm = run_exploration(pair.malign, test_catalog(), strategy, rep);
    out.dyn_benign.insert(tb.sensitive_calls.begin(), tb.sensitive_calls.end());
    out.dyn_malign.insert(tm.sensitive_calls.begin(), tm.sensitive_calls.end());
  }
  return out;
}

void check_joker_laws(Criterion& c, const AppPair& pair,
                      const ExperimentConfig& config, const char* origin) {
  PairAnalysis a = explore_pair(pair, config, StrategyKind::Joker);

  Sandbox wos = build_sandbox(pair.benign.id, {}, std::nullopt);
  SandboxVerdict wos_verdict = detect(pair, wos, {}, "joker");
  c.require(!wos_verdict.detected, std::string(origin) + " " + pair.pair_id +
                                       ": joker-WOS detected something");

  Sandbox ws = build_sandbox(pair.benign.id, {}, a.stat_benign);
  SandboxVerdict ws_verdict = detect(pair, ws, a.stat_malign.apis, "joker");
  std::set<ApiId> closed_form;
  for (const auto& api : a.stat_malign.apis) {
    if (!a.stat_benign.apis.count(api)) closed_form.insert(api);
  }
  c.require(ws_verdict.detected == !closed_form.empty(),
            std::string(origin) + " " + pair.pair_id +
                ": joker-WS disagrees with the static set difference");
  c.require(ws_verdict.offending == closed_form,
            std::string(origin) + " " + pair.pair_id +
                ": joker-WS offending set is not the static difference");
}

// ---- criterion bodies ------------------------------------------------

void criterion_impact(Criterion& c) {
  const std::vector<std::tuple<long long, long long, std::string>> table = {
      {73, 61, "16.44"}, {71, 56, "21.13"}, {68, 52, "23.53"},
      {56, 27, "51.79"}, {42, 0, "100.00"},
  };
  for (const auto& [ws, wos, expected] : table) {
    std::string got = format_impact(impact(ws, wos));
    c.require(got == expected, "impact(" + std::to_string(ws) + "," +
                                   std::to_string(wos) + ") = " + got +
                                   ", want " + expected);
  }
}

void criterion_joker(Criterion& c) {
  ExperimentConfig config;  // seed 42, budget 200, 3 repetitions
  auto shipped = parse_pair_dataset(kSynthetic);
  c.require(shipped.size() >= 30, "shipped dataset smaller than 30 pairs");
  for (const auto& pair : shipped) {
    check_joker_laws(c, pair, config, "shipped");
  }

  Rng rng(20260810);
  ExperimentConfig fuzz_config;
  fuzz_config.budget = 30;
  for (int i = 0; i < 200; ++i) {
    AppPair pair = testing::random_pair(rng, test_catalog());
    pair.pair_id = "fuzz" + std::to_string(i);
    check_joker_laws(c, pair, fuzz_config, "fuzz");
  }
  c.note("30 shipped + 200 fuzz pairs");
}

void criterion_taint_oracle(Criterion& c) {
  Rng rng(31415);
  int analyzed = 0, skipped = 0, oracle_flows = 0, extra_flows = 0;
  while (analyzed < 500) {
    AppModel program = testing::random_loop_free_program(rng, test_catalog());
    std::set<SourceSinkPair> expected;
    try {
      expected = testing::taint_path_oracle(program, test_catalog());
    } catch (const std::exception&) {
      ++skipped;  // path blow-up; enumeration would not terminate usefully
      continue;
    }
    ++analyzed;
    auto reported = analyze_taint(program, test_catalog()).pairs();
    for (const auto& pair : expected) {
      c.require(reported.count(pair) == 1,
                "missed " + pair.first + " -> " + pair.second +
                    " in program " + program.id);
    }
    oracle_flows += static_cast<int>(expected.size());
    extra_flows += static_cast<int>(reported.size() - expected.size());
  }
  std::ostringstream note;
  note << analyzed << " programs (" << skipped << " skipped), "
       << oracle_flows << " oracle flows, over-approximation "
       << extra_flows << " analysis-only flows";
  c.note(note.str());
}

void criterion_fixtures(Criterion& c) {
  auto pairs = parse_pair_dataset(kFixtures);
  ExperimentConfig config;

  auto find = [&](const std::string& id) -> const AppPair& {
    for (const auto& pair : pairs) {
      if (pair.pair_id == id) return pair;
    }
    throw Error(ErrorKind::Dataset, "fixture pair '" + id + "' missing");
  };

  // sms_leak: device-id-to-SMS flow, sandbox detection via the added sendSMS.
  {
    const AppPair& pair = find("sms_leak");
    FlowSet flows = analyze_taint(pair.malign, test_catalog());
    c.require(flows.contains("getDeviceId", "sendSMS"),
              "sms_leak: missing flow getDeviceId -> sendSMS");
    PairAnalysis a = explore_pair(pair, config, StrategyKind::Random);
    Sandbox box = build_sandbox(pair.benign.id, a.dyn_benign, std::nullopt);
    SandboxVerdict verdict = detect(pair, box, a.dyn_malign, "random");
    c.require(verdict.detected && verdict.offending.count("sendSMS") == 1,
              "sms_leak: sandbox did not flag the added sendSMS");
  }

  // wifi_leak: both collected identifiers flow into the HTTP sink.
  {
    FlowSet flows = analyze_taint(find("wifi_leak").malign, test_catalog());
    c.require(flows.contains("getDeviceId", "httpSend"),
              "wifi_leak: missing flow getDeviceId -> httpSend");
    c.require(flows.contains("getMacAddress", "httpSend"),
              "wifi_leak: missing flow getMacAddress -> httpSend");
  }

  // loc_leak: the location source reaches the web sink.
  {
    FlowSet flows = analyze_taint(find("loc_leak").malign, test_catalog());
    c.require(flows.contains("getLastKnownLocation", "httpSend"),
              "loc_leak: missing flow getLastKnownLocation -> httpSend");
  }

  // admob_change: manifest-only change; nothing detects it, the diff reports it.
  {
    const AppPair& pair = find("admob_change");
    for (StrategyKind kind : {StrategyKind::Random, StrategyKind::ModelBased,
                              StrategyKind::Humanoid, StrategyKind::Joker}) {
      PairAnalysis a = explore_pair(pair, config, kind);
      Sandbox wos = build_sandbox(pair.benign.id, a.dyn_benign, std::nullopt);
      c.require(!detect(pair, wos, a.dyn_malign, "t").detected,
                "admob_change: WOS sandbox detected a manifest-only change");
      Sandbox ws = build_sandbox(pair.benign.id, a.dyn_benign, a.stat_benign);
      std::set<ApiId> observed = a.dyn_malign;
      observed.insert(a.stat_malign.apis.begin(), a.stat_malign.apis.end());
      c.require(!detect(pair, ws, observed, "t").detected,
                "admob_change: WS sandbox detected a manifest-only change");
    }
    c.require(!taint_diff(pair, test_catalog()).detected,
              "admob_change: taint differencing detected a manifest-only change");
    ManifestDiff diff = diff_manifest(pair);
    c.require(diff.changed_metadata ==
                  std::set<std::string>{"ADMOB_PUBLISHER_ID"},
              "admob_change: manifest diff did not report ADMOB_PUBLISHER_ID");
  }
}

void criterion_static_exactness(Criterion& c) {
  Rng rng(5050);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    AppModel app = testing::random_app(rng, test_catalog());
    auto got = static_sensitive_set(app, test_catalog()).apis;
    auto want = testing::reachability_oracle(app, test_catalog());
    if (got != want) {
      ++mismatches;
      if (mismatches <= 3) {
        c.require(false, "reachability mismatch in app " + app.id);
      }
    }
  }
  c.require(mismatches == 0,
            std::to_string(mismatches) + " of 1000 apps mismatched");
  c.note("1000 fuzzed apps, exact set equality");
}

void criterion_containment(Criterion& c) {
  Rng rng(6060);
  const StrategyKind kinds[] = {StrategyKind::Random, StrategyKind::ModelBased,
                                StrategyKind::Humanoid};
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    AppModel app = testing::random_app(rng, test_catalog());
    auto statics = static_sensitive_set(app, test_catalog()).apis;
    Strategy strategy{kinds[i % 3], rng.next(),
                      static_cast<int>(rng.below(60))};
    auto trace = run_exploration(app, test_catalog(), strategy);
    for (const auto& api : trace.sensitive_calls) {
      if (!statics.count(api)) {
        ++violations;
        if (violations <= 3) {
          c.require(false, "dynamic call " + api +
                               " not statically reachable in " + app.id);
        }
      }
    }
  }
  c.require(violations == 0, std::to_string(violations) + " violations");
  c.note("1000 (app, seed, budget) triples, zero violations required");
}

void criterion_logistic(Criterion& c) {
  // Closed-form intercept.
  {
    const int n = 400, k = 123;
    std::vector<std::vector<double>> design(n, std::vector<double>{1.0});
    std::vector<int> outcomes(n, 0);
    for (int i = 0; i < k; ++i) outcomes[i] = 1;
    RegressionFit fit = fit_logistic_matrix(design, outcomes, {"(Intercept)"});
    double expected = std::log(static_cast<double>(k) / (n - k));
    c.require(fit.converged, "intercept-only fit did not converge");
    c.require(std::fabs(fit.coefficients[0] - expected) < 1e-9,
              "intercept " + std::to_string(fit.coefficients[0]) +
                  " differs from closed form by more than 1e-9");
  }

  // Recovery of known coefficients on 5000 simulated observations.
  {
    const std::vector<double> beta = {-0.7, -1.2, 0.35, 0.2, 0.95, -0.04};
    const std::vector<std::string> tools = {"humanoid", "joker", "modelbased",
                                            "random"};
    Rng rng(7001);
    std::vector<Observation> observations;
    for (int i = 0; i < 5000; ++i) {
      Observation obs;
      obs.tool = tools[rng.below(4)];
      obs.repetition = 1 + static_cast<int>(rng.below(3));
      obs.static_enabled = rng.coin();
      obs.pair_id = "p" + std::to_string(i);
      double eta = beta[0];
      if (obs.tool == "joker") eta += beta[1];
      if (obs.tool == "modelbased") eta += beta[2];
      if (obs.tool == "random") eta += beta[3];
      if (obs.static_enabled) eta += beta[4];
      eta += beta[5] * obs.repetition;
      obs.detected = rng.unit() < 1.0 / (1.0 + std::exp(-eta));
      observations.push_back(std::move(obs));
    }
    RegressionFit fit = fit_logistic(observations, Formula::ToolStaticRepetition);
    c.require(fit.converged, "simulation fit did not converge");
    for (std::size_t j = 0; j < beta.size(); ++j) {
      c.require(std::fabs(fit.coefficients[j] - beta[j]) <=
                    3.0 * fit.std_errors[j],
                fit.names[j] + " outside 3 SE of the generating value");
    }
  }

  // Perfect separation must be flagged.
  {
    std::vector<std::vector<double>> design(25, std::vector<double>{1.0});
    std::vector<int> outcomes(25, 1);
    RegressionFit fit = fit_logistic_matrix(design, outcomes, {"(Intercept)"});
    c.require(fit.separation_warning && !fit.converged,
              "all-detected outcome not flagged as separation");
  }
}

void criterion_reproducibility(Criterion& c) {
  auto load = load_dataset_lenient(kSynthetic);
  ExperimentConfig config;
  fs::path dir_a = fs::temp_directory_path() / "sandmine_accept_run_a";
  fs::path dir_b = fs::temp_directory_path() / "sandmine_accept_run_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  auto summary =
      run_experiment_to_dir(load.pairs, &load, test_catalog(), config,
                            dir_a.string());
  run_experiment_to_dir(load.pairs, &load, test_catalog(), config,
                        dir_b.string());

  std::string csv_a = read_text_file((dir_a / "observations.csv").string());
  std::string csv_b = read_text_file((dir_b / "observations.csv").string());
  c.require(!csv_a.empty(), "observations.csv is empty");
  c.require(csv_a == csv_b, "observations.csv differs between identical runs");

  // Impact column of the rendered report must reproduce Eq.-style
  // recomputation from its own WS/WOS columns.
  std::string report = render_report(summary, std::nullopt, "markdown");
  std::istringstream in(report);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.rfind("| ", 0) != 0) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream cols(line.substr(1));
    while (std::getline(cols, cell, '|')) {
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      while (!cell.empty() && cell.back() == ' ') cell.pop_back();
      cells.push_back(cell);
    }
    if (cells.size() < 4 || cells[1].empty() ||
        !isdigit(static_cast<unsigned char>(cells[1][0]))) {
      continue;
    }
    long long ws = std::stoll(cells[1]);
    long long wos = std::stoll(cells[2]);
    c.require(cells[3] == format_impact(impact(ws, wos)),
              "report row '" + cells[0] + "': impact " + cells[3] +
                  " != recomputed " + format_impact(impact(ws, wos)));
    ++rows;
  }
  c.require(rows == 4, "expected 4 tool rows in the report, saw " +
                           std::to_string(rows));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

void criterion_overlap(Criterion& c) {
  auto pairs = parse_pair_dataset(kSynthetic);
  auto truth = load_json_file(kSynthetic + "/ground_truth.json");

  ExperimentConfig config;
  RunResult result = run_experiment(pairs, test_catalog(), config);
  OverlapReport overlap = overlap_report(result.union_wos);

  // Regions expected from the construction record.
  std::map<std::vector<std::string>, int> expected;
  int expected_any = 0;
  for (const auto& entry : truth.at("pairs")) {
    auto detectors = entry.at("wos_detected_by").get<std::vector<std::string>>();
    if (detectors.empty()) continue;
    ++expected_any;
    std::sort(detectors.begin(), detectors.end());
    ++expected[detectors];
  }

  c.require(overlap.regions == expected,
            "overlap regions differ from the constructed ground truth");
  c.require(overlap.detected_by_any == expected_any,
            "detected-by-any differs from ground truth");
  c.require(overlap.total_pairs == static_cast<int>(pairs.size()),
            "total pairs mismatch");
  auto random_region = overlap.regions.find({"random"});
  c.require(random_region != overlap.regions.end() &&
                random_region->second == 3,
            "region unique to 'random' is not exactly 3");
  c.note("region {random} = 3, full partition matches construction");
}

}  // namespace

int main() {
  std::printf("sandmine acceptance suite\n");

  run_criterion(1, "impact formula reproduces all five reference rows", 0.001,
                criterion_impact);
  run_criterion(2, "joker laws (WOS zero, WS = static set difference)", 10,
                criterion_joker);
  run_criterion(3, "taint engine misses no path-oracle flow", 60,
                criterion_taint_oracle);
  run_criterion(4, "leak fixtures behave as constructed", 30,
                criterion_fixtures);
  run_criterion(5, "static reachability exact against transitive closure", 30,
                criterion_static_exactness);
  run_criterion(6, "dynamic observations contained in static reachability", 30,
                criterion_containment);
  run_criterion(7, "logistic regression closed form, recovery, separation", 10,
                criterion_logistic);
  run_criterion(8, "byte-identical runs and self-consistent impact column", 60,
                criterion_reproducibility);
  run_criterion(9, "overlap partition equals the constructed regions", 60,
                criterion_overlap);

  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
