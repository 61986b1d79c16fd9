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
// Command-line front end. Talks to the engine exclusively through the
// public C API in sandmine.h.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "sandmine.h"

namespace {

constexpr size_t kErrCap = 1024;

// Exit codes: 0 success, 1 usage error, 2 dataset/analysis error.
int exit_code(sm_status status) {
  if (status == SM_OK) return 0;
  return status == SM_ERR_INVALID_ARGUMENT ? 1 : 2;
}

int fail(sm_status status, const char* err) {
  std::fprintf(stderr, "error: %s\n", err);
  return exit_code(status);
}

struct CatalogHandle {
  sm_catalog* ptr = nullptr;
  ~CatalogHandle() { sm_catalog_free(ptr); }
};

struct DatasetHandle {
  sm_dataset* ptr = nullptr;
  ~DatasetHandle() { sm_dataset_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { sm_string_free(ptr); }
};

int load_catalog(const std::string& path, CatalogHandle& catalog, char* err) {
  sm_status status = path.empty()
                         ? sm_catalog_load_default(&catalog.ptr, err, kErrCap)
                         : sm_catalog_load_file(path.c_str(), &catalog.ptr,
                                                err, kErrCap);
  return status == SM_OK ? 0 : fail(status, err);
}

int open_dataset(const std::string& path, DatasetHandle& dataset, char* err) {
  sm_status status = sm_dataset_open(path.c_str(), &dataset.ptr, err, kErrCap);
  return status == SM_OK ? 0 : fail(status, err);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sandmine - mining app sandboxes, static reachability and "
               "taint differencing over the mini-app IR"};
  app.require_subcommand(1);
  // Flags can come from a config file: `sandmine --config run.cfg run`,
  // with the options in a [run] section.
  app.set_config("--config", "", "Config file mirroring the flags");
  char err[kErrCap] = {0};

  // ---- list-tools ----
  app.add_subcommand("list-tools", "List the exploration strategies");

  // ---- run ----
  auto* run = app.add_subcommand(
      "run", "Run the tool x pair detection experiment over a dataset");
  std::string run_dataset, run_catalog, run_tools, run_out;
  sm_run_config run_config;
  sm_run_config_init(&run_config);
  int run_budget = run_config.budget;
  int run_reps = run_config.repetitions;
  std::uint64_t run_seed = run_config.seed;
  int run_steps = run_config.step_limit;
  std::string run_format = "markdown";
  bool run_disable_static = false;
  run->add_option("--dataset", run_dataset, "Dataset directory")->required();
  run->add_option("--out", run_out, "Output directory for the run")->required();
  run->add_option("--catalog", run_catalog,
                  "Sensitive-API catalog file (default: built-in)");
  run->add_option("--tools", run_tools,
                  "Comma-separated tools (default: all)");
  run->add_option("--budget", run_budget, "GUI events per exploration run");
  run->add_option("-r,--repetitions", run_reps, "Repetitions per tool");
  run->add_option("--seed", run_seed, "Base seed");
  run->add_option("--step-limit", run_steps,
                  "Interpreter statements per handler");
  run->add_option("--output-format", run_format, "csv, json or markdown");
  run->add_flag("--disable-static-analysis", run_disable_static,
                "Disable the static component (WOS only)");

  // ---- report ----
  auto* report = app.add_subcommand(
      "report", "Render the report for a previously written run");
  std::string report_results, report_taint, report_format = "markdown";
  report->add_option("--results", report_results, "Run directory")->required();
  report->add_option("--taint", report_taint,
                     "Taint run directory to fold into the report");
  report->add_option("--output-format", report_format, "csv, json or markdown");

  // ---- taint ----
  auto* taint = app.add_subcommand(
      "taint", "Taint-difference every pair of a dataset");
  std::string taint_dataset, taint_catalog, taint_out;
  taint->add_option("--dataset", taint_dataset, "Dataset directory")->required();
  taint->add_option("--out", taint_out, "Output directory")->required();
  taint->add_option("--catalog", taint_catalog,
                    "Sensitive-API catalog file (default: built-in)");

  // ---- regress ----
  auto* regress = app.add_subcommand(
      "regress", "Logistic regression over an observations CSV");
  std::string regress_csv, regress_format = "markdown";
  std::string regress_formula = "detected ~ tool + static + repetition";
  regress->add_option("--observations", regress_csv, "observations.csv path")
      ->required();
  regress->add_option("--formula", regress_formula,
                      "detected ~ 1 | tool | tool + static + repetition");
  regress->add_option("--output-format", regress_format,
                      "csv, json or markdown");

  // ---- synth ----
  auto* synth = app.add_subcommand(
      "synth", "Generate the synthetic ground-truth benchmark");
  std::string synth_out;
  std::uint64_t synth_seed = 42;
  int synth_budget = 200, synth_reps = 3;
  synth->add_option("--out", synth_out, "Output dataset directory")->required();
  synth->add_option("--seed", synth_seed, "Base seed the benchmark targets");
  synth->add_option("--budget", synth_budget, "Event budget it targets");
  synth->add_option("-r,--repetitions", synth_reps, "Repetitions it targets");

  // ---- analyze ----
  auto* analyze = app.add_subcommand(
      "analyze", "Inspect one .app file (static set, flows, call graph)");
  std::string analyze_app, analyze_catalog, analyze_what = "static";
  analyze->add_option("--app", analyze_app, "Path to a .app file")->required();
  analyze->add_option("--what", analyze_what,
                      "static | taint | callgraph | serialize");
  analyze->add_option("--catalog", analyze_catalog,
                      "Sensitive-API catalog file (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (app.got_subcommand("list-tools")) {
    std::string tools = sm_list_tools();
    for (auto& c : tools) {
      if (c == ',') c = '\n';
    }
    std::printf("%s\n", tools.c_str());
    return 0;
  }

  if (app.got_subcommand(run)) {
    CatalogHandle catalog;
    if (int rc = load_catalog(run_catalog, catalog, err)) return rc;
    DatasetHandle dataset;
    if (int rc = open_dataset(run_dataset, dataset, err)) return rc;

    run_config.tools = run_tools.empty() ? nullptr : run_tools.c_str();
    run_config.budget = run_budget;
    run_config.repetitions = run_reps;
    run_config.disable_static = run_disable_static ? 1 : 0;
    run_config.seed = run_seed;
    run_config.step_limit = run_steps;
    run_config.output_format = run_format.c_str();

    sm_status status =
        sm_run_experiment(dataset.ptr, catalog.ptr, &run_config,
                          run_out.c_str(), nullptr, err, kErrCap);
    if (status != SM_OK) return fail(status, err);

    OwnedString text;
    status = sm_render_report(run_out.c_str(), nullptr, run_format.c_str(),
                              &text.ptr, err, kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::fputs(text.ptr, stdout);
    return 0;
  }

  if (app.got_subcommand(report)) {
    OwnedString text;
    sm_status status = sm_render_report(
        report_results.c_str(),
        report_taint.empty() ? nullptr : report_taint.c_str(),
        report_format.c_str(), &text.ptr, err, kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::fputs(text.ptr, stdout);
    return 0;
  }

  if (app.got_subcommand(taint)) {
    CatalogHandle catalog;
    if (int rc = load_catalog(taint_catalog, catalog, err)) return rc;
    DatasetHandle dataset;
    if (int rc = open_dataset(taint_dataset, dataset, err)) return rc;

    OwnedString summary;
    sm_status status = sm_taint_dataset(dataset.ptr, catalog.ptr,
                                        taint_out.c_str(), &summary.ptr, err,
                                        kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::fputs(summary.ptr, stdout);
    std::fputs("\n", stdout);
    return 0;
  }

  if (app.got_subcommand(regress)) {
    OwnedString text;
    sm_status status =
        sm_regress_csv(regress_csv.c_str(), regress_formula.c_str(),
                       regress_format.c_str(), &text.ptr, err, kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::fputs(text.ptr, stdout);
    return 0;
  }

  if (app.got_subcommand(synth)) {
    OwnedString summary;
    sm_status status =
        sm_synth_dataset(synth_out.c_str(), synth_seed, synth_budget,
                         synth_reps, &summary.ptr, err, kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::printf("wrote synthetic dataset to %s\n", synth_out.c_str());
    return 0;
  }

  if (app.got_subcommand(analyze)) {
    CatalogHandle catalog;
    if (int rc = load_catalog(analyze_catalog, catalog, err)) return rc;
    sm_app* parsed = nullptr;
    sm_status status = sm_app_parse_file(analyze_app.c_str(), catalog.ptr, 0,
                                         &parsed, err, kErrCap);
    if (status != SM_OK) return fail(status, err);
    std::unique_ptr<sm_app, decltype(&sm_app_free)> guard(parsed, sm_app_free);

    OwnedString text;
    if (analyze_what == "static") {
      status = sm_app_static_set_json(parsed, catalog.ptr, &text.ptr, err,
                                      kErrCap);
    } else if (analyze_what == "taint") {
      status = sm_app_taint_json(parsed, catalog.ptr, &text.ptr, err, kErrCap);
    } else if (analyze_what == "callgraph") {
      status = sm_app_callgraph_dot(parsed, &text.ptr, err, kErrCap);
    } else if (analyze_what == "serialize") {
      status = sm_app_serialize(parsed, &text.ptr, err, kErrCap);
    } else {
      std::fprintf(stderr,
                   "error: unknown --what '%s' (static, taint, callgraph, "
                   "serialize)\n",
                   analyze_what.c_str());
      return 1;
    }
    if (status != SM_OK) return fail(status, err);
    std::fputs(text.ptr, stdout);
    std::fputs("\n", stdout);
    return 0;
  }

  return 1;
}
