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
// C ABI wrapper. Handles own their C++ objects; exceptions are translated
// into status codes plus a message in the caller's buffer.

#include "sandmine.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "bench.hpp"
#include "catalog.hpp"
#include "default_catalog.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "harness.hpp"
#include "ir.hpp"
#include "static_analysis.hpp"
#include "synth.hpp"
#include "taint.hpp"

struct sm_catalog {
  sandmine::SensitiveCatalog catalog;
};

struct sm_app {
  sandmine::AppModel app;
};

struct sm_dataset {
  std::vector<sandmine::AppPair> pairs;
};

namespace {

using sandmine::Error;
using sandmine::ErrorKind;

void put_error(char* err, size_t err_cap, const char* message) {
  if (!err || err_cap == 0) return;
  std::strncpy(err, message, err_cap - 1);
  err[err_cap - 1] = '\0';
}

sm_status status_of(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Reference:
    case ErrorKind::Duplicate: return SM_ERR_PARSE;
    case ErrorKind::Dataset: return SM_ERR_DATASET;
    case ErrorKind::Io: return SM_ERR_IO;
    case ErrorKind::InvalidArgument: return SM_ERR_INVALID_ARGUMENT;
    case ErrorKind::Analysis: return SM_ERR_ANALYSIS;
  }
  return SM_ERR_INVALID_ARGUMENT;
}

template <typename Fn>
sm_status guarded(char* err, size_t err_cap, Fn&& fn) {
  try {
    fn();
    return SM_OK;
  } catch (const Error& e) {
    put_error(err, err_cap, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    put_error(err, err_cap, e.what());
    return SM_ERR_INVALID_ARGUMENT;
  }
}

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<std::string> split_tools(const char* tools) {
  if (!tools) return sandmine::strategy_names();
  std::vector<std::string> out;
  std::string current;
  for (const char* p = tools;; ++p) {
    if (*p == ',' || *p == '\0') {
      if (!current.empty()) out.push_back(current);
      current.clear();
      if (*p == '\0') break;
    } else if (!std::isspace(static_cast<unsigned char>(*p))) {
      current += *p;
    }
  }
  return out;
}

sandmine::ExperimentConfig to_config(const sm_run_config* config) {
  sandmine::ExperimentConfig out;
  if (!config) return out;
  out.tools = split_tools(config->tools);
  out.budget = config->budget;
  out.repetitions = config->repetitions;
  out.disable_static = config->disable_static != 0;
  out.seed = config->seed;
  if (config->output_format) out.output_format = config->output_format;
  if (config->step_limit > 0) out.limits.step_limit = config->step_limit;
  return out;
}

}  // namespace

extern "C" {

const char* sm_version(void) { return "0.1.0"; }

const char* sm_list_tools(void) { return "random,modelbased,humanoid,joker"; }

void sm_string_free(char* text) { delete[] text; }

/* ---- catalog ------------------------------------------------------- */

sm_status sm_catalog_load_text(const char* text, sm_catalog** out, char* err,
                               size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!text || !out) throw Error(ErrorKind::InvalidArgument, "null argument");
    *out = new sm_catalog{sandmine::SensitiveCatalog::from_text(text)};
  });
}

sm_status sm_catalog_load_file(const char* path, sm_catalog** out, char* err,
                               size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!path || !out) throw Error(ErrorKind::InvalidArgument, "null argument");
    *out = new sm_catalog{sandmine::SensitiveCatalog::from_file(path)};
  });
}

sm_status sm_catalog_load_default(sm_catalog** out, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!out) throw Error(ErrorKind::InvalidArgument, "null argument");
    *out = new sm_catalog{
        sandmine::SensitiveCatalog::from_text(sandmine::kDefaultCatalogText)};
  });
}

void sm_catalog_free(sm_catalog* catalog) { delete catalog; }

size_t sm_catalog_size(const sm_catalog* catalog) {
  return catalog ? catalog->catalog.size() : 0;
}

int sm_catalog_is_sensitive(const sm_catalog* catalog, const char* api) {
  return catalog && api && catalog->catalog.is_sensitive(api) ? 1 : 0;
}

int sm_catalog_class_of(const sm_catalog* catalog, const char* api) {
  if (!catalog || !api || !catalog->catalog.is_sensitive(api)) return -1;
  switch (catalog->catalog.class_of(api)) {
    case sandmine::SensitivityClass::SourceOnly: return SM_CLASS_SOURCE;
    case sandmine::SensitivityClass::SinkOnly: return SM_CLASS_SINK;
    case sandmine::SensitivityClass::SourceAndSink: return SM_CLASS_BOTH;
    case sandmine::SensitivityClass::SensitiveNeither: return SM_CLASS_NEITHER;
  }
  return -1;
}

/* ---- app IR ---------------------------------------------------------- */

sm_status sm_app_parse_text(const char* text, const sm_catalog* catalog,
                            int strict_refs, sm_app** out, char* err,
                            size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!text || !out) throw Error(ErrorKind::InvalidArgument, "null argument");
    sandmine::ParseOptions opts;
    if (catalog) opts.catalog = &catalog->catalog;
    opts.strict_refs = strict_refs != 0;
    *out = new sm_app{sandmine::parse_app(text, opts)};
  });
}

sm_status sm_app_parse_file(const char* path, const sm_catalog* catalog,
                            int strict_refs, sm_app** out, char* err,
                            size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!path || !out) throw Error(ErrorKind::InvalidArgument, "null argument");
    std::string text = sandmine::read_text_file(path);
    sandmine::ParseOptions opts;
    if (catalog) opts.catalog = &catalog->catalog;
    opts.strict_refs = strict_refs != 0;
    *out = new sm_app{sandmine::parse_app(text, opts)};
  });
}

void sm_app_free(sm_app* app) { delete app; }

const char* sm_app_id(const sm_app* app) {
  return app ? app->app.id.c_str() : nullptr;
}

sm_status sm_app_serialize(const sm_app* app, char** out_text, char* err,
                           size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!app || !out_text) throw Error(ErrorKind::InvalidArgument, "null argument");
    *out_text = dup_string(sandmine::serialize(app->app));
  });
}

sm_status sm_app_explore_json(const sm_app* app, const sm_catalog* catalog,
                              const char* tool, uint64_t seed, int budget,
                              int repetition, char** out_json, char* err,
                              size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!app || !catalog || !tool || !out_json) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    sandmine::Strategy strategy{sandmine::strategy_from_name(tool), seed, budget};
    auto trace = sandmine::run_exploration(app->app, catalog->catalog, strategy,
                                           repetition);
    *out_json = dup_string(sandmine::trace_to_json(trace));
  });
}

sm_status sm_app_static_set_json(const sm_app* app, const sm_catalog* catalog,
                                 char** out_json, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!app || !catalog || !out_json) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    auto result = sandmine::static_sensitive_set(app->app, catalog->catalog);
    nlohmann::json j = result.apis;
    *out_json = dup_string(j.dump());
  });
}

sm_status sm_app_taint_json(const sm_app* app, const sm_catalog* catalog,
                            char** out_json, char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!app || !catalog || !out_json) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    auto flows = sandmine::analyze_taint(app->app, catalog->catalog);
    *out_json = dup_string(sandmine::flowset_to_json(flows));
  });
}

sm_status sm_app_callgraph_dot(const sm_app* app, char** out_text, char* err,
                               size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!app || !out_text) throw Error(ErrorKind::InvalidArgument, "null argument");
    *out_text = dup_string(sandmine::to_dot(sandmine::build_call_graph(app->app)));
  });
}

/* ---- datasets --------------------------------------------------------- */

sm_status sm_dataset_open(const char* dir, sm_dataset** out, char* err,
                          size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!dir || !out) throw Error(ErrorKind::InvalidArgument, "null argument");
    auto dataset = new sm_dataset{sandmine::parse_pair_dataset(dir)};
    *out = dataset;
  });
}

void sm_dataset_free(sm_dataset* dataset) { delete dataset; }

size_t sm_dataset_size(const sm_dataset* dataset) {
  return dataset ? dataset->pairs.size() : 0;
}

const char* sm_dataset_pair_id(const sm_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->pairs.size()) return nullptr;
  return dataset->pairs[index].pair_id.c_str();
}

sm_status sm_dataset_manifest_diff_json(const sm_dataset* dataset,
                                        const char* pair_id, char** out_json,
                                        char* err, size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!dataset || !pair_id || !out_json) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    for (const auto& pair : dataset->pairs) {
      if (pair.pair_id == pair_id) {
        auto diff = sandmine::diff_manifest(pair);
        nlohmann::json j{{"added_permissions", diff.added_permissions},
                         {"removed_permissions", diff.removed_permissions},
                         {"changed_metadata", diff.changed_metadata}};
        *out_json = dup_string(j.dump());
        return;
      }
    }
    throw Error(ErrorKind::Dataset, "no pair '" + std::string(pair_id) + "'");
  });
}

/* ---- experiments ------------------------------------------------------ */

void sm_run_config_init(sm_run_config* config) {
  if (!config) return;
  config->tools = nullptr;
  config->budget = 200;
  config->repetitions = 3;
  config->disable_static = 0;
  config->seed = 42;
  config->output_format = nullptr;
  config->step_limit = 10000;
}

sm_status sm_run_experiment(const sm_dataset* dataset,
                            const sm_catalog* catalog,
                            const sm_run_config* config, const char* out_dir,
                            char** out_summary_json, char* err,
                            size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!dataset || !catalog || !out_dir) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    auto summary = sandmine::run_experiment_to_dir(
        dataset->pairs, nullptr, catalog->catalog, to_config(config), out_dir);
    if (out_summary_json) *out_summary_json = dup_string(summary.dump(2));
  });
}

sm_status sm_taint_dataset(const sm_dataset* dataset,
                           const sm_catalog* catalog, const char* out_dir,
                           char** out_summary_json, char* err,
                           size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!dataset || !catalog || !out_dir) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    auto summary = sandmine::taint_dataset_to_dir(dataset->pairs,
                                                  catalog->catalog, out_dir);
    if (out_summary_json) *out_summary_json = dup_string(summary.dump(2));
  });
}

sm_status sm_render_report(const char* results_dir, const char* taint_dir,
                           const char* format, char** out_text, char* err,
                           size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!results_dir || !out_text) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    std::optional<std::string> taint;
    if (taint_dir) taint = taint_dir;
    *out_text = dup_string(sandmine::render_report_from_dirs(
        results_dir, taint, format ? format : "markdown"));
  });
}

sm_status sm_regress_csv(const char* observations_csv, const char* formula,
                         const char* format, char** out_text, char* err,
                         size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!observations_csv || !formula || !out_text) {
      throw Error(ErrorKind::InvalidArgument, "null argument");
    }
    auto observations = sandmine::read_observations_csv(observations_csv);
    auto fit = sandmine::fit_logistic(observations,
                                      sandmine::parse_formula(formula));
    *out_text = dup_string(
        sandmine::render_regression(fit, format ? format : "markdown"));
  });
}

sm_status sm_synth_dataset(const char* out_dir, uint64_t seed, int budget,
                           int repetitions, char** out_summary_json, char* err,
                           size_t err_cap) {
  return guarded(err, err_cap, [&] {
    if (!out_dir) throw Error(ErrorKind::InvalidArgument, "null argument");
    sandmine::ExperimentConfig config;
    config.seed = seed;
    config.budget = budget;
    config.repetitions = repetitions;
    auto catalog =
        sandmine::SensitiveCatalog::from_text(sandmine::kDefaultCatalogText);
    auto dataset =
        sandmine::generate_synth_dataset(sandmine::SynthProfile{}, config, catalog);
    sandmine::write_synth_dataset(out_dir, dataset, config);
    if (out_summary_json) {
      *out_summary_json =
          dup_string(sandmine::ground_truth_json(dataset, config).dump(2));
    }
  });
}

double sm_impact(long long ws_count, long long wos_count) {
  auto value = sandmine::impact(ws_count, wos_count);
  return value ? *value : std::nan("");
}

} /* extern "C" */
