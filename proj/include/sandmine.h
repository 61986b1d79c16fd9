/* Copyright 2026 The sandmine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* sandmine: mining app sandboxes and differencing analyses over a mini-app
 * IR, behind a C ABI.
 *
 * Conventions:
 *   - every fallible function returns sm_status and, on failure, writes a
 *     message into the caller-provided (err, err_cap) buffer;
 *   - objects are opaque handles released with their sm_*_free function;
 *   - strings returned through char** out-parameters are heap-allocated and
 *     released with sm_string_free.
 */

#ifndef SANDMINE_H
#define SANDMINE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sm_status {
  SM_OK = 0,
  SM_ERR_INVALID_ARGUMENT = 1,
  SM_ERR_PARSE = 2,   /* syntax, reference or duplicate errors */
  SM_ERR_IO = 3,
  SM_ERR_DATASET = 4,
  SM_ERR_ANALYSIS = 5 /* singular designs and other numeric failures */
} sm_status;

typedef enum sm_sensitivity_class {
  SM_CLASS_SOURCE = 0,
  SM_CLASS_SINK = 1,
  SM_CLASS_BOTH = 2,
  SM_CLASS_NEITHER = 3
} sm_sensitivity_class;

typedef struct sm_catalog sm_catalog;
typedef struct sm_app sm_app;
typedef struct sm_dataset sm_dataset;

const char* sm_version(void);

/* Comma-separated list of exploration strategies ("tools"). */
const char* sm_list_tools(void);

void sm_string_free(char* text);

/* ---- sensitive-API catalog ---------------------------------------- */

sm_status sm_catalog_load_text(const char* text, sm_catalog** out, char* err,
                               size_t err_cap);
sm_status sm_catalog_load_file(const char* path, sm_catalog** out, char* err,
                               size_t err_cap);
/* The catalog shipped with the library (also at data/catalog.txt). */
sm_status sm_catalog_load_default(sm_catalog** out, char* err, size_t err_cap);
void sm_catalog_free(sm_catalog* catalog);
size_t sm_catalog_size(const sm_catalog* catalog);
int sm_catalog_is_sensitive(const sm_catalog* catalog, const char* api);
/* Returns the sm_sensitivity_class, or -1 if the API is not cataloged. */
int sm_catalog_class_of(const sm_catalog* catalog, const char* api);

/* ---- app IR -------------------------------------------------------- */

/* `catalog` may be NULL. With `strict_refs` non-zero, call targets and GUI
 * handlers that are neither declared methods nor cataloged APIs are
 * reference errors instead of external calls. */
sm_status sm_app_parse_text(const char* text, const sm_catalog* catalog,
                            int strict_refs, sm_app** out, char* err,
                            size_t err_cap);
sm_status sm_app_parse_file(const char* path, const sm_catalog* catalog,
                            int strict_refs, sm_app** out, char* err,
                            size_t err_cap);
void sm_app_free(sm_app* app);
const char* sm_app_id(const sm_app* app);
sm_status sm_app_serialize(const sm_app* app, char** out_text, char* err,
                           size_t err_cap);

/* One exploration run; returns the trace as a JSON record. */
sm_status sm_app_explore_json(const sm_app* app, const sm_catalog* catalog,
                              const char* tool, uint64_t seed, int budget,
                              int repetition, char** out_json, char* err,
                              size_t err_cap);

/* Statically reachable sensitive APIs, as a sorted JSON array. */
sm_status sm_app_static_set_json(const sm_app* app, const sm_catalog* catalog,
                                 char** out_json, char* err, size_t err_cap);

/* Source-to-sink flows found by the taint engine, as a JSON record. */
sm_status sm_app_taint_json(const sm_app* app, const sm_catalog* catalog,
                            char** out_json, char* err, size_t err_cap);

/* Call graph in Graphviz DOT format. */
sm_status sm_app_callgraph_dot(const sm_app* app, char** out_text, char* err,
                               size_t err_cap);

/* ---- pair datasets -------------------------------------------------- */

/* Opens a <dir>/<pair_id>/{benign.app,malign.app} dataset. Strict: any
 * malformed pair is an error. */
sm_status sm_dataset_open(const char* dir, sm_dataset** out, char* err,
                          size_t err_cap);
void sm_dataset_free(sm_dataset* dataset);
size_t sm_dataset_size(const sm_dataset* dataset);
const char* sm_dataset_pair_id(const sm_dataset* dataset, size_t index);

/* Manifest diff of one pair as JSON (added/removed permissions, changed
 * metadata keys). */
sm_status sm_dataset_manifest_diff_json(const sm_dataset* dataset,
                                        const char* pair_id, char** out_json,
                                        char* err, size_t err_cap);

/* ---- experiments ----------------------------------------------------- */

typedef struct sm_run_config {
  const char* tools;          /* comma separated; NULL = all */
  int budget;                 /* GUI events per run */
  int repetitions;
  int disable_static;         /* non-zero: skip the WS pass entirely */
  uint64_t seed;
  const char* output_format;  /* "csv", "json" or "markdown"; NULL = markdown */
  int step_limit;             /* interpreter statements per handler */
} sm_run_config;

/* Fills in the default configuration (all tools, budget 200, 3 repetitions,
 * seed 42, markdown). */
void sm_run_config_init(sm_run_config* config);

/* Runs the tool x pair detection matrix and writes the run directory
 * (observations.csv, traces/, summary.json, report). Returns the summary
 * as JSON. */
sm_status sm_run_experiment(const sm_dataset* dataset,
                            const sm_catalog* catalog,
                            const sm_run_config* config, const char* out_dir,
                            char** out_summary_json, char* err,
                            size_t err_cap);

/* Taint-differences every pair and writes the taint run directory. */
sm_status sm_taint_dataset(const sm_dataset* dataset,
                           const sm_catalog* catalog, const char* out_dir,
                           char** out_summary_json, char* err, size_t err_cap);

/* Renders the report for a previously written run directory; taint_dir may
 * be NULL. */
sm_status sm_render_report(const char* results_dir, const char* taint_dir,
                           const char* format, char** out_text, char* err,
                           size_t err_cap);

/* Logistic regression over an observations CSV. Formulas: "detected ~ 1",
 * "detected ~ tool", "detected ~ tool + static + repetition". */
sm_status sm_regress_csv(const char* observations_csv, const char* formula,
                         const char* format, char** out_text, char* err,
                         size_t err_cap);

/* Generates the bundled synthetic benchmark (30 pairs with recorded ground
 * truth) calibrated for the given exploration parameters. */
sm_status sm_synth_dataset(const char* out_dir, uint64_t seed, int budget,
                           int repetitions, char** out_summary_json, char* err,
                           size_t err_cap);

/* Detection-count drop when the static component is removed:
 * (ws - wos) * 100 / ws. Returns NaN when ws is 0. */
double sm_impact(long long ws_count, long long wos_count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SANDMINE_H */
