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
// Exercises the shared library exactly the way an external consumer would:
// only through sandmine.h.

#include "sandmine.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const std::string kFixtures = std::string(SANDMINE_SOURCE_DIR) + "/data/fixtures";
const std::string kSynthetic = std::string(SANDMINE_SOURCE_DIR) + "/data/synthetic";

struct Str {
  char* ptr = nullptr;
  ~Str() { sm_string_free(ptr); }
  std::string view() const { return ptr ? ptr : ""; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string out((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return out;
}

}  // namespace

TEST_CASE("version and tool listing") {
  CHECK(std::strlen(sm_version()) > 0);
  CHECK(std::string(sm_list_tools()) == "random,modelbased,humanoid,joker");
}

TEST_CASE("catalog lifecycle and queries") {
  char err[256];
  sm_catalog* catalog = nullptr;
  REQUIRE(sm_catalog_load_default(&catalog, err, sizeof err) == SM_OK);
  CHECK(sm_catalog_size(catalog) >= 20);
  CHECK(sm_catalog_is_sensitive(catalog, "getDeviceId") == 1);
  CHECK(sm_catalog_is_sensitive(catalog, "println") == 0);
  CHECK(sm_catalog_class_of(catalog, "getDeviceId") == SM_CLASS_SOURCE);
  CHECK(sm_catalog_class_of(catalog, "sendSMS") == SM_CLASS_SINK);
  CHECK(sm_catalog_class_of(catalog, "transceive") == SM_CLASS_BOTH);
  CHECK(sm_catalog_class_of(catalog, "vibrate") == SM_CLASS_NEITHER);
  CHECK(sm_catalog_class_of(catalog, "println") == -1);
  sm_catalog_free(catalog);

  sm_catalog* bad = nullptr;
  sm_status status = sm_catalog_load_text("", &bad, err, sizeof err);
  CHECK(status == SM_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(err) > 0);
}

TEST_CASE("parse, serialize and analyze an app") {
  char err[256];
  sm_catalog* catalog = nullptr;
  REQUIRE(sm_catalog_load_default(&catalog, err, sizeof err) == SM_OK);

  sm_app* app = nullptr;
  std::string path = kFixtures + "/wifi_leak/malign.app";
  REQUIRE(sm_app_parse_file(path.c_str(), catalog, 0, &app, err, sizeof err) ==
          SM_OK);
  CHECK(std::string(sm_app_id(app)) == "wifi_leak_m");

  Str text;
  REQUIRE(sm_app_serialize(app, &text.ptr, err, sizeof err) == SM_OK);
  sm_app* again = nullptr;
  REQUIRE(sm_app_parse_text(text.ptr, catalog, 0, &again, err, sizeof err) ==
          SM_OK);
  Str text2;
  REQUIRE(sm_app_serialize(again, &text2.ptr, err, sizeof err) == SM_OK);
  CHECK(text.view() == text2.view());
  sm_app_free(again);

  Str statics;
  REQUIRE(sm_app_static_set_json(app, catalog, &statics.ptr, err, sizeof err) ==
          SM_OK);
  CHECK(statics.view().find("getMacAddress") != std::string::npos);

  Str flows;
  REQUIRE(sm_app_taint_json(app, catalog, &flows.ptr, err, sizeof err) == SM_OK);
  CHECK(flows.view().find("httpSend") != std::string::npos);

  Str dot;
  REQUIRE(sm_app_callgraph_dot(app, &dot.ptr, err, sizeof err) == SM_OK);
  CHECK(dot.view().find("digraph") != std::string::npos);

  Str trace;
  REQUIRE(sm_app_explore_json(app, catalog, "random", 7, 50, 1, &trace.ptr,
                              err, sizeof err) == SM_OK);
  CHECK(trace.view().find("sensitive_calls") != std::string::npos);

  CHECK(sm_app_explore_json(app, catalog, "monkey", 7, 50, 1, &trace.ptr, err,
                            sizeof err) == SM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(err).find("random") != std::string::npos);

  sm_app_free(app);
  sm_catalog_free(catalog);
}

TEST_CASE("parse failures report status and message") {
  char err[256] = {0};
  sm_app* app = nullptr;
  CHECK(sm_app_parse_text("app x\nentry nope\n", nullptr, 0, &app, err,
                          sizeof err) == SM_ERR_PARSE);
  CHECK(std::string(err).find("nope") != std::string::npos);
}

TEST_CASE("dataset, experiment, report and regression through the C API") {
  char err[512];
  sm_catalog* catalog = nullptr;
  REQUIRE(sm_catalog_load_default(&catalog, err, sizeof err) == SM_OK);

  sm_dataset* dataset = nullptr;
  REQUIRE(sm_dataset_open(kFixtures.c_str(), &dataset, err, sizeof err) == SM_OK);
  CHECK(sm_dataset_size(dataset) == 4);
  CHECK(std::string(sm_dataset_pair_id(dataset, 0)) == "admob_change");
  CHECK(sm_dataset_pair_id(dataset, 99) == nullptr);

  Str diff;
  REQUIRE(sm_dataset_manifest_diff_json(dataset, "admob_change", &diff.ptr,
                                        err, sizeof err) == SM_OK);
  CHECK(diff.view().find("ADMOB_PUBLISHER_ID") != std::string::npos);
  CHECK(sm_dataset_manifest_diff_json(dataset, "ghost", &diff.ptr, err,
                                      sizeof err) == SM_ERR_DATASET);

  fs::path out = fs::temp_directory_path() / "sandmine_capi_run";
  fs::remove_all(out);
  sm_run_config config;
  sm_run_config_init(&config);
  config.budget = 30;
  Str summary;
  REQUIRE(sm_run_experiment(dataset, catalog, &config, out.string().c_str(),
                            &summary.ptr, err, sizeof err) == SM_OK);
  CHECK(summary.view().find("counts") != std::string::npos);
  CHECK(fs::exists(out / "observations.csv"));
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "report.md"));

  fs::path taint_out = fs::temp_directory_path() / "sandmine_capi_taint";
  fs::remove_all(taint_out);
  Str taint_summary;
  REQUIRE(sm_taint_dataset(dataset, catalog, taint_out.string().c_str(),
                           &taint_summary.ptr, err, sizeof err) == SM_OK);
  CHECK(fs::exists(taint_out / "taint_verdicts.csv"));
  CHECK(fs::exists(taint_out / "flows" / "loc_leak_m.json"));

  Str report;
  REQUIRE(sm_render_report(out.string().c_str(), taint_out.string().c_str(),
                           "markdown", &report.ptr, err, sizeof err) == SM_OK);
  CHECK(report.view().find("Combined detectors") != std::string::npos);

  Str fit;
  std::string csv = (out / "observations.csv").string();
  REQUIRE(sm_regress_csv(csv.c_str(), "detected ~ tool + static + repetition",
                         "json", &fit.ptr, err, sizeof err) == SM_OK);
  CHECK(fit.view().find("(Intercept)") != std::string::npos);

  CHECK(sm_regress_csv(csv.c_str(), "detected ~ moon", "json", &fit.ptr, err,
                       sizeof err) == SM_ERR_INVALID_ARGUMENT);
  CHECK(sm_render_report("/nonexistent/dir", nullptr, "markdown", &report.ptr,
                         err, sizeof err) != SM_OK);

  sm_dataset_free(dataset);
  sm_catalog_free(catalog);
  fs::remove_all(out);
  fs::remove_all(taint_out);
}

TEST_CASE("impact helper") {
  CHECK(sm_impact(73, 61) == doctest::Approx(16.438356).epsilon(1e-6));
  CHECK(std::isnan(sm_impact(0, 0)));
}

TEST_CASE("synth through the C API matches the shipped ground truth") {
  char err[256];
  fs::path out = fs::temp_directory_path() / "sandmine_capi_synth";
  fs::remove_all(out);
  Str truth;
  REQUIRE(sm_synth_dataset(out.string().c_str(), 42, 200, 3, &truth.ptr, err,
                           sizeof err) == SM_OK);
  CHECK(truth.view() + "\n" == slurp(kSynthetic + "/ground_truth.json"));
  fs::remove_all(out);
}
