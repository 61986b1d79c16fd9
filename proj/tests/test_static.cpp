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

#include "static_analysis.hpp"

#include "doctest.h"
#include "explore.hpp"
#include "harness.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace sandmine;
using sandmine::testing::test_catalog;

namespace {

const std::string kFixtures = std::string(SANDMINE_SOURCE_DIR) + "/data/fixtures";

AppModel fixture(const std::string& rel) {
  return parse_app(read_text_file(kFixtures + "/" + rel));
}

}  // namespace

TEST_CASE("call statements become edges") {
  AppModel app = parse_app(
      "app g\n"
      "entry m\n"
      "method m() {\n"
      "  x = call getDeviceId()\n"
      "}\n");
  CallGraph g = build_call_graph(app);
  CHECK(g.edges.count({"m", "getDeviceId"}) == 1);
  CHECK(g.edges.count({CallGraph::kRoot, "m"}) == 1);
  CHECK(g.nodes.count("getDeviceId") == 1);
}

TEST_CASE("app with no calls has only root edges") {
  AppModel app = parse_app("app g\nentry m\nmethod m() {\n  x = 1\n}\n");
  CallGraph g = build_call_graph(app);
  CHECK(g.edges == std::set<std::pair<std::string, std::string>>{
                       {CallGraph::kRoot, "m"}});
}

TEST_CASE("wifi_leak method a links to both collected APIs") {
  CallGraph g = build_call_graph(fixture("wifi_leak/malign.app"));
  CHECK(g.edges.count({"a", "getDeviceId"}) == 1);
  CHECK(g.edges.count({"a", "getMacAddress"}) == 1);
}

TEST_CASE("handlers are roots: handler-only sensitive call is reachable") {
  AppModel app = parse_app(
      "app r\n"
      "screen s {\n"
      "  widget b handler onTap\n"
      "}\n"
      "entry m\n"
      "method m() {\n"
      "}\n"
      "method onTap() {\n"
      "  x = call getMacAddress()\n"
      "}\n");
  auto result = static_sensitive_set(app, test_catalog());
  CHECK(result.apis == std::set<ApiId>{"getMacAddress"});
}

TEST_CASE("declared-but-unreferenced methods are excluded") {
  AppModel app = parse_app(
      "app u\n"
      "entry m\n"
      "method m() {\n"
      "  call log()\n"
      "}\n"
      "method dead() {\n"
      "  x = call getDeviceId()\n"
      "}\n");
  auto result = static_sensitive_set(app, test_catalog());
  CHECK(result.apis.empty());
  CHECK(result.apis == testing::reachability_oracle(app, test_catalog()));
}

TEST_CASE("malign-added reachable sendSMS shows up only in the malign set") {
  auto pairs = parse_pair_dataset(kFixtures);
  const AppPair* sms = nullptr;
  for (const auto& pair : pairs) {
    if (pair.pair_id == "sms_leak") sms = &pair;
  }
  REQUIRE(sms != nullptr);
  auto benign = static_sensitive_set(sms->benign, test_catalog());
  auto malign = static_sensitive_set(sms->malign, test_catalog());
  CHECK(benign.apis.count("sendSMS") == 0);
  CHECK(malign.apis.count("sendSMS") == 1);
}

TEST_CASE("reachable set equals the transitive-closure oracle on fuzzed apps") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    AppModel app = testing::random_app(rng, test_catalog());
    CHECK(static_sensitive_set(app, test_catalog()).apis ==
          testing::reachability_oracle(app, test_catalog()));
  }
}

TEST_CASE("every dynamically observed call is statically reachable") {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    AppModel app = testing::random_app(rng, test_catalog());
    auto statics = static_sensitive_set(app, test_catalog()).apis;
    for (StrategyKind kind :
         {StrategyKind::Random, StrategyKind::ModelBased, StrategyKind::Humanoid}) {
      auto trace = run_exploration(app, test_catalog(), {kind, static_cast<std::uint64_t>(900 + i), 25});
      for (const auto& api : trace.sensitive_calls) {
        CHECK(statics.count(api) == 1);
      }
    }
  }
}

TEST_CASE("manifest diff: paper permission additions") {
  auto pairs = parse_pair_dataset(kFixtures);
  for (const auto& pair : pairs) {
    ManifestDiff diff = diff_manifest(pair);
    if (pair.pair_id == "sms_leak") {
      CHECK(diff.added_permissions ==
            std::set<std::string>{"android.permission.RECEIVE_SMS",
                                  "android.permission.SEND_SMS"});
      CHECK(diff.removed_permissions.empty());
    } else if (pair.pair_id == "admob_change") {
      CHECK(diff.added_permissions.empty());
      CHECK(diff.changed_metadata ==
            std::set<std::string>{"ADMOB_PUBLISHER_ID"});
    }
  }
}

TEST_CASE("identical manifests diff to nothing") {
  AppPair pair;
  pair.pair_id = "same";
  pair.benign = parse_app("app a\nmanifest {\n  permission p.x\n}\nentry m\nmethod m() {\n}\n");
  pair.malign = pair.benign;
  pair.malign.id = "b";
  CHECK(diff_manifest(pair).empty());
}

TEST_CASE("metadata value changes are reported by key") {
  AppPair pair;
  pair.pair_id = "meta";
  pair.benign = parse_app(
      "app a\nmanifest {\n  meta ADMOB_PUBLISHER_ID a14cf7346295891\n}\n"
      "entry m\nmethod m() {\n}\n");
  pair.malign = parse_app(
      "app b\nmanifest {\n  meta ADMOB_PUBLISHER_ID a14f099bfbf3c61\n}\n"
      "entry m\nmethod m() {\n}\n");
  CHECK(diff_manifest(pair).changed_metadata ==
        std::set<std::string>{"ADMOB_PUBLISHER_ID"});
}

TEST_CASE("manifest diff is symmetric under swap") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    AppPair pair = testing::random_pair(rng, test_catalog());
    AppPair swapped{pair.malign, pair.benign, pair.pair_id};
    ManifestDiff forward = diff_manifest(pair);
    ManifestDiff backward = diff_manifest(swapped);
    CHECK(forward.added_permissions == backward.removed_permissions);
    CHECK(forward.removed_permissions == backward.added_permissions);
    CHECK(forward.changed_metadata == backward.changed_metadata);
  }
}

TEST_CASE("dot dump mentions the root and every edge") {
  AppModel app = parse_app(
      "app d\nentry m\nmethod m() {\n  x = call getDeviceId()\n}\n");
  std::string dot = to_dot(build_call_graph(app));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"m\" -> \"getDeviceId\"") != std::string::npos);
}
