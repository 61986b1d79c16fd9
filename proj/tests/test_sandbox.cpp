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

#include "sandbox.hpp"

#include "doctest.h"
#include "error.hpp"
#include "explore.hpp"
#include "static_analysis.hpp"
#include "support/generators.hpp"

using namespace sandmine;
using sandmine::testing::test_catalog;

namespace {

AppPair make_pair(const std::string& benign_text, const std::string& malign_text) {
  AppPair pair;
  pair.pair_id = "t";
  pair.benign = parse_app(benign_text);
  pair.malign = parse_app(malign_text);
  return pair;
}

AppPair trivial_pair() {
  return make_pair("app a\nentry m\nmethod m() {\n}\n",
                   "app b\nentry m\nmethod m() {\n}\n");
}

}  // namespace

TEST_CASE("build_sandbox unions dynamic and static sets") {
  StaticCallSet stat{"a", {"getDeviceId", "sendSMS"}};
  Sandbox ws = build_sandbox("a", {"getDeviceId"}, stat);
  CHECK(ws.allowed == std::set<ApiId>{"getDeviceId", "sendSMS"});
  CHECK(ws.built_with_static);

  Sandbox wos = build_sandbox("a", {"getDeviceId"}, std::nullopt);
  CHECK(wos.allowed == std::set<ApiId>{"getDeviceId"});
  CHECK_FALSE(wos.built_with_static);

  SUBCASE("joker dynamic set plus static set is the pure static sandbox") {
    Sandbox pure = build_sandbox("a", {}, stat);
    CHECK(pure.allowed == stat.apis);
  }

  SUBCASE("static set for a different app is rejected") {
    StaticCallSet other{"elsewhere", {"sendSMS"}};
    CHECK_THROWS_AS(build_sandbox("a", {}, other), Error);
  }
}

TEST_CASE("detect flags calls outside the sandbox") {
  AppPair pair = trivial_pair();
  Sandbox box = build_sandbox("a", {"getDeviceId", "sendSMS"}, std::nullopt);

  SandboxVerdict hit =
      detect(pair, box, {"getDeviceId", "sendSMS", "getMacAddress"}, "random");
  CHECK(hit.detected);
  CHECK(hit.offending == std::set<ApiId>{"getMacAddress"});

  SandboxVerdict miss = detect(pair, box, {"sendSMS"}, "random");
  CHECK_FALSE(miss.detected);
  CHECK(miss.offending.empty());

  SUBCASE("empty against empty: joker under WOS never detects") {
    Sandbox empty = build_sandbox("a", {}, std::nullopt);
    CHECK_FALSE(detect(pair, empty, {}, "joker").detected);
  }

  SUBCASE("mismatched sandbox and pair ids are an error") {
    Sandbox wrong = build_sandbox("zzz", {}, std::nullopt);
    CHECK_THROWS_AS(detect(pair, wrong, {}, "random"), Error);
  }
}

TEST_CASE("growing a sandbox never creates detections") {
  Rng rng(41);
  std::vector<ApiId> apis;
  for (const auto& [api, cls] : test_catalog().entries()) apis.push_back(api);
  AppPair pair = trivial_pair();
  for (int i = 0; i < 100; ++i) {
    std::set<ApiId> allowed, observed;
    for (const auto& api : apis) {
      if (rng.coin()) observed.insert(api);
      if (rng.coin()) allowed.insert(api);
    }
    std::set<ApiId> larger = allowed;
    for (const auto& api : apis) {
      if (rng.below(4) == 0) larger.insert(api);
    }
    Sandbox small = build_sandbox("a", allowed, std::nullopt);
    Sandbox big = build_sandbox("a", larger, std::nullopt);
    auto off_small = detect(pair, small, observed, "random").offending;
    auto off_big = detect(pair, big, observed, "random").offending;
    for (const auto& api : off_big) CHECK(off_small.count(api) == 1);
  }
}

TEST_CASE("joker-WS detection equals the closed-form static difference") {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    AppPair pair = testing::random_pair(rng, test_catalog());
    StaticCallSet stat_b = static_sensitive_set(pair.benign, test_catalog());
    StaticCallSet stat_m = static_sensitive_set(pair.malign, test_catalog());

    // Joker contributes no dynamic calls in either phase.
    Sandbox box = build_sandbox(pair.benign.id, {}, stat_b);
    SandboxVerdict verdict = detect(pair, box, stat_m.apis, "joker");

    std::set<ApiId> diff;
    for (const auto& api : stat_m.apis) {
      if (!stat_b.apis.count(api)) diff.insert(api);
    }
    CHECK(verdict.detected == !diff.empty());
    CHECK(verdict.offending == diff);
  }
}

TEST_CASE("self-pairs are never detected under shared seeds") {
  Rng rng(43);
  for (int i = 0; i < 40; ++i) {
    AppPair pair;
    pair.pair_id = "self";
    pair.benign = testing::random_app(rng, test_catalog());
    pair.malign = pair.benign;
    pair.malign.id = pair.benign.id + "_copy";

    for (StrategyKind kind : {StrategyKind::Random, StrategyKind::ModelBased,
                              StrategyKind::Humanoid, StrategyKind::Joker}) {
      std::set<ApiId> dyn_b, dyn_m;
      for (int rep = 0; rep < 3; ++rep) {
        Strategy strategy{kind, static_cast<std::uint64_t>(7000 + i + rep), 30};
        auto tb = run_exploration(pair.benign, test_catalog(), strategy);
        auto tm = run_exploration(pair.malign, test_catalog(), strategy);
        dyn_b.insert(tb.sensitive_calls.begin(), tb.sensitive_calls.end());
        dyn_m.insert(tm.sensitive_calls.begin(), tm.sensitive_calls.end());
      }
      StaticCallSet stat_b = static_sensitive_set(pair.benign, test_catalog());
      StaticCallSet stat_m = static_sensitive_set(pair.malign, test_catalog());

      Sandbox wos = build_sandbox(pair.benign.id, dyn_b, std::nullopt);
      CHECK_FALSE(detect(pair, wos, dyn_m, strategy_name(kind)).detected);

      Sandbox ws = build_sandbox(pair.benign.id, dyn_b, stat_b);
      std::set<ApiId> observed = dyn_m;
      observed.insert(stat_m.apis.begin(), stat_m.apis.end());
      CHECK_FALSE(detect(pair, ws, observed, strategy_name(kind)).detected);
    }
  }
}
