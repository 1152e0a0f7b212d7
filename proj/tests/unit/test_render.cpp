// Copyright 2026 The bnexplain Authors.
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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bnx/error.hpp"
#include "bnx/render.hpp"
#include "casebook.hpp"
#include "testkit.hpp"

#ifndef BNX_GOLDEN_DIR
#define BNX_GOLDEN_DIR "tests/golden"
#endif

using namespace bnx;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("relative change") {
  RelativeChange up = relative_change_percent(0.11, 0.0965);
  CHECK(up.percent == 14.0);
  CHECK(up.direction == ChangeDirection::kIncrease);
  CHECK(relative_change_percent(0.2, 0.097).percent == 106.0);
  RelativeChange down = relative_change_percent(0.05, 0.1);
  CHECK(down.percent == -50.0);
  CHECK(down.direction == ChangeDirection::kDecrease);
  CHECK(relative_change_percent(0.3, 0.3).no_change());
  CHECK(relative_change_percent(0.2, 1e-7).negligible_prior);
  CHECK(relative_change_percent(0.11, 0.0965, 1).percent == doctest::Approx(14.0));
  CHECK(relative_change_percent(0.125, 0.1, 0).percent == 25.0);
  CHECK(format_percent(13.99, 1) == "14.0");
  CHECK(format_percent(-0.2, 0) == "0");
  CHECK(format_percent(106.0, 0) == "106");
}

TEST_CASE("golden three-level rendering") {
  RenderedExplanation out = render(testkit::coagulopathy_report(), testkit::coagulopathy_render_config());
  std::string golden = testkit::read_file(std::string(BNX_GOLDEN_DIR) + "/coagulopathy_level3.txt");
  CHECK(out.text == golden);
  CHECK(out.text.find("The likelihood of COAGULOPATHY = YES is 11%.\n") == 0);
  CHECK(out.text.find("This patient has a 14% INCREASE in risk of becoming coagulopathic than an "
                      "average trauma call patient.") != std::string::npos);
  CHECK(count(out.text, "(Very important)") == 3);
}

TEST_CASE("levels truncate the output") {
  ExplanationReport report = testkit::coagulopathy_report();
  RenderConfig cfg = testkit::coagulopathy_render_config();
  cfg.level = 1;
  std::string l1 = render(report, cfg).text;
  CHECK(l1.find("Important elements") == std::string::npos);
  cfg.level = 2;
  std::string l2 = render(report, cfg).text;
  CHECK(l2.find("Important elements") != std::string::npos);
  CHECK(l2.find("Factors that support the INCREASED risk of PERFUSION") == std::string::npos);
  CHECK(l2.rfind(l1, 0) == 0);

  report.level2_3.clear();
  cfg.level = 3;
  CHECK(render(report, cfg).text == l1);
}

TEST_CASE("multi-state target shows every level-1 group") {
  ExplanationReport report = testkit::coagulopathy_report();
  report.target_states = {"no", "mild", "severe"};
  report.prior = {"COAGULOPATHY", {0.9035, 0.05, 0.0465}};
  report.posterior = {"COAGULOPATHY", {0.89, 0.05, 0.06}};
  report.target_focus_state = 2;
  std::string text = render(report).text;
  CHECK(text.find("Factors that partially support the INCREASED risk of COAGULOPATHY = SEVERE "
                  "(strongest to least):\n\xE2\x80\xA2 NONE") != std::string::npos);
  CHECK(text.find("This case has a 29% INCREASE in risk of having COAGULOPATHY = SEVERE than an "
                  "average case.") != std::string::npos);
}

TEST_CASE("special relative-change lines and articles") {
  ExplanationReport report = testkit::coagulopathy_report();
  report.level2_3.clear();
  report.prior = report.posterior;
  CHECK(render(report).text.find("This case has no change in risk of having COAGULOPATHY = YES from "
                                 "an average case.") != std::string::npos);
  report.prior = {"COAGULOPATHY", {1.0 - 5e-7, 5e-7}};
  CHECK(render(report).text.find("that changed from negligible to 11%.") != std::string::npos);
  report.prior = {"COAGULOPATHY", {0.9, 0.1}};  // +10%
  CHECK(render(report).text.find("has a 10% INCREASE") != std::string::npos);
  report.prior = {"COAGULOPATHY", {0.901, 0.099}};  // +11%
  CHECK(render(report).text.find("has an 11% INCREASE") != std::string::npos);
  report.prior = {"COAGULOPATHY", {0.4, 0.6}};  // -82%
  CHECK(render(report).text.find("has an 82% DECREASE in risk") != std::string::npos);
  CHECK(render(report).text.find("Factors that support the DECREASED risk") != std::string::npos);
}

TEST_CASE("no significant evidence") {
  ExplanationReport report = testkit::coagulopathy_report();
  report.level2_3.clear();
  for (auto& r : report.level1) r.significant = false;
  RenderedExplanation out = render(report);
  CHECK(out.text.find("No evidence has a significant impact on COAGULOPATHY.") != std::string::npos);
  report.level1.clear();
  out = render(report);
  CHECK(out.text.find("No evidence is d-connected to COAGULOPATHY.") != std::string::npos);
  CHECK(out.structured["level1"]["message"] == "No evidence is d-connected to COAGULOPATHY.");
}

TEST_CASE("config validation and focus overrides") {
  Network net = testkit::load_network("trauma.json");
  RenderConfig cfg;
  cfg.level = 4;
  CHECK_THROWS_AS(validate(cfg, net), Error);
  cfg.level = 2;
  cfg.percent_precision = 7;
  CHECK_THROWS_AS(validate(cfg, net), Error);
  cfg.percent_precision = 2;
  cfg.focus_states = {{"COAG", "sometimes"}};
  CHECK_THROWS_AS(validate(cfg, net), Error);
  cfg.focus_states = {{"COAG", "no"}};
  CHECK_NOTHROW(validate(cfg, net));

  ExplanationReport report = testkit::coagulopathy_report();
  RenderConfig focus;
  focus.focus_states = {{"COAGULOPATHY", "no"}};
  focus.percent_precision = 1;
  std::string text = render(report, focus).text;
  CHECK(text.find("The likelihood of COAGULOPATHY = NO is 89.0%.") == 0);
  CHECK(text.find("1.5% DECREASE") != std::string::npos);
}

TEST_CASE("structured output mirrors the text") {
  std::mt19937_64 rng(5);
  Network net = testkit::load_network("trauma.json");
  std::vector<ExplanationReport> reports;
  reports.push_back(testkit::coagulopathy_report());
  EvidenceSet ev = testkit::load_evidence(net, "trauma_evidence.json");
  for (const char* t : {"COAG", "ISS", "DEATH", "PTR"}) {
    NodeIndex idx = net.index_of(t);
    reports.push_back(explain(net, ev, std::span<const NodeIndex>(&idx, 1)).at(0));
  }
  for (int g = 0; g < 100; ++g) {
    testkit::RandomNetworkOptions o;
    o.nodes = 5 + g % 5;
    o.max_states = 2 + g % 3;
    o.edge_probability = 0.45;
    Network rnet = testkit::random_network(rng, o);
    NodeIndex t = std::uniform_int_distribution<NodeIndex>(0, rnet.size() - 1)(rng);
    EvidenceSet rev = testkit::sampled_evidence(rnet, rng, 1 + g % 4, {t});
    reports.push_back(explain(rnet, rev, std::span<const NodeIndex>(&t, 1)).at(0));
  }
  for (const auto& report : reports) {
    RenderedExplanation out = render(report);
    CHECK(out.text == render(report).text);
    CHECK(out.text.back() == '\n');
    CHECK(out.text.find("\r") == std::string::npos);
    CHECK(out.text.find(out.structured["headline"]["text"].get<std::string>()) == 0);
    CHECK(out.text.find(out.structured["relative_change"]["text"].get<std::string>()) != std::string::npos);

    std::multiset<std::string> seen;
    for (const auto& group : out.structured["level1"]["groups"]) {
      double last = 2.0;
      for (const auto& it : group["items"]) {
        CHECK(it["impact"].get<double>() <= last);
        last = it["impact"].get<double>();
        seen.insert(it["node"].get<std::string>());
        CHECK(out.text.find("\xE2\x80\xA2 " + it["text"].get<std::string>() + "\n") != std::string::npos);
      }
    }
    std::multiset<std::string> want;
    for (const ImpactRecord* r : report.significant()) want.insert(r->evidence_node);
    CHECK(seen == want);

    if (out.structured.contains("level3")) {
      for (const auto& block : out.structured["level3"]) {
        CHECK(block["groups"].size() == 4);
      }
    }
  }
}
