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
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "bnx/error.hpp"
#include "bnx/explain.hpp"
#include "bnx/graph.hpp"
#include "bnx/metrics.hpp"
#include "bnx/report_json.hpp"
#include "testkit.hpp"

using namespace bnx;

namespace {

std::vector<std::string> significant_ids(const ExplanationReport& r) {
  std::vector<std::string> out;
  for (const ImpactRecord* rec : r.significant()) out.push_back(rec->evidence_node);
  return out;
}

const ImpactRecord& record(const ExplanationReport& r, const std::string& id) {
  for (const auto& rec : r.level1) {
    if (rec.evidence_node == id) return rec;
  }
  throw std::runtime_error("no record for " + id);
}

ExplanationReport explain_one(const Network& net, const EvidenceSet& ev, const std::string& target,
                              const ExplainConfig& config = {}) {
  NodeIndex t = net.index_of(target);
  return explain(net, ev, std::span<const NodeIndex>(&t, 1), config).at(0);
}

}  // namespace

TEST_CASE("six findings, hellinger") {
  Network net = testkit::load_network("six_findings.json");
  EvidenceSet ev = testkit::load_evidence(net, "six_findings_evidence.json");
  ExplanationReport r = explain_one(net, ev, "T");
  CHECK(r.level1.size() == 6);
  CHECK(significant_ids(r) == std::vector<std::string>{"e4", "e3", "e6"});
  CHECK(r.threshold.alpha == 0.5);
  CHECK(r.threshold.theta == doctest::Approx(0.048).epsilon(0.001 / 0.048));
  CHECK(r.overall_impact == doctest::Approx(0.1038).epsilon(1e-3));
  CHECK(record(r, "e4").impact == doctest::Approx(0.0887).epsilon(1e-3));
  CHECK(record(r, "e4").category == ConflictCategory::kConsistent);
  CHECK(record(r, "e3").category == ConflictCategory::kConflicting);
  CHECK(record(r, "e6").category == ConflictCategory::kConflicting);
  CHECK(r.level2_3.empty());
  CHECK(r.skipped_evidence.empty());
  CHECK(r.target_focus_state == 1);
  for (const auto& rec : r.level1) {
    double p = r.posterior[0] - rec.per_state_delta[0];
    CHECK(rec.impact == doctest::Approx(testkit::oracle_hellinger(r.posterior.mass, {p, 1 - p})).epsilon(1e-12));
  }
}

TEST_CASE("six findings, kl") {
  Network net = testkit::load_network("six_findings.json");
  EvidenceSet ev = testkit::load_evidence(net, "six_findings_evidence.json");
  ExplainConfig cfg;
  cfg.metric = Metric::kKullbackLeibler;
  ExplanationReport r = explain_one(net, ev, "T", cfg);
  CHECK(significant_ids(r) == std::vector<std::string>{"e4", "e3", "e6"});
  CHECK(r.threshold.theta == doctest::Approx(0.0042).epsilon(0.0005 / 0.0042));
  CHECK(r.metric == Metric::kKullbackLeibler);
}

TEST_CASE("AND gate: a finding explained away has zero impact") {
  Network net = testkit::load_network("and_gate.json");
  EvidenceSet ev = testkit::load_evidence(net, "and_gate_evidence.json");
  ExplanationReport r = explain_one(net, ev, "T");
  CHECK(record(r, "B").impact == 0.0);
  CHECK(record(r, "A").impact > 0.5);
  CHECK(significant_ids(r) == std::vector<std::string>{"A"});
  CHECK_FALSE(record(r, "B").significant);
}

TEST_CASE("d-separated evidence is skipped") {
  Network net = testkit::load_network("crossroads.json");
  SUBCASE("partly") {
    EvidenceSet ev = EvidenceSet::resolve(net, {{"G", std::string("yes")}, {"A", std::string("yes")}});
    ExplanationReport r = explain_one(net, ev, "T");
    CHECK(r.skipped_evidence == std::vector<std::string>{"G"});
    CHECK(r.level1.size() == 1);
  }
  SUBCASE("entirely") {
    EvidenceSet ev = EvidenceSet::resolve(net, {{"G", std::string("yes")}});
    ExplanationReport r = explain_one(net, ev, "T");
    CHECK(r.level1.empty());
    CHECK(r.level2_3.empty());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("d-separated") != std::string::npos);
  }
}

TEST_CASE("one finding on a binary target is consistent") {
  Network net = testkit::load_network("crossroads.json");
  EvidenceSet ev = EvidenceSet::resolve(net, {{"A", std::string("yes")}});
  ExplanationReport r = explain_one(net, ev, "T");
  REQUIRE(r.level1.size() == 1);
  CHECK(r.level1[0].category == ConflictCategory::kConsistent);
  CHECK(r.level1[0].impact == r.overall_impact);
}

TEST_CASE("two targets give independent reports") {
  Network net = testkit::load_network("crossroads.json");
  EvidenceSet ev = testkit::load_evidence(net, "crossroads_evidence.json");
  std::vector<NodeIndex> targets{net.index_of("T"), net.index_of("G")};
  std::vector<ExplanationReport> reports = explain(net, ev, targets);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].target == "T");
  CHECK(reports[1].target == "G");
  CHECK(reports[1].level1.empty());  // G is cut off by the unobserved collider E
  CHECK(reports[0].level1.size() == 3);
}

TEST_CASE("focus overrides and argmax") {
  Network net = testkit::load_network("trauma.json");
  EvidenceSet ev = testkit::load_evidence(net, "trauma_evidence.json");
  ExplainConfig cfg;
  cfg.focus_states = {{"COAG", "yes"}, {"ISS", "severe"}};
  ExplanationReport r = explain_one(net, ev, "COAG", cfg);
  CHECK(r.target_focus_state == 1);
  for (const auto& ir : r.level2_3) {
    if (ir.node == "ISS") CHECK(ir.focus_state == 2);
    if (ir.node == "PERFUSION") CHECK(ir.focus_state == argmax_state(ir.posterior));
  }
  CHECK(argmax_state(Distribution{"X", {0.4, 0.4, 0.2}}) == 0);
}

TEST_CASE("trauma levels 2 and 3") {
  Network net = testkit::load_network("trauma.json");
  EvidenceSet ev = testkit::load_evidence(net, "trauma_evidence.json");
  ExplanationReport r = explain_one(net, ev, "COAG");
  REQUIRE(r.level2_3.size() == 2);
  CHECK(r.level2_3[0].node == "ISS");
  CHECK(r.level2_3[1].node == "PERFUSION");
  std::vector<std::string> sig = significant_ids(r);
  std::set<std::string> sig_set(sig.begin(), sig.end());
  const std::map<std::string, std::set<std::string>> reachable = {
      {"ISS", {"ENERGY", "GCS", "HAEMOTHORAX", "LBF"}},
      {"PERFUSION", {"HAEMOTHORAX", "LACTATE", "LBF", "SBP"}}};
  for (const auto& ir : r.level2_3) {
    CAPTURE(ir.node);
    std::set<std::string> want;
    for (const auto& id : reachable.at(ir.node)) {
      if (sig_set.count(id)) want.insert(id);
    }
    std::vector<std::string> got = ir.connected_significant_evidence();
    CHECK(std::set<std::string>(got.begin(), got.end()) == want);
    CHECK(ir.per_evidence_category().size() == got.size());
    NodeIndex m = net.index_of(ir.node);
    CHECK(ir.prior == posterior(net, {}, m));
    CHECK(ir.posterior == posterior(net, ev, m));
    CHECK(ir.overall_impact == hellinger(ir.posterior, ir.prior));
    for (std::size_t i = 1; i < ir.effects.size(); ++i) {
      CHECK(ir.effects[i - 1].impact >= ir.effects[i].impact);
    }
  }
  // Level-3 categories for PERFUSION in this parameterization.
  auto cats = r.level2_3[1].per_evidence_category();
  CHECK(cats.at("HAEMOTHORAX") == ConflictCategory::kConflicting);
  CHECK(cats.at("SBP") == ConflictCategory::kConsistent);
  CHECK(cats.at("LACTATE") == ConflictCategory::kConsistent);
  CHECK(cats.at("LBF") == ConflictCategory::kConsistent);
}

TEST_CASE("argument errors") {
  Network net = testkit::load_network("crossroads.json");
  EvidenceSet ev = testkit::load_evidence(net, "crossroads_evidence.json");
  NodeIndex t = net.index_of("T"), a = net.index_of("A");
  auto code = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;  // sentinel: nothing thrown
  };
  CHECK(code([&] { explain(net, EvidenceSet{}, std::span<const NodeIndex>(&t, 1)); }) ==
        ErrorCode::kInvalidEvidence);
  CHECK(code([&] { explain(net, ev, std::span<const NodeIndex>(&a, 1)); }) == ErrorCode::kInvalidArgument);
  CHECK(code([&] { explain(net, ev, std::span<const NodeIndex>()); }) == ErrorCode::kInvalidArgument);
  ExplainConfig bad_focus;
  bad_focus.focus_states = {{"T", "maybe"}};
  CHECK(code([&] { explain(net, ev, std::span<const NodeIndex>(&t, 1), bad_focus); }) ==
        ErrorCode::kInvalidArgument);
  bad_focus.focus_states = {{"Q", "yes"}};
  CHECK(code([&] { explain(net, ev, std::span<const NodeIndex>(&t, 1), bad_focus); }) ==
        ErrorCode::kUnknownNode);
  ExplainConfig bad_ladder;
  bad_ladder.alpha_ladder = {0.2, 0.3};
  CHECK(code([&] { explain(net, ev, std::span<const NodeIndex>(&t, 1), bad_ladder); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("report invariants on random networks") {
  std::mt19937_64 rng(77);
  int reports = 0;
  for (int g = 0; g < 300; ++g) {
    testkit::RandomNetworkOptions o;
    o.nodes = 4 + g % 7;
    o.max_states = g % 2 ? 2 : 4;
    o.edge_probability = 0.4;
    Network net = testkit::random_network(rng, o);
    NodeIndex t = std::uniform_int_distribution<NodeIndex>(0, net.size() - 1)(rng);
    EvidenceSet ev = testkit::sampled_evidence(net, rng, 1 + g % 4, {t});
    ExplainConfig cfg;
    cfg.intermediate_rule = g % 3 == 0 ? IntermediateRule::kPairwise : IntermediateRule::kActiveTrail;
    ExplanationReport r = explain_one(net, ev, net.node(t).id, cfg);
    ++reports;
    std::vector<bool> observed = ev.observed_mask(net.size());
    QueryBundle b = query_bundle(net, ev, t);

    CHECK(r.level1.size() + r.skipped_evidence.size() == ev.size());
    for (const auto& id : r.skipped_evidence) {
      CHECK(hellinger(b.joint_posterior, b.retracted.at(id)) <= 1e-9);
    }
    std::size_t n_sig = 0;
    for (std::size_t i = 0; i < r.level1.size(); ++i) {
      const ImpactRecord& rec = r.level1[i];
      if (i > 0) CHECK(r.level1[i - 1].impact >= rec.impact);
      CHECK(rec.significant == (rec.impact >= r.threshold.theta));
      CHECK(rec.impact >= 0.0);
      CHECK(rec.impact <= 1.0);
      double sum = std::accumulate(rec.per_state_delta.begin(), rec.per_state_delta.end(), 0.0);
      CHECK(std::abs(sum) <= 1e-9);
      CHECK(rec.category == testkit::oracle_category(r.posterior.mass, b.retracted.at(rec.evidence_node).mass,
                                                     r.prior.mass));
      if (net.cardinality(t) == 2) {
        CHECK(rec.category != ConflictCategory::kMixedConsistent);
        CHECK(rec.category != ConflictCategory::kMixedConflicting);
      }
      n_sig += rec.significant;
    }
    if (!r.level1.empty() && !r.threshold.ladder_exhausted) CHECK(n_sig >= (r.level1.size() + 1) / 2);

    std::vector<NodeIndex> mb = markov_blanket(net, t);
    std::set<std::string> sig;
    for (const ImpactRecord* rec : r.significant()) sig.insert(rec->evidence_node);
    for (const auto& ir : r.level2_3) {
      NodeIndex m = net.index_of(ir.node);
      CHECK_FALSE(observed[m]);
      CHECK(std::find(mb.begin(), mb.end(), m) != mb.end());
      for (const auto& eff : ir.effects) {
        CHECK(sig.count(eff.evidence_node) == 1);
        NodeIndex e = net.index_of(eff.evidence_node);
        std::vector<bool> rest = observed;
        rest[e] = false;
        CHECK_FALSE(d_separated(net, m, e, rest));
      }
    }
    std::vector<ExplanationReport> once{r};
    std::vector<ExplanationReport> twice{explain_one(net, ev, net.node(t).id, cfg)};
    CHECK(canonical_json(once) == canonical_json(twice));
  }
  CHECK(reports == 300);
}
