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

#include "bnx/report_json.hpp"

namespace bnx {

using ojson = nlohmann::ordered_json;

ojson to_json(const Distribution& d) {
  return {{"node", d.node}, {"mass", d.mass}};
}

ojson to_json(const ThresholdResult& t) {
  return {{"alpha", t.alpha},
          {"theta", t.theta},
          {"reference_point", to_json(t.reference_point)},
          {"ladder_exhausted", t.ladder_exhausted}};
}

ojson to_json(const ImpactRecord& r) {
  return {{"evidence_node", r.evidence_node},
          {"evidence_label", r.evidence_label},
          {"observed_value", r.observed_value},
          {"impact", r.impact},
          {"significant", r.significant},
          {"category", to_string(r.category)},
          {"per_state_delta", r.per_state_delta}};
}

ojson to_json(const IntermediateRecord& r) {
  ojson categories = ojson::object();
  for (const auto& [id, c] : r.per_evidence_category()) categories[id] = to_string(c);
  ojson effects = ojson::array();
  for (const auto& e : r.effects) effects.push_back(to_json(e));
  return {{"node", r.node},
          {"label", r.label},
          {"states", r.states},
          {"prior", to_json(r.prior)},
          {"posterior", to_json(r.posterior)},
          {"focus_state", r.focus_state},
          {"overall_impact", r.overall_impact},
          {"connected_significant_evidence", r.connected_significant_evidence()},
          {"per_evidence_category", std::move(categories)},
          {"effects", std::move(effects)}};
}

ojson to_json(const ExplanationReport& report) {
  ojson level1 = ojson::array();
  for (const auto& r : report.level1) level1.push_back(to_json(r));
  ojson level2_3 = ojson::array();
  for (const auto& r : report.level2_3) level2_3.push_back(to_json(r));
  return {{"report_version", kReportVersion},
          {"target", report.target},
          {"target_label", report.target_label},
          {"target_states", report.target_states},
          {"target_focus_state", report.target_focus_state},
          {"metric", to_string(report.metric)},
          {"prior", to_json(report.prior)},
          {"posterior", to_json(report.posterior)},
          {"overall_impact", report.overall_impact},
          {"threshold", to_json(report.threshold)},
          {"level1", std::move(level1)},
          {"level2_3", std::move(level2_3)},
          {"skipped_evidence", report.skipped_evidence},
          {"warnings", report.warnings}};
}

std::string canonical_json(const std::vector<ExplanationReport>& reports) {
  ojson doc = ojson::array();
  for (const auto& r : reports) doc.push_back(to_json(r));
  return doc.dump(2) + "\n";
}

}  // namespace bnx
