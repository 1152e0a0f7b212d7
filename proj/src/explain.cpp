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

#include "bnx/explain.hpp"

#include <algorithm>

#include "bnx/error.hpp"
#include "bnx/graph.hpp"

namespace bnx {

std::vector<std::string> IntermediateRecord::connected_significant_evidence() const {
  std::vector<std::string> ids;
  for (const auto& e : effects) ids.push_back(e.evidence_node);
  return ids;
}

std::map<std::string, ConflictCategory> IntermediateRecord::per_evidence_category() const {
  std::map<std::string, ConflictCategory> out;
  for (const auto& e : effects) out.emplace(e.evidence_node, e.category);
  return out;
}

std::vector<const ImpactRecord*> ExplanationReport::significant() const {
  std::vector<const ImpactRecord*> out;
  for (const auto& r : level1) {
    if (r.significant) out.push_back(&r);
  }
  return out;
}

std::size_t argmax_state(const Distribution& d) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[best]) best = i;
  }
  return best;
}

void validate(const ExplainConfig& config, const Network& net) {
  // Reuses the ladder checks of select_significant on a trivial input.
  Distribution probe{"", {0.5, 0.5}};
  select_significant({{"probe", 0.0}}, probe, probe, config.alpha_ladder, Metric::kHellinger);
  for (const auto& [node, state] : config.focus_states) {
    NodeIndex idx = net.index_of(node);
    if (!net.node(idx).state_index(state)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "focus state '" + state + "' is not a state of node '" + node + "'");
    }
  }
}

namespace {

std::size_t focus_for(const Network& net, NodeIndex node, const Distribution& posterior,
                      const ExplainConfig& config) {
  const NodeSpec& spec = net.node(node);
  if (auto it = config.focus_states.find(spec.id); it != config.focus_states.end()) {
    return *spec.state_index(it->second);
  }
  return argmax_state(posterior);
}

ImpactRecord make_record(const Network& net, const Finding& finding, const Distribution& posterior,
                         const Distribution& retracted, const Distribution& prior,
                         Metric metric) {
  const NodeSpec& spec = net.node(finding.node);
  ImpactRecord r;
  r.evidence_node = spec.id;
  r.evidence_label = spec.label;
  r.observed_value = display_value(finding.raw);
  r.impact = distance(metric, posterior, retracted);
  r.category = classify_conflict(posterior, retracted, prior, metric);
  r.per_state_delta.resize(posterior.size());
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    r.per_state_delta[i] = posterior[i] - retracted[i];
  }
  return r;
}

void sort_by_impact(std::vector<ImpactRecord>& records) {
  std::sort(records.begin(), records.end(), [](const ImpactRecord& a, const ImpactRecord& b) {
    if (a.impact != b.impact) return a.impact > b.impact;
    return a.evidence_node < b.evidence_node;
  });
}

std::vector<bool> without(std::vector<bool> mask, NodeIndex node) {
  mask[node] = false;
  return mask;
}

}  // namespace

ExplanationReport explain_target(InferenceCache& cache, const Network& net,
                                 const EvidenceSet& evidence, NodeIndex target,
                                 const ExplainConfig& config) {
  const NodeSpec& tspec = net.node(target);
  QueryBundle bundle = query_bundle(cache, net, evidence, target);
  const std::vector<bool> observed = evidence.observed_mask(net.size());
  const Metric metric = config.metric;

  ExplanationReport report;
  report.target = tspec.id;
  report.target_label = tspec.label;
  report.target_states = tspec.states;
  report.prior = bundle.prior;
  report.posterior = bundle.joint_posterior;
  report.metric = metric;
  report.target_focus_state = focus_for(net, target, report.posterior, config);
  report.overall_impact = distance(metric, report.posterior, report.prior);

  // Level 1: impact of every d-connected evidence item, then significance.
  std::map<std::string, double> impacts;
  for (const auto& f : evidence.findings()) {
    const std::string& id = net.node(f.node).id;
    if (d_separated(net, f.node, target, without(observed, f.node))) {
      report.skipped_evidence.push_back(id);
      continue;
    }
    ImpactRecord r = make_record(net, f, report.posterior, bundle.retracted.at(id), report.prior,
                                 metric);
    impacts.emplace(id, r.impact);
    report.level1.push_back(std::move(r));
  }
  std::sort(report.skipped_evidence.begin(), report.skipped_evidence.end());

  std::vector<NodeIndex> significant;
  if (impacts.empty()) {
    report.threshold = significance_threshold(report.posterior, report.prior,
                                              config.alpha_ladder.front(), metric);
    report.warnings.push_back("all evidence is d-separated from target '" + tspec.id + "'");
  } else {
    SignificanceSelection sel = select_significant(impacts, report.posterior, report.prior,
                                                   config.alpha_ladder, metric);
    report.threshold = sel.threshold;
    if (sel.threshold.ladder_exhausted) {
      report.warnings.push_back("alpha ladder exhausted before half of the evidence qualified");
    }
    for (auto& r : report.level1) {
      r.significant = std::find(sel.significant.begin(), sel.significant.end(),
                                r.evidence_node) != sel.significant.end();
    }
    for (const auto& id : sel.significant) significant.push_back(net.index_of(id));
  }
  sort_by_impact(report.level1);

  // Levels 2 and 3: intermediates in MB(target) and the significant evidence
  // reaching each of them; E_sig is not re-selected per intermediate.
  for (NodeIndex m : select_intermediates(net, evidence, target, significant,
                                          config.intermediate_rule)) {
    const NodeSpec& mspec = net.node(m);
    IntermediateRecord rec;
    rec.node = mspec.id;
    rec.label = mspec.label;
    rec.states = mspec.states;
    rec.prior = cache.posterior(EvidenceSet{}, m);
    rec.posterior = cache.posterior(evidence, m);
    rec.focus_state = focus_for(net, m, rec.posterior, config);
    rec.overall_impact = distance(metric, rec.posterior, rec.prior);
    for (NodeIndex e : significant) {
      if (d_separated(net, m, e, without(observed, e))) continue;
      const Distribution& retracted = cache.posterior(evidence.without(e), m);
      ImpactRecord r =
          make_record(net, *evidence.find(e), rec.posterior, retracted, rec.prior, metric);
      r.significant = true;
      rec.effects.push_back(std::move(r));
    }
    sort_by_impact(rec.effects);
    report.level2_3.push_back(std::move(rec));
  }
  return report;
}

std::vector<ExplanationReport> explain(const Network& net, const EvidenceSet& evidence,
                                       std::span<const NodeIndex> targets,
                                       const ExplainConfig& config) {
  validate(config, net);
  if (evidence.empty()) throw Error(ErrorCode::kInvalidEvidence, "evidence required");
  if (targets.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one target required");
  for (NodeIndex t : targets) {
    if (t >= net.size()) throw Error(ErrorCode::kUnknownNode, "target index out of range");
    if (evidence.contains(t)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "target '" + net.node(t).id + "' is observed; explain an unobserved node");
    }
  }
  InferenceCache cache(net);
  std::vector<ExplanationReport> reports;
  for (NodeIndex t : targets) reports.push_back(explain_target(cache, net, evidence, t, config));
  return reports;
}

}  // namespace bnx
