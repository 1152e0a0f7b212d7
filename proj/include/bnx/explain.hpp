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

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnx/evidence.hpp"
#include "bnx/inference.hpp"
#include "bnx/metrics.hpp"
#include "bnx/network.hpp"

namespace bnx {

enum class ConflictCategory {
  kDominant,
  kConsistent,
  kConflicting,
  kMixedConsistent,
  kMixedConflicting,
};

std::string_view to_string(ConflictCategory category);

enum class Direction { kConsistent, kConflicting, kMixed };

/// Per-state deltas smaller than this in magnitude match either sign.
inline constexpr double kSignTolerance = 1e-9;
/// An item dominates only if its impact beats the overall impact by more
/// than this; equal impacts computed along different routes stay Consistent.
inline constexpr double kDominanceMargin = 1e-12;

const std::vector<double>& default_alpha_ladder();

// ---------------------------------------------------------------------------
// Significance threshold

struct ThresholdResult {
  double alpha = 0.0;
  double theta = 0.0;
  Distribution reference_point;  // G
  bool ladder_exhausted = false;
};

/// G = P(T|E) − α(P(T|E) − P(T)), θ = D(P(T|E), G). Requires 0 < α ≤ 1.
ThresholdResult significance_threshold(const Distribution& posterior, const Distribution& prior,
                                       double alpha, Metric metric = Metric::kHellinger);

struct SignificanceSelection {
  std::vector<std::string> significant;  // descending impact, ties by id
  ThresholdResult threshold;
};

/// Walks `ladder` from its first (largest) α and stops as soon as at least
/// ⌈n/2⌉ of the n impacts reach θ. If no α qualifies, the smallest α's
/// selection is returned with ladder_exhausted set.
SignificanceSelection select_significant(const std::map<std::string, double>& impacts,
                                         const Distribution& posterior, const Distribution& prior,
                                         std::span<const double> ladder,
                                         Metric metric = Metric::kHellinger);

// ---------------------------------------------------------------------------
// Conflict analysis

Direction direction_of_change(std::span<const double> delta_evidence,
                              std::span<const double> delta_all);

struct ConflictInputs {
  std::span<const double> delta_evidence;  // P(t|E) − P(t|E∖e)
  std::span<const double> delta_all;       // P(t|E) − P(t)
  double impact_evidence = 0.0;
  double impact_all = 0.0;
  // (√P(t|E) − √P(t|E∖e))² per state; partial impacts are built from these.
  std::span<const double> state_terms;
};

ConflictCategory classify_conflict(const ConflictInputs& in);

/// Convenience form computing deltas, impacts and state terms from the three
/// distributions of one evidence item.
ConflictCategory classify_conflict(const Distribution& posterior, const Distribution& retracted,
                                   const Distribution& prior, Metric metric = Metric::kHellinger);

// ---------------------------------------------------------------------------
// Intermediate variables

enum class IntermediateRule {
  // M lies inside an active simple trail from some e to T given E∖{e}.
  kActiveTrail,
  // M is d-connected to T given E and to some e given E∖{e}.
  kPairwise,
};

std::string_view to_string(IntermediateRule rule);
IntermediateRule parse_intermediate_rule(std::string_view name);

/// Unobserved members of MB(target) that carry information from `significant`
/// to the target, sorted by node id.
std::vector<NodeIndex> select_intermediates(const Network& net, const EvidenceSet& evidence,
                                            NodeIndex target,
                                            std::span<const NodeIndex> significant,
                                            IntermediateRule rule = IntermediateRule::kActiveTrail);

// ---------------------------------------------------------------------------
// Report

struct ImpactRecord {
  std::string evidence_node;
  std::string evidence_label;
  std::string observed_value;
  double impact = 0.0;
  bool significant = false;
  ConflictCategory category = ConflictCategory::kConsistent;
  std::vector<double> per_state_delta;
};

struct IntermediateRecord {
  std::string node;
  std::string label;
  std::vector<std::string> states;
  Distribution prior;
  Distribution posterior;
  std::size_t focus_state = 0;
  double overall_impact = 0.0;
  // Significant evidence d-connected to this node, descending impact on it.
  std::vector<ImpactRecord> effects;

  std::vector<std::string> connected_significant_evidence() const;
  std::map<std::string, ConflictCategory> per_evidence_category() const;
};

struct ExplanationReport {
  std::string target;
  std::string target_label;
  std::vector<std::string> target_states;
  std::size_t target_focus_state = 0;
  Distribution prior;
  Distribution posterior;
  Metric metric = Metric::kHellinger;
  double overall_impact = 0.0;
  ThresholdResult threshold;
  std::vector<ImpactRecord> level1;  // d-connected evidence, descending impact
  std::vector<IntermediateRecord> level2_3;
  std::vector<std::string> skipped_evidence;  // d-separated from the target
  std::vector<std::string> warnings;

  std::vector<const ImpactRecord*> significant() const;
};

struct ExplainConfig {
  std::vector<double> alpha_ladder = default_alpha_ladder();
  Metric metric = Metric::kHellinger;
  std::map<std::string, std::string> focus_states;  // node id -> state name
  IntermediateRule intermediate_rule = IntermediateRule::kActiveTrail;
};

/// Throws kInvalidArgument for a malformed ladder and kUnknownNode /
/// kInvalidArgument for focus overrides that do not name a node and state.
void validate(const ExplainConfig& config, const Network& net);

/// Argmax with ties to the lowest index.
std::size_t argmax_state(const Distribution& d);

/// One independent report per target. Targets must be unobserved and the
/// evidence non-empty.
std::vector<ExplanationReport> explain(const Network& net, const EvidenceSet& evidence,
                                       std::span<const NodeIndex> targets,
                                       const ExplainConfig& config = {});

ExplanationReport explain_target(InferenceCache& cache, const Network& net,
                                 const EvidenceSet& evidence, NodeIndex target,
                                 const ExplainConfig& config);

}  // namespace bnx
