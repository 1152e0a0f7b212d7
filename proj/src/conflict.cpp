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

#include <cmath>
#include <vector>

#include "bnx/error.hpp"
#include "bnx/explain.hpp"

namespace bnx {

std::string_view to_string(ConflictCategory category) {
  switch (category) {
    case ConflictCategory::kDominant: return "dominant";
    case ConflictCategory::kConsistent: return "consistent";
    case ConflictCategory::kConflicting: return "conflicting";
    case ConflictCategory::kMixedConsistent: return "mixed_consistent";
    case ConflictCategory::kMixedConflicting: return "mixed_conflicting";
  }
  return "consistent";
}

namespace {

int sign(double v) {
  if (std::abs(v) < kSignTolerance) return 0;
  return v > 0.0 ? 1 : -1;
}

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "delta vectors have mismatched lengths");
  }
}

}  // namespace

Direction direction_of_change(std::span<const double> delta_evidence,
                              std::span<const double> delta_all) {
  check_lengths(delta_evidence, delta_all);
  bool all_same = true;
  bool all_opposite = true;
  for (std::size_t i = 0; i < delta_evidence.size(); ++i) {
    int se = sign(delta_evidence[i]);
    int sa = sign(delta_all[i]);
    if (se == 0 || sa == 0) continue;  // a state that does not move matches both
    if (se == sa) all_opposite = false;
    else all_same = false;
  }
  if (all_same) return Direction::kConsistent;
  if (all_opposite) return Direction::kConflicting;
  return Direction::kMixed;
}

ConflictCategory classify_conflict(const ConflictInputs& in) {
  Direction dir = direction_of_change(in.delta_evidence, in.delta_all);
  if (dir == Direction::kConsistent) {
    return in.impact_evidence > in.impact_all + kDominanceMargin ? ConflictCategory::kDominant
                                              : ConflictCategory::kConsistent;
  }
  if (dir == Direction::kConflicting) return ConflictCategory::kConflicting;

  if (in.state_terms.size() != in.delta_evidence.size()) {
    throw Error(ErrorCode::kInvalidArgument, "state terms do not match the delta vectors");
  }
  double consistent = 0.0;
  double conflicting = 0.0;
  for (std::size_t i = 0; i < in.delta_evidence.size(); ++i) {
    int se = sign(in.delta_evidence[i]);
    int sa = sign(in.delta_all[i]);
    if (se == 0 || sa == 0) continue;
    (se == sa ? consistent : conflicting) += in.state_terms[i];
  }
  double partial_consistent = std::sqrt(consistent) / std::sqrt(2.0);
  double partial_conflicting = std::sqrt(conflicting) / std::sqrt(2.0);
  return partial_consistent > partial_conflicting ? ConflictCategory::kMixedConsistent
                                                  : ConflictCategory::kMixedConflicting;
}

ConflictCategory classify_conflict(const Distribution& posterior, const Distribution& retracted,
                                   const Distribution& prior, Metric metric) {
  if (posterior.size() != retracted.size() || posterior.size() != prior.size()) {
    throw Error(ErrorCode::kInvalidArgument, "distributions over mismatched state spaces");
  }
  std::vector<double> delta_e(posterior.size());
  std::vector<double> delta_all(posterior.size());
  std::vector<double> terms(posterior.size());
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    delta_e[i] = posterior[i] - retracted[i];
    delta_all[i] = posterior[i] - prior[i];
    double d = std::sqrt(posterior[i]) - std::sqrt(retracted[i]);
    terms[i] = d * d;
  }
  return classify_conflict(ConflictInputs{
      .delta_evidence = delta_e,
      .delta_all = delta_all,
      .impact_evidence = distance(metric, posterior, retracted),
      .impact_all = distance(metric, posterior, prior),
      .state_terms = terms,
  });
}

}  // namespace bnx
