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

#include <algorithm>
#include <cmath>

#include "bnx/error.hpp"
#include "bnx/explain.hpp"

namespace bnx {

const std::vector<double>& default_alpha_ladder() {
  static const std::vector<double> ladder{0.5, 0.45, 0.4,  0.35, 0.3,   0.25, 0.2,
                                          0.15, 0.1, 0.05, 0.01, 0.005, 0.001};
  return ladder;
}

namespace {

void check_ladder(std::span<const double> ladder) {
  if (ladder.empty()) throw Error(ErrorCode::kInvalidArgument, "alpha ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0 && ladder[i] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "alpha values must lie in (0, 1]");
    }
    if (i > 0 && !(ladder[i] < ladder[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "alpha ladder must be strictly decreasing");
    }
  }
}

}  // namespace

ThresholdResult significance_threshold(const Distribution& posterior, const Distribution& prior,
                                       double alpha, Metric metric) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1]");
  }
  if (posterior.size() != prior.size()) {
    throw Error(ErrorCode::kInvalidArgument, "posterior and prior have different state counts");
  }
  ThresholdResult r;
  r.alpha = alpha;
  r.reference_point.node = posterior.node;
  r.reference_point.mass.resize(posterior.size());
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    r.reference_point.mass[i] = posterior[i] - alpha * (posterior[i] - prior[i]);
  }
  r.theta = distance(metric, posterior, r.reference_point);
  return r;
}

SignificanceSelection select_significant(const std::map<std::string, double>& impacts,
                                         const Distribution& posterior, const Distribution& prior,
                                         std::span<const double> ladder, Metric metric) {
  check_ladder(ladder);
  if (impacts.empty()) throw Error(ErrorCode::kInvalidArgument, "no impacts to select from");

  const std::size_t needed = (impacts.size() + 1) / 2;
  SignificanceSelection sel;
  for (double alpha : ladder) {
    sel.threshold = significance_threshold(posterior, prior, alpha, metric);
    sel.significant.clear();
    for (const auto& [id, impact] : impacts) {
      if (impact >= sel.threshold.theta) sel.significant.push_back(id);
    }
    if (sel.significant.size() >= needed) break;
  }
  sel.threshold.ladder_exhausted = sel.significant.size() < needed;
  std::stable_sort(sel.significant.begin(), sel.significant.end(),
                   [&](const std::string& a, const std::string& b) {
                     double ia = impacts.at(a), ib = impacts.at(b);
                     if (ia != ib) return ia > ib;
                     return a < b;
                   });
  return sel;
}

}  // namespace bnx
