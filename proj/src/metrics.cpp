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

#include "bnx/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "bnx/error.hpp"

namespace bnx {

std::string_view to_string(Metric metric) {
  return metric == Metric::kHellinger ? "hellinger" : "kl";
}

Metric parse_metric(std::string_view name) {
  if (name == "hellinger") return Metric::kHellinger;
  if (name == "kl") return Metric::kKullbackLeibler;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + std::string(name) + "' (expected hellinger or kl)");
}

namespace {

void check_same_space(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "distributions over mismatched state spaces (" + std::to_string(p.size()) +
                    " vs " + std::to_string(q.size()) + " states)");
  }
}

void check_same_node(const Distribution& p, const Distribution& q) {
  if (p.node != q.node) {
    throw Error(ErrorCode::kInvalidArgument, "distributions over different nodes ('" + p.node +
                                                 "' vs '" + q.node + "')");
  }
}

}  // namespace

double hellinger(std::span<const double> p, std::span<const double> q) {
  check_same_space(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += d * d;
  }
  // Guard the upper end against rounding in inputs that sum to 1 ± ulp.
  return std::min(1.0, std::sqrt(sum) / std::sqrt(2.0));
}

double hellinger(const Distribution& p, const Distribution& q) {
  check_same_node(p, q);
  return hellinger(std::span<const double>(p.mass), std::span<const double>(q.mass));
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  check_same_space(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw Error(ErrorCode::kMetricUndefined,
                  "KL divergence undefined: state " + std::to_string(i) +
                      " has p > 0 but q = 0");
    }
    sum += p[i] * std::log10(p[i] / q[i]);
  }
  return std::max(0.0, sum);
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  check_same_node(p, q);
  return kl_divergence(std::span<const double>(p.mass), std::span<const double>(q.mass));
}

double distance(Metric metric, const Distribution& p, const Distribution& q) {
  return metric == Metric::kHellinger ? hellinger(p, q) : kl_divergence(p, q);
}

double partial_hellinger(std::span<const double> p, std::span<const double> q,
                         std::span<const std::size_t> states) {
  check_same_space(p, q);
  double sum = 0.0;
  for (std::size_t i : states) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += d * d;
  }
  return std::sqrt(sum) / std::sqrt(2.0);
}

}  // namespace bnx
