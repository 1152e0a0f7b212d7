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

#include <span>
#include <string_view>

#include "bnx/inference.hpp"

namespace bnx {

enum class Metric { kHellinger, kKullbackLeibler };

std::string_view to_string(Metric metric);
// Accepts "hellinger" and "kl"; throws kInvalidArgument otherwise.
Metric parse_metric(std::string_view name);

/// (1/√2)·√Σ(√p_i − √q_i)². Symmetric, in [0, 1], defined for zero entries.
double hellinger(std::span<const double> p, std::span<const double> q);
double hellinger(const Distribution& p, const Distribution& q);

/// Σ p_i·log10(p_i / q_i) with 0·log(0/q) = 0. Throws kMetricUndefined when
/// some p_i > 0 meets q_i = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const Distribution& p, const Distribution& q);

double distance(Metric metric, const Distribution& p, const Distribution& q);

/// Hellinger restricted to a subset of states, keeping the 1/√2 factor.
double partial_hellinger(std::span<const double> p, std::span<const double> q,
                         std::span<const std::size_t> states);

}  // namespace bnx
