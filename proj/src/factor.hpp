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
#include <span>
#include <vector>

#include "bnx/evidence.hpp"
#include "bnx/network.hpp"

namespace bnx::detail {

// Table over `vars` (ascending node index), last variable varying fastest.
struct Factor {
  std::vector<NodeIndex> vars;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  bool mentions(NodeIndex v) const;
};

// CPT of `node` with every observed variable fixed to its state and removed
// from the scope.
Factor cpt_factor(const Network& net, NodeIndex node, const EvidenceSet& evidence);

Factor multiply(std::span<const Factor* const> factors);
Factor sum_out(const Factor& f, NodeIndex var);

}  // namespace bnx::detail
