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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bnx/network.hpp"

namespace bnx {

/// A state name for discrete nodes, a real value for binned nodes.
using ObservedValue = std::variant<std::string, double>;

std::string display_value(const ObservedValue& value);

struct Finding {
  NodeIndex node = 0;
  std::size_t state = 0;
  ObservedValue raw;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Validated observations, one per node, kept sorted by node index.
class EvidenceSet {
 public:
  EvidenceSet() = default;

  // Throws kUnknownNode for missing nodes and kInvalidEvidence for bad state
  // names, out-of-range values or type mismatches.
  static EvidenceSet resolve(const Network& net,
                             const std::map<std::string, ObservedValue>& entries);

  // Index-level construction for callers that already hold state indices.
  static EvidenceSet from_states(const Network& net,
                                 std::span<const std::pair<NodeIndex, std::size_t>> states);

  std::span<const Finding> findings() const { return findings_; }
  std::size_t size() const { return findings_.size(); }
  bool empty() const { return findings_.empty(); }

  bool contains(NodeIndex node) const { return state_of(node).has_value(); }
  std::optional<std::size_t> state_of(NodeIndex node) const;
  const Finding* find(NodeIndex node) const;

  EvidenceSet without(NodeIndex node) const;

  /// observed[i] is true iff node i carries a finding.
  std::vector<bool> observed_mask(std::size_t node_count) const;

  friend bool operator==(const EvidenceSet&, const EvidenceSet&) = default;

 private:
  std::vector<Finding> findings_;
};

/// Parses `{ "format_version": 1, "evidence": { id: state | number } }`.
EvidenceSet parse_evidence(const Network& net, std::string_view document);

}  // namespace bnx
