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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bnx {

using NodeIndex = std::size_t;

enum class NodeKind { kDiscrete, kBinnedContinuous };

std::string_view to_string(NodeKind kind);

/// One row per parent configuration, last listed parent varying fastest; each
/// row holds one probability per child state.
using ConditionalTable = std::vector<std::vector<double>>;

struct NodeSpec {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::kDiscrete;
  // For binned nodes the state names are derived from the edges ("[0, 5)",
  // "[5, 10]") when the model file does not name them.
  std::vector<std::string> states;
  std::vector<double> bin_edges;
  std::vector<std::string> parents;
  ConditionalTable cpt;

  std::size_t state_count() const { return states.size(); }
  std::optional<std::size_t> state_index(std::string_view name) const;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Index of the bin holding `value`. Bins are half-open [lo, hi) except the
/// last, which is closed.
std::size_t bin_value(const NodeSpec& node, double value);

/// Validated, immutable DAG. Construct through Network::build or
/// parse_network; all accessors are const and thread-safe.
class Network {
 public:
  // Throws bnx::Error (kValidation / kUnknownNode) on any invariant breach and
  // renormalizes CPT rows that sum to 1 within 1e-6.
  static Network build(std::string name, std::vector<NodeSpec> nodes);

  const std::string& name() const { return name_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const NodeSpec> nodes() const { return nodes_; }
  const NodeSpec& node(NodeIndex i) const { return nodes_.at(i); }

  std::optional<NodeIndex> find(std::string_view id) const;
  // Throws kUnknownNode.
  NodeIndex index_of(std::string_view id) const;

  std::span<const NodeIndex> parents(NodeIndex i) const { return parents_[i]; }
  std::span<const NodeIndex> children(NodeIndex i) const { return children_[i]; }
  std::span<const NodeIndex> topological_order() const { return topo_; }

  std::size_t cardinality(NodeIndex i) const { return nodes_[i].state_count(); }

  bool operator==(const Network& other) const {
    return name_ == other.name_ && nodes_ == other.nodes_;
  }

 private:
  Network() = default;

  std::string name_;
  std::vector<NodeSpec> nodes_;
  std::vector<std::vector<NodeIndex>> parents_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<NodeIndex> topo_;
  std::unordered_map<std::string, NodeIndex> by_id_;
};

inline constexpr double kRowSumTolerance = 1e-6;
inline constexpr int kFormatVersion = 1;

Network parse_network(std::string_view document);
std::string serialize_network(const Network& net);

}  // namespace bnx
