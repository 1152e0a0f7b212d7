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

#include <array>
#include <string_view>
#include <vector>

#include "bnx/network.hpp"

namespace bnx {

/// Parents, children and the children's other parents, sorted by index.
std::vector<NodeIndex> markov_blanket(const Network& net, NodeIndex node);
std::vector<std::string> markov_blanket(const Network& net, std::string_view id);

/// ancestors[i] is true iff node i is in `seed` or is an ancestor of it.
std::vector<bool> ancestors_of(const Network& net, const std::vector<bool>& seed);

/// Direction in which an active trail enters a node.
enum class Arrival : unsigned char {
  kFromChild = 0,   // travelling against an edge: node -> previous
  kFromParent = 1,  // travelling along an edge: previous -> node
};

/// Result of a Bayes-ball sweep: visited[node][arrival] marks every (node,
/// direction) pair reachable from the source along an active trail, and
/// via[node][arrival] lists the neighbours it was entered from.
struct Reachability {
  std::vector<std::array<bool, 2>> visited;
  std::vector<std::array<std::vector<NodeIndex>, 2>> via;

  bool reached(NodeIndex n) const { return visited[n][0] || visited[n][1]; }
  bool reached(NodeIndex n, Arrival a) const {
    return visited[n][static_cast<int>(a)];
  }
};

/// Linear-time reachability over (node, arrival) pairs. Nodes marked in
/// `sinks` may be reached but are never passed through; the source is always
/// treated as a sink once left.
Reachability active_reach(const Network& net, NodeIndex source,
                          const std::vector<bool>& observed,
                          const std::vector<bool>& sinks = {});

/// True iff every trail between x and y is blocked by `observed`.
bool d_separated(const Network& net, NodeIndex x, NodeIndex y,
                 const std::vector<bool>& observed);
bool d_separated(const Network& net, std::string_view x, std::string_view y,
                 const std::vector<std::string>& observed);

}  // namespace bnx
