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

#include "bnx/graph.hpp"

#include <algorithm>
#include <set>

#include "bnx/error.hpp"

namespace bnx {

std::vector<NodeIndex> markov_blanket(const Network& net, NodeIndex node) {
  std::set<NodeIndex> mb;
  for (NodeIndex p : net.parents(node)) mb.insert(p);
  for (NodeIndex c : net.children(node)) {
    mb.insert(c);
    for (NodeIndex cp : net.parents(c)) mb.insert(cp);
  }
  mb.erase(node);
  return {mb.begin(), mb.end()};
}

std::vector<std::string> markov_blanket(const Network& net, std::string_view id) {
  std::vector<std::string> out;
  for (NodeIndex i : markov_blanket(net, net.index_of(id))) out.push_back(net.node(i).id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> ancestors_of(const Network& net, const std::vector<bool>& seed) {
  std::vector<bool> anc(net.size(), false);
  std::vector<NodeIndex> stack;
  for (NodeIndex i = 0; i < net.size(); ++i) {
    if (i < seed.size() && seed[i]) {
      anc[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex p : net.parents(v)) {
      if (!anc[p]) {
        anc[p] = true;
        stack.push_back(p);
      }
    }
  }
  return anc;
}

Reachability active_reach(const Network& net, NodeIndex source,
                          const std::vector<bool>& observed,
                          const std::vector<bool>& sinks) {
  const std::size_t n = net.size();
  auto is_observed = [&](NodeIndex v) { return v < observed.size() && observed[v]; };
  auto is_sink = [&](NodeIndex v) { return v == source || (v < sinks.size() && sinks[v]); };
  const std::vector<bool> activates = ancestors_of(net, observed);

  Reachability r;
  r.visited.assign(n, {false, false});
  r.via.assign(n, {});
  std::vector<std::pair<NodeIndex, Arrival>> stack;
  auto push = [&](NodeIndex from, NodeIndex v, Arrival a) {
    auto& preds = r.via[v][static_cast<int>(a)];
    if (std::find(preds.begin(), preds.end(), from) == preds.end()) preds.push_back(from);
    auto& slot = r.visited[v][static_cast<int>(a)];
    if (!slot) {
      slot = true;
      stack.emplace_back(v, a);
    }
  };

  r.visited[source] = {true, true};
  for (NodeIndex p : net.parents(source)) push(source, p, Arrival::kFromChild);
  for (NodeIndex c : net.children(source)) push(source, c, Arrival::kFromParent);

  while (!stack.empty()) {
    auto [v, arrival] = stack.back();
    stack.pop_back();
    if (is_sink(v)) continue;
    if (arrival == Arrival::kFromChild) {
      if (is_observed(v)) continue;
      for (NodeIndex p : net.parents(v)) push(v, p, Arrival::kFromChild);
      for (NodeIndex c : net.children(v)) push(v, c, Arrival::kFromParent);
    } else {
      if (!is_observed(v)) {
        for (NodeIndex c : net.children(v)) push(v, c, Arrival::kFromParent);
      }
      // Converging connection: open iff v or a descendant is observed.
      if (activates[v]) {
        for (NodeIndex p : net.parents(v)) push(v, p, Arrival::kFromChild);
      }
    }
  }
  return r;
}

bool d_separated(const Network& net, NodeIndex x, NodeIndex y,
                 const std::vector<bool>& observed) {
  if (x >= net.size() || y >= net.size()) {
    throw Error(ErrorCode::kUnknownNode, "node index out of range");
  }
  if (x == y) throw Error(ErrorCode::kInvalidArgument, "d-separation needs two distinct nodes");
  return !active_reach(net, x, observed).reached(y);
}

bool d_separated(const Network& net, std::string_view x, std::string_view y,
                 const std::vector<std::string>& observed) {
  std::vector<bool> mask(net.size(), false);
  for (const auto& id : observed) mask[net.index_of(id)] = true;
  return d_separated(net, net.index_of(x), net.index_of(y), mask);
}

}  // namespace bnx
