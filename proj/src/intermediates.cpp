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
#include <optional>

#include "bnx/error.hpp"
#include "bnx/explain.hpp"
#include "bnx/graph.hpp"

namespace bnx {

std::string_view to_string(IntermediateRule rule) {
  return rule == IntermediateRule::kActiveTrail ? "active_trail" : "pairwise";
}

IntermediateRule parse_intermediate_rule(std::string_view name) {
  if (name == "active_trail") return IntermediateRule::kActiveTrail;
  if (name == "pairwise") return IntermediateRule::kPairwise;
  throw Error(ErrorCode::kInvalidArgument, "unknown intermediate rule '" + std::string(name) +
                                               "' (expected active_trail or pairwise)");
}

namespace {

// M sits on an active walk e ⇝ M ⇝ T: reach M from e without crossing T,
// reach M from T without crossing e, and the two halves meet at M over two
// different neighbours in an open connection.
bool on_active_walk(const Reachability& from_e, const Reachability& from_t,
                    const std::vector<bool>& activates, NodeIndex m) {
  for (Arrival a : {Arrival::kFromChild, Arrival::kFromParent}) {
    if (!from_e.reached(m, a)) continue;
    for (Arrival b : {Arrival::kFromChild, Arrival::kFromParent}) {
      if (!from_t.reached(m, b)) continue;
      bool collider = a == Arrival::kFromParent && b == Arrival::kFromParent;
      // m is unobserved, so a serial or diverging junction is always open.
      if (collider && !activates[m]) continue;
      const auto& in = from_e.via[m][static_cast<int>(a)];
      const auto& out = from_t.via[m][static_cast<int>(b)];
      // Entering and leaving over the same edge only retraces the walk.
      if (in.size() > 1 || out.size() > 1 || (!in.empty() && !out.empty() && in[0] != out[0])) {
        return true;
      }
    }
  }
  return false;
}

// Expansion budget for the exact search below; past it the walk test stands.
constexpr std::size_t kTrailBudget = 200000;

// Depth-first search for a simple trail e ... m ... target that is active
// given `observed`. Returns nullopt when the budget runs out.
class TrailSearch {
 public:
  TrailSearch(const Network& net, const std::vector<bool>& observed,
              const std::vector<bool>& activates, NodeIndex target)
      : net_(net), observed_(observed), activates_(activates), target_(target),
        on_path_(net.size(), false) {}

  std::optional<bool> through(NodeIndex e, NodeIndex m) {
    m_ = m;
    steps_ = 0;
    std::fill(on_path_.begin(), on_path_.end(), false);
    on_path_[e] = true;
    bool found = false;
    for (NodeIndex p : net_.parents(e)) found = found || step(p, Arrival::kFromChild, false);
    for (NodeIndex c : net_.children(e)) found = found || step(c, Arrival::kFromParent, false);
    if (!found && steps_ > kTrailBudget) return std::nullopt;
    return found;
  }

 private:
  bool step(NodeIndex v, Arrival arrival, bool passed) {
    if (on_path_[v] || ++steps_ > kTrailBudget) return false;
    if (v == target_) return passed;
    passed = passed || v == m_;
    on_path_[v] = true;
    bool found = false;
    // Leaving towards a parent after arriving from one makes v a collider.
    bool via_parent_open = arrival == Arrival::kFromParent ? activates_[v] : !observed_[v];
    bool via_child_open = !observed_[v];
    if (via_parent_open) {
      for (NodeIndex p : net_.parents(v)) {
        if ((found = step(p, Arrival::kFromChild, passed))) break;
      }
    }
    if (!found && via_child_open) {
      for (NodeIndex c : net_.children(v)) {
        if ((found = step(c, Arrival::kFromParent, passed))) break;
      }
    }
    on_path_[v] = false;
    return found;
  }

  const Network& net_;
  const std::vector<bool>& observed_;
  const std::vector<bool>& activates_;
  NodeIndex target_;
  NodeIndex m_ = 0;
  std::size_t steps_ = 0;
  std::vector<bool> on_path_;
};

bool is_parent(const Network& net, NodeIndex p, NodeIndex c) {
  auto ps = net.parents(c);
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

}  // namespace

std::vector<NodeIndex> select_intermediates(const Network& net, const EvidenceSet& evidence,
                                            NodeIndex target,
                                            std::span<const NodeIndex> significant,
                                            IntermediateRule rule) {
  if (evidence.contains(target)) {
    throw Error(ErrorCode::kInvalidArgument, "target '" + net.node(target).id + "' is observed");
  }
  const std::vector<bool> observed = evidence.observed_mask(net.size());
  std::vector<NodeIndex> candidates;
  for (NodeIndex m : markov_blanket(net, target)) {
    if (!observed[m]) candidates.push_back(m);
  }

  std::vector<bool> chosen(net.size(), false);
  if (rule == IntermediateRule::kPairwise) {
    for (NodeIndex m : candidates) {
      if (d_separated(net, m, target, observed)) continue;
      for (NodeIndex e : significant) {
        std::vector<bool> rest = observed;
        rest[e] = false;
        if (!d_separated(net, m, e, rest)) {
          chosen[m] = true;
          break;
        }
      }
    }
  } else {
    for (NodeIndex e : significant) {
      std::vector<bool> rest = observed;
      rest[e] = false;
      const std::vector<bool> activates = ancestors_of(net, rest);
      std::vector<bool> stop_at_target(net.size(), false);
      stop_at_target[target] = true;
      std::vector<bool> stop_at_evidence(net.size(), false);
      stop_at_evidence[e] = true;
      Reachability from_e = active_reach(net, e, rest, stop_at_target);
      Reachability from_t = active_reach(net, target, rest, stop_at_evidence);
      TrailSearch search(net, rest, activates, target);
      for (NodeIndex m : candidates) {
        if (chosen[m]) continue;
        if (is_parent(net, m, target)) {
          // e ... m -> T is open whichever way the trail enters m.
          chosen[m] = from_e.reached(m);
        } else if (is_parent(net, target, m)) {
          // e ... m <- T is a collider at m unless the trail leaves e-side
          // through one of m's children.
          chosen[m] = from_e.reached(m, Arrival::kFromChild) ||
                      (from_e.reached(m) && activates[m]);
        } else if (on_active_walk(from_e, from_t, activates, m)) {
          // Further out the glued halves may revisit a node.
          chosen[m] = search.through(e, m).value_or(true);
        }
      }
    }
  }

  std::vector<NodeIndex> out;
  for (NodeIndex m : candidates) {
    if (chosen[m]) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [&](NodeIndex a, NodeIndex b) {
    return net.node(a).id < net.node(b).id;
  });
  return out;
}

}  // namespace bnx
