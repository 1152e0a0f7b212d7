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

#include "bnx/inference.hpp"

#include <algorithm>
#include <set>

#include "bnx/error.hpp"
#include "bnx/graph.hpp"
#include "factor.hpp"

namespace bnx {

namespace {

using detail::Factor;

// Ancestors of the query and of every observed node; the rest of the network
// sums to one and can be dropped.
std::vector<bool> relevant_nodes(const Network& net, const EvidenceSet& evidence,
                                 NodeIndex query) {
  std::vector<bool> seed = evidence.observed_mask(net.size());
  seed[query] = true;
  return ancestors_of(net, seed);
}

NodeIndex pick_min_degree(const std::vector<Factor>& factors, const std::set<NodeIndex>& pending) {
  NodeIndex best = *pending.begin();
  std::size_t best_degree = static_cast<std::size_t>(-1);
  for (NodeIndex v : pending) {
    std::set<NodeIndex> neighbours;
    for (const auto& f : factors) {
      if (f.mentions(v)) neighbours.insert(f.vars.begin(), f.vars.end());
    }
    std::size_t degree = neighbours.empty() ? 0 : neighbours.size() - 1;
    if (degree < best_degree) {
      best = v;
      best_degree = degree;
    }
  }
  return best;
}

void eliminate(std::vector<Factor>& factors, NodeIndex var) {
  std::vector<const Factor*> touching;
  std::vector<Factor> rest;
  for (const auto& f : factors) {
    if (f.mentions(var)) touching.push_back(&f);
  }
  if (touching.empty()) return;
  Factor merged = detail::sum_out(detail::multiply(touching), var);
  // Rescale so long products of small probabilities cannot underflow; only
  // the normalized posterior is returned.
  double peak = *std::max_element(merged.values.begin(), merged.values.end());
  if (peak > 0.0) {
    for (double& v : merged.values) v /= peak;
  }
  for (auto& f : factors) {
    if (!f.mentions(var)) rest.push_back(std::move(f));
  }
  rest.push_back(std::move(merged));
  factors = std::move(rest);
}

Distribution run(const Network& net, const EvidenceSet& evidence, NodeIndex query,
                 const std::span<const NodeIndex>* order) {
  if (query >= net.size()) throw Error(ErrorCode::kUnknownNode, "query node out of range");
  const NodeSpec& qspec = net.node(query);
  Distribution result{qspec.id, std::vector<double>(qspec.state_count(), 0.0)};

  std::vector<bool> relevant = relevant_nodes(net, evidence, query);
  std::vector<Factor> factors;
  std::set<NodeIndex> pending;
  for (NodeIndex v = 0; v < net.size(); ++v) {
    if (!relevant[v]) continue;
    factors.push_back(detail::cpt_factor(net, v, evidence));
    if (v != query && !evidence.contains(v)) pending.insert(v);
  }

  if (order != nullptr) {
    for (NodeIndex v : *order) {
      if (pending.erase(v) > 0) eliminate(factors, v);
    }
  }
  while (!pending.empty()) {
    NodeIndex v = order != nullptr ? *pending.begin() : pick_min_degree(factors, pending);
    pending.erase(v);
    eliminate(factors, v);
  }

  std::vector<const Factor*> all;
  for (const auto& f : factors) all.push_back(&f);
  Factor joint = detail::multiply(all);

  double z = 0.0;
  if (auto observed = evidence.state_of(query)) {
    // The query is fixed by the evidence; joint is a scalar proportional to P(E).
    z = joint.values.empty() ? 0.0 : joint.values[0];
    if (z > 0.0) result.mass[*observed] = 1.0;
  } else {
    for (std::size_t s = 0; s < joint.values.size(); ++s) {
      result.mass[s] = joint.values[s];
      z += joint.values[s];
    }
    if (z > 0.0) {
      for (double& p : result.mass) p /= z;
    }
  }
  if (!(z > 0.0)) {
    throw Error(ErrorCode::kInconsistentEvidence, "inconsistent evidence: P(E) = 0");
  }
  return result;
}

}  // namespace

Distribution posterior(const Network& net, const EvidenceSet& evidence, NodeIndex query) {
  return run(net, evidence, query, nullptr);
}

Distribution posterior(const Network& net, const EvidenceSet& evidence, NodeIndex query,
                       std::span<const NodeIndex> order) {
  return run(net, evidence, query, &order);
}

const Distribution& InferenceCache::posterior(const EvidenceSet& evidence, NodeIndex query) {
  Key key;
  for (const auto& f : evidence.findings()) key.first.emplace_back(f.node, f.state);
  key.second = query;
  if (auto it = entries_.find(key); it != entries_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  return entries_.emplace(std::move(key), bnx::posterior(*net_, evidence, query)).first->second;
}

QueryBundle query_bundle(InferenceCache& cache, const Network& net,
                         const EvidenceSet& evidence, NodeIndex query) {
  if (evidence.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "evidence required");
  }
  if (evidence.contains(query)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target '" + net.node(query).id + "' is observed");
  }
  QueryBundle bundle;
  bundle.joint_posterior = cache.posterior(evidence, query);
  for (const auto& f : evidence.findings()) {
    const std::string& id = net.node(f.node).id;
    try {
      bundle.retracted.emplace(id, cache.posterior(evidence.without(f.node), query));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (after retracting '" + id + "')");
    }
  }
  bundle.prior = cache.posterior(EvidenceSet{}, query);
  return bundle;
}

QueryBundle query_bundle(const Network& net, const EvidenceSet& evidence, NodeIndex query) {
  InferenceCache cache(net);
  return query_bundle(cache, net, evidence, query);
}

}  // namespace bnx
