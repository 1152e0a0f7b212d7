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
#include <utility>
#include <vector>

#include "bnx/evidence.hpp"
#include "bnx/network.hpp"

namespace bnx {

/// Normalized histogram over one node's states, in the node's state order.
struct Distribution {
  std::string node;
  std::vector<double> mass;

  std::size_t size() const { return mass.size(); }
  double operator[](std::size_t i) const { return mass[i]; }

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Exact marginal P(query | evidence) by variable elimination with a greedy
/// min-degree ordering over the query's relevant subnetwork. Intermediate
/// factors are rescaled, so only an exactly zero P(evidence) throws
/// kInconsistentEvidence.
Distribution posterior(const Network& net, const EvidenceSet& evidence, NodeIndex query);

/// Same, with an explicit elimination order. Nodes outside the relevant
/// subnetwork are ignored; relevant nodes missing from `order` are eliminated
/// afterwards in index order.
Distribution posterior(const Network& net, const EvidenceSet& evidence, NodeIndex query,
                       std::span<const NodeIndex> order);

/// Memoizes posteriors by (evidence, query) for the lifetime of one request.
class InferenceCache {
 public:
  explicit InferenceCache(const Network& net) : net_(&net) {}

  const Distribution& posterior(const EvidenceSet& evidence, NodeIndex query);
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  using Key = std::pair<std::vector<std::pair<NodeIndex, std::size_t>>, NodeIndex>;

  const Network* net_;
  std::map<Key, Distribution> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// The |E| + 2 distributions that every impact measure consumes.
struct QueryBundle {
  Distribution joint_posterior;
  std::map<std::string, Distribution> retracted;  // by evidence node id
  Distribution prior;
};

/// Requires a non-empty evidence set that does not observe `query`.
QueryBundle query_bundle(const Network& net, const EvidenceSet& evidence, NodeIndex query);
QueryBundle query_bundle(InferenceCache& cache, const Network& net,
                         const EvidenceSet& evidence, NodeIndex query);

}  // namespace bnx
