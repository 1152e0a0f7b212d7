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

#include "bnx/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bnx/error.hpp"
#include "format.hpp"

namespace bnx {

using json = nlohmann::json;

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kUnknownNode: return "unknown node";
    case ErrorCode::kInvalidEvidence: return "invalid evidence";
    case ErrorCode::kInconsistentEvidence: return "inconsistent evidence";
    case ErrorCode::kMetricUndefined: return "metric undefined";
  }
  return "error";
}

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::kDiscrete ? "discrete" : "binned_continuous";
}

std::optional<std::size_t> NodeSpec::state_index(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

std::size_t bin_value(const NodeSpec& node, double value) {
  if (node.kind != NodeKind::kBinnedContinuous) {
    throw Error(ErrorCode::kInvalidEvidence,
                "node '" + node.id + "' is not continuous; a state name is required");
  }
  const auto& edges = node.bin_edges;
  if (!std::isfinite(value) || value < edges.front() || value > edges.back()) {
    throw Error(ErrorCode::kInvalidEvidence,
                "value " + detail::format_number(value) + " is outside the range [" +
                    detail::format_number(edges.front()) + ", " +
                    detail::format_number(edges.back()) + "] of node '" + node.id + "'");
  }
  // First edge strictly greater than value marks the end of its bin.
  auto it = std::upper_bound(edges.begin(), edges.end(), value);
  std::size_t bin = static_cast<std::size_t>(it - edges.begin());
  std::size_t bins = edges.size() - 1;
  return bin == 0 ? 0 : std::min(bin - 1, bins - 1);
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::kValidation, msg); }

std::vector<std::string> bin_labels(const std::vector<double>& edges) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    bool last = i + 2 == edges.size();
    labels.push_back("[" + detail::format_number(edges[i]) + ", " +
                     detail::format_number(edges[i + 1]) + (last ? "]" : ")"));
  }
  return labels;
}

void validate_states(NodeSpec& n) {
  if (n.kind == NodeKind::kBinnedContinuous) {
    if (n.bin_edges.size() < 3) invalid("node '" + n.id + "' needs at least 2 bins");
    for (double e : n.bin_edges) {
      if (!std::isfinite(e)) invalid("node '" + n.id + "' has a non-finite bin edge");
    }
    for (std::size_t i = 1; i < n.bin_edges.size(); ++i) {
      if (!(n.bin_edges[i] > n.bin_edges[i - 1])) {
        invalid("bin edges of node '" + n.id + "' must be strictly increasing");
      }
    }
    if (n.states.empty()) {
      n.states = bin_labels(n.bin_edges);
    } else if (n.states.size() != n.bin_edges.size() - 1) {
      invalid("node '" + n.id + "' names " + std::to_string(n.states.size()) +
              " states for " + std::to_string(n.bin_edges.size() - 1) + " bins");
    }
  } else {
    if (!n.bin_edges.empty()) invalid("discrete node '" + n.id + "' has bin edges");
    if (n.states.size() < 2) invalid("node '" + n.id + "' needs at least 2 states");
  }
  std::set<std::string> seen;
  for (const auto& s : n.states) {
    if (!seen.insert(s).second) invalid("node '" + n.id + "' repeats state '" + s + "'");
  }
}

void validate_table(NodeSpec& n, std::size_t expected_rows) {
  if (n.cpt.size() != expected_rows) {
    invalid("node '" + n.id + "' has " + std::to_string(n.cpt.size()) + " CPT rows, expected " +
            std::to_string(expected_rows));
  }
  for (std::size_t r = 0; r < n.cpt.size(); ++r) {
    auto& row = n.cpt[r];
    if (row.size() != n.state_count()) {
      invalid("CPT row " + std::to_string(r) + " of node '" + n.id + "' has " +
              std::to_string(row.size()) + " entries, expected " +
              std::to_string(n.state_count()));
    }
    double sum = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0) {
        invalid("CPT row " + std::to_string(r) + " of node '" + n.id +
                "' has a negative or non-finite entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      invalid("CPT row " + std::to_string(r) + " of node '" + n.id + "' sums to " +
              detail::format_number(sum) + " (deviation beyond 1e-6)");
    }
    // Only rescale rows that are off by more than rounding noise so that a
    // serialized network parses back to identical values.
    if (std::abs(sum - 1.0) > 1e-12) {
      for (double& p : row) p /= sum;
    }
  }
}

// Any directed cycle among the nodes not consumed by Kahn's algorithm.
std::vector<NodeIndex> find_cycle(const std::vector<std::vector<NodeIndex>>& parents,
                                  const std::vector<bool>& remaining) {
  std::size_t n = parents.size();
  std::vector<int> color(n, 0);
  std::vector<NodeIndex> stack;
  std::vector<NodeIndex> cycle;
  // Walk parent links; inside the remaining subgraph every node has a
  // remaining parent, so the walk must revisit a node.
  NodeIndex start = 0;
  while (start < n && !remaining[start]) ++start;
  NodeIndex cur = start;
  while (color[cur] == 0) {
    color[cur] = 1;
    stack.push_back(cur);
    NodeIndex next = cur;
    for (NodeIndex p : parents[cur]) {
      if (remaining[p]) {
        next = p;
        break;
      }
    }
    cur = next;
  }
  auto it = std::find(stack.begin(), stack.end(), cur);
  cycle.assign(it, stack.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

Network Network::build(std::string name, std::vector<NodeSpec> nodes) {
  Network net;
  net.name_ = std::move(name);
  std::size_t n = nodes.size();
  if (n == 0) invalid("network has no nodes");

  for (NodeIndex i = 0; i < n; ++i) {
    if (nodes[i].id.empty()) invalid("node " + std::to_string(i) + " has an empty id");
    if (!net.by_id_.emplace(nodes[i].id, i).second) {
      invalid("duplicate node id '" + nodes[i].id + "'");
    }
    if (nodes[i].label.empty()) nodes[i].label = nodes[i].id;
  }
  net.parents_.resize(n);
  net.children_.resize(n);
  for (NodeIndex i = 0; i < n; ++i) {
    validate_states(nodes[i]);
    std::set<NodeIndex> seen;
    for (const auto& pid : nodes[i].parents) {
      auto it = net.by_id_.find(pid);
      if (it == net.by_id_.end()) {
        invalid("node '" + nodes[i].id + "' lists unknown parent '" + pid + "'");
      }
      if (it->second == i) invalid("node '" + nodes[i].id + "' lists itself as a parent");
      if (!seen.insert(it->second).second) {
        invalid("node '" + nodes[i].id + "' lists parent '" + pid + "' twice");
      }
      net.parents_[i].push_back(it->second);
      net.children_[it->second].push_back(i);
    }
  }
  for (auto& c : net.children_) std::sort(c.begin(), c.end());

  // Kahn's algorithm, lowest index first.
  std::vector<std::size_t> indegree(n);
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex i = 0; i < n; ++i) {
    indegree[i] = net.parents_[i].size();
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    NodeIndex v = ready.top();
    ready.pop();
    net.topo_.push_back(v);
    for (NodeIndex c : net.children_[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (net.topo_.size() != n) {
    std::vector<bool> remaining(n, true);
    for (NodeIndex v : net.topo_) remaining[v] = false;
    auto cycle = find_cycle(net.parents_, remaining);
    std::string msg = "cycle detected: ";
    for (NodeIndex v : cycle) msg += nodes[v].id + " -> ";
    msg += nodes[cycle.front()].id;
    invalid(msg);
  }

  for (NodeIndex i = 0; i < n; ++i) {
    std::size_t rows = 1;
    for (NodeIndex p : net.parents_[i]) rows *= nodes[p].state_count();
    validate_table(nodes[i], rows);
  }
  net.nodes_ = std::move(nodes);
  return net;
}

std::optional<NodeIndex> Network::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Network::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::kUnknownNode, "unknown node '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// JSON document

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::kParse, msg); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) malformed(where + ": expected a string");
  return v.get<std::string>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) malformed(where + ": expected a number");
  return v.get<double>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) malformed(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(require_string(e, where));
  return out;
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) malformed(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(require_number(e, where));
  return out;
}

}  // namespace

Network parse_network(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    malformed("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) malformed("network document must be a JSON object");
  if (auto v = doc.find("format_version"); v != doc.end()) {
    if (!v->is_number_integer() || v->get<int>() != kFormatVersion) {
      malformed("unsupported format_version (expected 1)");
    }
  }
  std::string name;
  if (auto v = doc.find("name"); v != doc.end()) name = require_string(*v, "name");
  const json& jnodes = require(doc, "nodes", "network");
  if (!jnodes.is_array()) malformed("'nodes' must be an array");

  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const json& jn = jnodes[i];
    std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object()) malformed(where + ": expected an object");
    NodeSpec n;
    n.id = require_string(require(jn, "id", where), where + ".id");
    where += " ('" + n.id + "')";
    if (auto v = jn.find("label"); v != jn.end()) n.label = require_string(*v, where + ".label");
    std::string kind = "discrete";
    if (auto v = jn.find("kind"); v != jn.end()) kind = require_string(*v, where + ".kind");
    if (kind == "discrete") {
      n.kind = NodeKind::kDiscrete;
      n.states = string_list(require(jn, "states", where), where + ".states");
    } else if (kind == "binned_continuous") {
      n.kind = NodeKind::kBinnedContinuous;
      n.bin_edges = number_list(require(jn, "bin_edges", where), where + ".bin_edges");
      if (auto v = jn.find("states"); v != jn.end()) {
        n.states = string_list(*v, where + ".states");
      }
    } else {
      malformed(where + ": unknown kind '" + kind + "'");
    }
    if (auto v = jn.find("parents"); v != jn.end()) {
      n.parents = string_list(*v, where + ".parents");
    }
    const json& jcpt = require(jn, "cpt", where);
    if (!jcpt.is_array()) malformed(where + ".cpt: expected an array of rows");
    for (const auto& row : jcpt) n.cpt.push_back(number_list(row, where + ".cpt"));
    nodes.push_back(std::move(n));
  }
  return Network::build(std::move(name), std::move(nodes));
}

std::string serialize_network(const Network& net) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["name"] = net.name();
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : net.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["label"] = n.label;
    jn["kind"] = to_string(n.kind);
    if (n.kind == NodeKind::kBinnedContinuous) jn["bin_edges"] = n.bin_edges;
    jn["states"] = n.states;
    jn["parents"] = n.parents;
    jn["cpt"] = n.cpt;
    doc["nodes"].push_back(std::move(jn));
  }
  return doc.dump(2) + "\n";
}

}  // namespace bnx
