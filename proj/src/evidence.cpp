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

#include "bnx/evidence.hpp"

#include <algorithm>

#include <json.hpp>

#include "bnx/error.hpp"
#include "format.hpp"

namespace bnx {

std::string display_value(const ObservedValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  return detail::format_number(std::get<double>(value));
}

namespace {

std::size_t resolve_state(const NodeSpec& node, const ObservedValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) {
    if (auto idx = node.state_index(*s)) return *idx;
    throw Error(ErrorCode::kInvalidEvidence,
                "node '" + node.id + "' has no state '" + *s + "'");
  }
  double v = std::get<double>(value);
  if (node.kind == NodeKind::kBinnedContinuous) return bin_value(node, v);
  // Discrete nodes with numeric state names ("5") accept the bare number.
  if (auto idx = node.state_index(detail::format_number(v))) return *idx;
  throw Error(ErrorCode::kInvalidEvidence, "node '" + node.id +
                                               "' is discrete; no state matches value " +
                                               detail::format_number(v));
}

}  // namespace

EvidenceSet EvidenceSet::resolve(const Network& net,
                                 const std::map<std::string, ObservedValue>& entries) {
  EvidenceSet ev;
  for (const auto& [id, value] : entries) {
    NodeIndex idx = net.index_of(id);
    ev.findings_.push_back({idx, resolve_state(net.node(idx), value), value});
  }
  std::sort(ev.findings_.begin(), ev.findings_.end(),
            [](const Finding& a, const Finding& b) { return a.node < b.node; });
  return ev;
}

EvidenceSet EvidenceSet::from_states(const Network& net,
                                     std::span<const std::pair<NodeIndex, std::size_t>> states) {
  EvidenceSet ev;
  for (auto [node, state] : states) {
    if (node >= net.size()) {
      throw Error(ErrorCode::kUnknownNode, "node index " + std::to_string(node) + " out of range");
    }
    if (state >= net.cardinality(node)) {
      throw Error(ErrorCode::kInvalidEvidence,
                  "state index out of range for node '" + net.node(node).id + "'");
    }
    if (ev.contains(node)) {
      throw Error(ErrorCode::kInvalidEvidence,
                  "node '" + net.node(node).id + "' observed twice");
    }
    ev.findings_.push_back({node, state, net.node(node).states[state]});
    std::sort(ev.findings_.begin(), ev.findings_.end(),
              [](const Finding& a, const Finding& b) { return a.node < b.node; });
  }
  return ev;
}

const Finding* EvidenceSet::find(NodeIndex node) const {
  auto it = std::lower_bound(findings_.begin(), findings_.end(), node,
                             [](const Finding& f, NodeIndex n) { return f.node < n; });
  if (it == findings_.end() || it->node != node) return nullptr;
  return &*it;
}

std::optional<std::size_t> EvidenceSet::state_of(NodeIndex node) const {
  if (const Finding* f = find(node)) return f->state;
  return std::nullopt;
}

EvidenceSet EvidenceSet::without(NodeIndex node) const {
  EvidenceSet out;
  for (const auto& f : findings_) {
    if (f.node != node) out.findings_.push_back(f);
  }
  return out;
}

std::vector<bool> EvidenceSet::observed_mask(std::size_t node_count) const {
  std::vector<bool> mask(node_count, false);
  for (const auto& f : findings_) mask[f.node] = true;
  return mask;
}

EvidenceSet parse_evidence(const Network& net, std::string_view document) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "evidence document must be an object");
  if (auto v = doc.find("format_version"); v != doc.end()) {
    if (!v->is_number_integer() || v->get<int>() != kFormatVersion) {
      throw Error(ErrorCode::kParse, "unsupported format_version (expected 1)");
    }
  }
  auto it = doc.find("evidence");
  if (it == doc.end() || !it->is_object()) {
    throw Error(ErrorCode::kParse, "evidence document needs an 'evidence' object");
  }
  std::map<std::string, ObservedValue> entries;
  for (const auto& [id, value] : it->items()) {
    if (value.is_string()) {
      entries.emplace(id, value.get<std::string>());
    } else if (value.is_number()) {
      entries.emplace(id, value.get<double>());
    } else {
      throw Error(ErrorCode::kParse,
                  "evidence for '" + id + "' must be a state name or a number");
    }
  }
  return EvidenceSet::resolve(net, entries);
}

}  // namespace bnx
