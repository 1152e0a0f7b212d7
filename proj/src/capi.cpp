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

#include "bnx/bnx.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "bnx/error.hpp"
#include "bnx/explain.hpp"
#include "bnx/network.hpp"
#include "bnx/render.hpp"
#include "bnx/report_json.hpp"

struct bnx_network {
  bnx::Network net;
};

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

thread_local std::string g_last_error;

bnx_status status_of(bnx::ErrorCode code) {
  switch (code) {
    case bnx::ErrorCode::kInvalidArgument: return BNX_ERR_INVALID_ARGUMENT;
    case bnx::ErrorCode::kParse: return BNX_ERR_PARSE;
    case bnx::ErrorCode::kValidation: return BNX_ERR_VALIDATION;
    case bnx::ErrorCode::kUnknownNode: return BNX_ERR_UNKNOWN_NODE;
    case bnx::ErrorCode::kInvalidEvidence: return BNX_ERR_INVALID_EVIDENCE;
    case bnx::ErrorCode::kInconsistentEvidence: return BNX_ERR_INCONSISTENT_EVIDENCE;
    case bnx::ErrorCode::kMetricUndefined: return BNX_ERR_METRIC_UNDEFINED;
  }
  return BNX_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <typename F>
bnx_status guarded(F&& body) {
  try {
    body();
    return BNX_OK;
  } catch (const bnx::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    g_last_error = std::string("malformed request: ") + e.what();
    return BNX_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BNX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BNX_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw bnx::Error(bnx::ErrorCode::kInvalidArgument, what);
}

[[noreturn]] void malformed(const std::string& msg) {
  throw bnx::Error(bnx::ErrorCode::kParse, msg);
}

std::map<std::string, std::string> string_map(const json& v, const char* field) {
  if (!v.is_object()) malformed(std::string("'") + field + "' must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, s] : v.items()) {
    if (!s.is_string()) malformed(std::string("'") + field + "' values must be strings");
    out.emplace(k, s.get<std::string>());
  }
  return out;
}

struct Request {
  bnx::EvidenceSet evidence;
  std::vector<bnx::NodeIndex> targets;
  bnx::ExplainConfig explain;
  bnx::RenderConfig render;
};

Request parse_request(const bnx::Network& net, const char* text, size_t len) {
  json doc;
  try {
    doc = json::parse(text, text + len);
  } catch (const json::parse_error& e) {
    malformed("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) malformed("request must be a JSON object");

  Request req;
  auto ev = doc.find("evidence");
  if (ev == doc.end() || ev->is_null() || (ev->is_object() && ev->empty())) {
    throw bnx::Error(bnx::ErrorCode::kInvalidEvidence, "evidence required");
  }
  if (!ev->is_object()) malformed("'evidence' must be an object");
  req.evidence = bnx::parse_evidence(net, json{{"evidence", *ev}}.dump());

  auto targets = doc.find("targets");
  if (targets == doc.end() || !targets->is_array() || targets->empty()) {
    throw bnx::Error(bnx::ErrorCode::kInvalidArgument, "at least one target required");
  }
  for (const auto& t : *targets) {
    if (!t.is_string()) malformed("'targets' must be an array of node ids");
    req.targets.push_back(net.index_of(t.get<std::string>()));
  }
  if (auto lv = doc.find("level"); lv != doc.end()) {
    if (!lv->is_number_integer()) malformed("'level' must be an integer");
    req.render.level = lv->get<int>();
  }

  if (auto cfg = doc.find("config"); cfg != doc.end() && !cfg->is_null()) {
    if (!cfg->is_object()) malformed("'config' must be an object");
    if (auto v = cfg->find("alpha_ladder"); v != cfg->end()) {
      req.explain.alpha_ladder = v->get<std::vector<double>>();
    }
    if (auto v = cfg->find("metric"); v != cfg->end()) {
      req.explain.metric = bnx::parse_metric(v->get<std::string>());
    }
    if (auto v = cfg->find("intermediate_rule"); v != cfg->end()) {
      req.explain.intermediate_rule = bnx::parse_intermediate_rule(v->get<std::string>());
    }
    if (auto v = cfg->find("focus_states"); v != cfg->end()) {
      req.explain.focus_states = string_map(*v, "focus_states");
      req.render.focus_states = req.explain.focus_states;
    }
    if (auto v = cfg->find("percent_precision"); v != cfg->end()) {
      req.render.percent_precision = v->get<int>();
    }
    if (auto v = cfg->find("subject"); v != cfg->end()) req.render.subject = v->get<std::string>();
    if (auto v = cfg->find("reference"); v != cfg->end()) {
      req.render.reference = v->get<std::string>();
    }
    if (auto v = cfg->find("outcome_phrases"); v != cfg->end()) {
      req.render.outcome_phrases = string_map(*v, "outcome_phrases");
    }
  }
  bnx::validate(req.explain, net);
  bnx::validate(req.render, net);
  return req;
}

}  // namespace

extern "C" {

const char* bnx_version(void) { return "1.0.0"; }

const char* bnx_status_name(bnx_status status) {
  switch (status) {
    case BNX_OK: return "ok";
    case BNX_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BNX_ERR_PARSE: return "parse_error";
    case BNX_ERR_VALIDATION: return "validation_error";
    case BNX_ERR_UNKNOWN_NODE: return "unknown_node";
    case BNX_ERR_INVALID_EVIDENCE: return "invalid_evidence";
    case BNX_ERR_INCONSISTENT_EVIDENCE: return "inconsistent_evidence";
    case BNX_ERR_METRIC_UNDEFINED: return "metric_undefined";
    case BNX_ERR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

const char* bnx_last_error(void) { return g_last_error.c_str(); }

bnx_status bnx_network_parse(const char* json_text, size_t len, bnx_network** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto handle = std::make_unique<bnx_network>(
        bnx_network{bnx::parse_network(std::string_view(json_text, len))});
    *out = handle.release();
  });
}

void bnx_network_free(bnx_network* net) { delete net; }

bnx_status bnx_network_describe(const bnx_network* net, char** out_json) {
  return guarded([&] {
    require(net != nullptr && out_json != nullptr, "null argument");
    ojson doc;
    doc["name"] = net->net.name();
    doc["nodes"] = ojson::array();
    for (const auto& n : net->net.nodes()) {
      ojson jn;
      jn["id"] = n.id;
      jn["label"] = n.label;
      jn["kind"] = bnx::to_string(n.kind);
      jn["states"] = n.states;
      if (n.kind == bnx::NodeKind::kBinnedContinuous) jn["bin_edges"] = n.bin_edges;
      jn["parents"] = n.parents;
      doc["nodes"].push_back(std::move(jn));
    }
    *out_json = copy_out(doc.dump());
  });
}

bnx_status bnx_network_serialize(const bnx_network* net, char** out_json) {
  return guarded([&] {
    require(net != nullptr && out_json != nullptr, "null argument");
    *out_json = copy_out(bnx::serialize_network(net->net));
  });
}

bnx_status bnx_explain(const bnx_network* net, const char* request_json, size_t len,
                       char** out_json) {
  return guarded([&] {
    require(net != nullptr && request_json != nullptr && out_json != nullptr, "null argument");
    Request req = parse_request(net->net, request_json, len);
    auto reports = bnx::explain(net->net, req.evidence, req.targets, req.explain);
    ojson doc;
    doc["reports"] = ojson::array();
    doc["rendered"] = ojson::array();
    for (const auto& r : reports) {
      doc["reports"].push_back(bnx::to_json(r));
      bnx::RenderedExplanation rendered = bnx::render(r, req.render);
      doc["rendered"].push_back({{"target", r.target},
                                 {"text", rendered.text},
                                 {"structured", std::move(rendered.structured)}});
    }
    *out_json = copy_out(doc.dump());
  });
}

void bnx_string_free(char* s) { std::free(s); }

}  // extern "C"
