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

#include "explain_service.hpp"

#include <mutex>

#include <httplib.h>
#include <json.hpp>

namespace bnx::service {

using json = nlohmann::ordered_json;

namespace {

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { bnx_string_free(p); }
};

HttpResponse json_response(int status, std::string body) { return {status, std::move(body)}; }

HttpResponse not_found(const std::string& id) {
  return json_response(404, error_body(BNX_ERR_INVALID_ARGUMENT, "unknown network '" + id + "'"));
}

}  // namespace

LoadResult load_network(std::string_view document) {
  LoadResult r;
  bnx_network* raw = nullptr;
  r.status = bnx_network_parse(document.data(), document.size(), &raw);
  if (r.status != BNX_OK) {
    r.message = bnx_last_error();
    return r;
  }
  r.handle = NetworkHandle(raw, [](const bnx_network* n) {
    bnx_network_free(const_cast<bnx_network*>(n));
  });
  return r;
}

std::string NetworkRegistry::add(NetworkHandle net) {
  std::string id = "net-" + std::to_string(next_id_.fetch_add(1));
  std::unique_lock lock(mutex_);
  networks_.emplace(id, std::move(net));
  return id;
}

NetworkHandle NetworkRegistry::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = networks_.find(id);
  return it == networks_.end() ? nullptr : it->second;
}

bool NetworkRegistry::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  return networks_.erase(id) > 0;
}

std::size_t NetworkRegistry::size() const {
  std::shared_lock lock(mutex_);
  return networks_.size();
}

int http_status_for(bnx_status status) {
  switch (status) {
    case BNX_OK: return 200;
    case BNX_ERR_PARSE: return 400;
    case BNX_ERR_INCONSISTENT_EVIDENCE: return 409;
    case BNX_ERR_INVALID_ARGUMENT:
    case BNX_ERR_VALIDATION:
    case BNX_ERR_UNKNOWN_NODE:
    case BNX_ERR_INVALID_EVIDENCE:
    case BNX_ERR_METRIC_UNDEFINED: return 422;
    case BNX_ERR_INTERNAL: return 500;
  }
  return 500;
}

std::string error_body(bnx_status status, std::string_view message) {
  json body;
  body["error"] = {{"code", bnx_status_name(status)}, {"message", message}};
  return body.dump();
}

HttpResponse ExplainService::register_network(std::string_view body) {
  LoadResult loaded = load_network(body);
  if (loaded.status != BNX_OK) {
    return json_response(http_status_for(loaded.status), error_body(loaded.status, loaded.message));
  }
  std::string name;
  {
    OwnedString meta;
    bnx_network_describe(loaded.handle.get(), &meta.p);
    name = json::parse(meta.p).at("name").get<std::string>();
  }
  std::string id = registry_.add(std::move(loaded.handle));
  json out;
  out["id"] = id;
  out["name"] = name;
  return json_response(201, out.dump());
}

HttpResponse ExplainService::describe_network(const std::string& id) const {
  NetworkHandle net = registry_.get(id);
  if (!net) return not_found(id);
  OwnedString meta;
  bnx_status st = bnx_network_describe(net.get(), &meta.p);
  if (st != BNX_OK) return json_response(http_status_for(st), error_body(st, bnx_last_error()));
  json out;
  out["id"] = id;
  json parsed = json::parse(meta.p);
  for (auto& [k, v] : parsed.items()) out[k] = v;
  return json_response(200, out.dump());
}

HttpResponse ExplainService::explain(const std::string& id, std::string_view body) const {
  NetworkHandle net = registry_.get(id);
  if (!net) return not_found(id);
  OwnedString result;
  bnx_status st = bnx_explain(net.get(), body.data(), body.size(), &result.p);
  if (st != BNX_OK) return json_response(http_status_for(st), error_body(st, bnx_last_error()));
  return json_response(200, result.p);
}

HttpResponse ExplainService::evict(const std::string& id) {
  if (!registry_.remove(id)) return not_found(id);
  return json_response(200, json{{"id", id}, {"evicted", true}}.dump());
}

void ExplainService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/v1/networks", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, register_network(req.body));
  });
  server.Get(R"(/v1/networks/([^/]+))",
             [this, send](const httplib::Request& req, httplib::Response& res) {
               send(res, describe_network(req.matches[1]));
             });
  server.Delete(R"(/v1/networks/([^/]+))",
                [this, send](const httplib::Request& req, httplib::Response& res) {
                  send(res, evict(req.matches[1]));
                });
  server.Post(R"(/v1/networks/([^/]+)/explain)",
              [this, send](const httplib::Request& req, httplib::Response& res) {
                send(res, explain(req.matches[1], req.body));
              });
}

}  // namespace bnx::service
