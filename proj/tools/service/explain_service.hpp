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

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "bnx/bnx.h"

namespace httplib {
class Server;
}

namespace bnx::service {

using NetworkHandle = std::shared_ptr<const bnx_network>;

/// Parses a document into a shared handle; throws nothing, reports through
/// the status and message.
struct LoadResult {
  bnx_status status = BNX_OK;
  std::string message;
  NetworkHandle handle;
};
LoadResult load_network(std::string_view document);

/// In-memory id -> network map. An id either maps to a validated network or
/// is absent; handles stay alive for in-flight requests after eviction.
class NetworkRegistry {
 public:
  std::string add(NetworkHandle net);
  NetworkHandle get(const std::string& id) const;
  bool remove(const std::string& id);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, NetworkHandle> networks_;
  std::atomic<unsigned long> next_id_{1};
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

int http_status_for(bnx_status status);
std::string error_body(bnx_status status, std::string_view message);

/// The /v1/ HTTP API. Handlers are plain functions of (id, body) so they can
/// be exercised without a socket; mount() wires them into a server.
class ExplainService {
 public:
  HttpResponse register_network(std::string_view body);
  HttpResponse describe_network(const std::string& id) const;
  HttpResponse explain(const std::string& id, std::string_view body) const;
  HttpResponse evict(const std::string& id);

  NetworkRegistry& registry() { return registry_; }

  void mount(httplib::Server& server);

 private:
  NetworkRegistry registry_;
};

}  // namespace bnx::service
