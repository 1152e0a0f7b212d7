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

#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "bnx/bnx.h"
#include "explain_service.hpp"

namespace bnx::service {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string network;
  std::string evidence;
  std::vector<std::string> targets;
  int level = 3;
  std::string format = "text";
  std::string alpha_ladder;
  std::string metric = "hellinger";
  std::string intermediate_rule = "active_trail";
  std::vector<std::string> focus_states;
  int percent_precision = 0;
  std::string subject;
  std::string reference;
  bool serve = false;
  int port = 8080;
  std::string host = "127.0.0.1";
};

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(bnx_status st) {
  switch (st) {
    case BNX_OK: return kExitOk;
    case BNX_ERR_INCONSISTENT_EVIDENCE:
    case BNX_ERR_METRIC_UNDEFINED:
    case BNX_ERR_INTERNAL: return kExitInference;
    default: return kExitValidation;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitValidation, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_ladder(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Failure{kExitValidation, "invalid --alpha-ladder entry '" + item + "'"};
    }
  }
  return out;
}

json build_request(const Options& o) {
  json ev = json::parse(read_file(o.evidence), nullptr, false);
  if (ev.is_discarded() || !ev.is_object() || !ev.contains("evidence")) {
    throw Failure{kExitValidation, "'" + o.evidence + "' is not an evidence document"};
  }
  if (auto v = ev.find("format_version"); v != ev.end() && *v != 1) {
    throw Failure{kExitValidation, "unsupported evidence format_version (expected 1)"};
  }
  json req;
  req["evidence"] = ev["evidence"];
  req["targets"] = o.targets;
  req["level"] = o.level;
  json cfg;
  cfg["metric"] = o.metric;
  cfg["intermediate_rule"] = o.intermediate_rule;
  if (!o.alpha_ladder.empty()) cfg["alpha_ladder"] = parse_ladder(o.alpha_ladder);
  json focus = json::object();
  for (const auto& fs : o.focus_states) {
    auto eq = fs.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == fs.size()) {
      throw Failure{kExitValidation, "--focus-state expects NODE=STATE, got '" + fs + "'"};
    }
    focus[fs.substr(0, eq)] = fs.substr(eq + 1);
  }
  cfg["focus_states"] = focus;
  cfg["percent_precision"] = o.percent_precision;
  if (!o.subject.empty()) cfg["subject"] = o.subject;
  if (!o.reference.empty()) cfg["reference"] = o.reference;
  req["config"] = cfg;
  return req;
}

int run_explain(const Options& o, std::ostream& out) {
  LoadResult loaded = load_network(read_file(o.network));
  if (loaded.status != BNX_OK) throw Failure{exit_code_for(loaded.status), loaded.message};

  std::string request = build_request(o).dump();
  char* raw = nullptr;
  bnx_status st = bnx_explain(loaded.handle.get(), request.data(), request.size(), &raw);
  if (st != BNX_OK) throw Failure{exit_code_for(st), bnx_last_error()};
  json response = json::parse(raw);
  bnx_string_free(raw);

  if (o.format == "json") {
    out << response["reports"].dump(2) << '\n';
  } else {
    bool first = true;
    for (const auto& r : response["rendered"]) {
      if (!first) out << '\n';
      first = false;
      out << r["text"].get<std::string>();
    }
  }
  return kExitOk;
}

int run_server(const Options& o, std::ostream& out) {
  ExplainService service;
  if (!o.network.empty()) {
    HttpResponse r = service.register_network(read_file(o.network));
    if (r.status != 201) throw Failure{kExitValidation, json::parse(r.body)["error"]["message"]};
    out << "registered " << json::parse(r.body)["id"].get<std::string>() << '\n';
  }
  httplib::Server server;
  service.mount(server);
  out << "listening on http://" << o.host << ':' << o.port << "/v1/" << std::endl;
  if (!server.listen(o.host, o.port)) {
    throw Failure{kExitValidation, "cannot listen on port " + std::to_string(o.port)};
  }
  return kExitOk;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explain the reasoning of a Bayesian network for one or more targets",
               "bnx-explain"};
  Options o;
  app.add_option("--network", o.network, "Network file (JSON)");
  app.add_option("--evidence", o.evidence, "Evidence file (JSON)");
  app.add_option("--target", o.targets, "Target node id (repeatable)");
  app.add_option("--level", o.level, "Explanation depth")->check(CLI::Range(1, 3));
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--alpha-ladder", o.alpha_ladder, "Comma-separated decreasing alpha values");
  app.add_option("--metric", o.metric, "Distance metric")
      ->check(CLI::IsMember({"hellinger", "kl"}));
  app.add_option("--intermediate-rule", o.intermediate_rule, "Level-2 selection rule")
      ->check(CLI::IsMember({"active_trail", "pairwise"}));
  app.add_option("--focus-state", o.focus_states, "NODE=STATE focus override (repeatable)");
  app.add_option("--percent-precision", o.percent_precision, "Decimals in percentages")
      ->check(CLI::Range(0, 6));
  app.add_option("--subject", o.subject, "Subject of the relative-change sentence");
  app.add_option("--reference", o.reference, "Reference population of that sentence");
  app.add_flag("--serve", o.serve, "Run the HTTP service instead of a one-shot explanation");
  app.add_option("--port", o.port, "HTTP port for --serve")->check(CLI::Range(1, 65535));
  app.add_option("--host", o.host, "HTTP bind address for --serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (o.serve) return run_server(o, out);
    if (o.network.empty() || o.evidence.empty() || o.targets.empty()) {
      err << "error: --network, --evidence and at least one --target are required\n";
      return kExitValidation;
    }
    return run_explain(o, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInference;
  }
}

}  // namespace bnx::service
