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

/* C interface to the bnexplain engine.
 *
 * Networks are opaque, immutable handles; every other value crosses the
 * boundary as UTF-8 JSON. Functions return a bnx_status; on failure the
 * message of the most recent error on the calling thread is available from
 * bnx_last_error(). Strings handed out through `char** out` parameters are
 * owned by the caller and released with bnx_string_free().
 */
#ifndef BNX_BNX_H
#define BNX_BNX_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BNX_BUILDING_LIBRARY)
#    define BNX_API __declspec(dllexport)
#  else
#    define BNX_API __declspec(dllimport)
#  endif
#else
#  define BNX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bnx_network bnx_network;

typedef enum bnx_status {
  BNX_OK = 0,
  BNX_ERR_INVALID_ARGUMENT = 1,
  BNX_ERR_PARSE = 2,
  BNX_ERR_VALIDATION = 3,
  BNX_ERR_UNKNOWN_NODE = 4,
  BNX_ERR_INVALID_EVIDENCE = 5,
  BNX_ERR_INCONSISTENT_EVIDENCE = 6,
  BNX_ERR_METRIC_UNDEFINED = 7,
  BNX_ERR_INTERNAL = 99
} bnx_status;

BNX_API const char* bnx_version(void);
BNX_API const char* bnx_status_name(bnx_status status);

/* Message of the last failure on this thread; "" if none. Valid until the
 * next failing call on the same thread. */
BNX_API const char* bnx_last_error(void);

/* Parses and validates a network document (format_version 1). */
BNX_API bnx_status bnx_network_parse(const char* json, size_t len, bnx_network** out);
BNX_API void bnx_network_free(bnx_network* net);

/* {"name", "nodes": [{"id", "label", "kind", "states", "parents"[, "bin_edges"]}]} */
BNX_API bnx_status bnx_network_describe(const bnx_network* net, char** out_json);

/* Canonical network document, re-parseable by bnx_network_parse. */
BNX_API bnx_status bnx_network_serialize(const bnx_network* net, char** out_json);

/* Request:
 *   {"evidence": {id: state | number, ...},
 *    "targets": [id, ...],
 *    "level": 1 | 2 | 3,
 *    "config": {"alpha_ladder": [...], "metric": "hellinger" | "kl",
 *               "focus_states": {id: state}, "intermediate_rule": "active_trail" | "pairwise",
 *               "percent_precision": n, "subject": s, "reference": s,
 *               "outcome_phrases": {id: s}}}
 * Response:
 *   {"reports": [...], "rendered": [{"target", "text", "structured"}]}
 */
BNX_API bnx_status bnx_explain(const bnx_network* net, const char* request_json, size_t len,
                               char** out_json);

BNX_API void bnx_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BNX_BNX_H */
