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

#include <string>
#include <vector>

#include <json.hpp>

#include "bnx/explain.hpp"

namespace bnx {

inline constexpr int kReportVersion = 1;

/// Canonical serialization: fixed field order, shortest round-trip doubles.
nlohmann::ordered_json to_json(const Distribution& d);
nlohmann::ordered_json to_json(const ThresholdResult& t);
nlohmann::ordered_json to_json(const ImpactRecord& r);
nlohmann::ordered_json to_json(const IntermediateRecord& r);
nlohmann::ordered_json to_json(const ExplanationReport& report);

std::string canonical_json(const std::vector<ExplanationReport>& reports);

}  // namespace bnx
