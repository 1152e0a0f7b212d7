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

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bnx/explain.hpp"
#include "bnx/network.hpp"

namespace bnx {

struct RenderConfig {
  int level = 3;  // 1..3
  int percent_precision = 0;
  std::map<std::string, std::string> focus_states;  // node id -> state name
  // Fixed text around the relative-change line.
  std::string subject = "This case";
  std::string reference = "an average case";
  // Replaces "having NODE = STATE" in the relative-change line, per node id.
  std::map<std::string, std::string> outcome_phrases;
};

/// Throws kInvalidArgument for an out-of-range level or precision and for
/// focus overrides that do not name a node and one of its states.
void validate(const RenderConfig& config, const Network& net);

enum class ChangeDirection { kIncrease, kDecrease };

std::string_view to_string(ChangeDirection d);  // "INCREASE" / "DECREASE"

struct RelativeChange {
  double percent = 0.0;  // signed, rounded half away from zero
  ChangeDirection direction = ChangeDirection::kIncrease;
  bool negligible_prior = false;  // prior < 1e-6: percent is meaningless

  bool no_change() const { return !negligible_prior && percent == 0.0; }
};

inline constexpr double kNegligiblePrior = 1e-6;

RelativeChange relative_change_percent(double posterior_focus, double prior_focus,
                                       int precision = 0);

/// Round half away from zero to `precision` decimals and print with exactly
/// that many.
std::string format_percent(double percent, int precision);

struct RenderedExplanation {
  std::string text;
  nlohmann::ordered_json structured;
};

/// Total: every report renders.
RenderedExplanation render(const ExplanationReport& report, const RenderConfig& config = {});

}  // namespace bnx
