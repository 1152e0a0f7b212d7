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

#include "bnx/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bnx/error.hpp"
#include "format.hpp"

namespace bnx {

using ojson = nlohmann::ordered_json;

std::string_view to_string(ChangeDirection d) {
  return d == ChangeDirection::kIncrease ? "INCREASE" : "DECREASE";
}

void validate(const RenderConfig& config, const Network& net) {
  if (config.level < 1 || config.level > 3) {
    throw Error(ErrorCode::kInvalidArgument, "level must be 1, 2 or 3");
  }
  if (config.percent_precision < 0 || config.percent_precision > 6) {
    throw Error(ErrorCode::kInvalidArgument, "percent precision must be between 0 and 6");
  }
  for (const auto& [node, state] : config.focus_states) {
    NodeIndex idx = net.index_of(node);
    if (!net.node(idx).state_index(state)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "focus state '" + state + "' is not a state of node '" + node + "'");
    }
  }
}

namespace {

// "an 8%", "an 11%", "a 14%": pick the article by how the number is spoken.
std::string_view article_for(std::string_view number) {
  std::size_t digits = number.find('.');
  if (digits == std::string_view::npos) digits = number.size();
  if (digits == 0) return "a";
  if (number[0] == '8') return "an";
  if (digits % 3 == 2 && (number.substr(0, 2) == "11" || number.substr(0, 2) == "18")) {
    return "an";
  }
  return "a";
}

double round_half_away(double v, int precision) {
  double scale = std::pow(10.0, precision);
  return std::round(v * scale) / scale;
}

}  // namespace

std::string format_percent(double percent, int precision) {
  double r = round_half_away(percent, precision);
  if (r == 0.0) r = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, r);
  return buf;
}

RelativeChange relative_change_percent(double posterior_focus, double prior_focus,
                                       int precision) {
  RelativeChange rc;
  if (prior_focus < kNegligiblePrior) {
    rc.negligible_prior = true;
    rc.direction = posterior_focus >= prior_focus ? ChangeDirection::kIncrease
                                                  : ChangeDirection::kDecrease;
    return rc;
  }
  double raw = 100.0 * (posterior_focus - prior_focus) / prior_focus;
  rc.percent = round_half_away(raw, precision);
  if (rc.percent == 0.0) rc.percent = 0.0;
  rc.direction = rc.percent < 0.0 ? ChangeDirection::kDecrease : ChangeDirection::kIncrease;
  return rc;
}

namespace {

enum class Group { kSupport, kNotSupport, kPartialSupport, kPartialNotSupport };

constexpr Group kGroups[] = {Group::kSupport, Group::kNotSupport, Group::kPartialSupport,
                             Group::kPartialNotSupport};

Group group_of(ConflictCategory c) {
  switch (c) {
    case ConflictCategory::kDominant:
    case ConflictCategory::kConsistent: return Group::kSupport;
    case ConflictCategory::kConflicting: return Group::kNotSupport;
    case ConflictCategory::kMixedConsistent: return Group::kPartialSupport;
    case ConflictCategory::kMixedConflicting: return Group::kPartialNotSupport;
  }
  return Group::kSupport;
}

std::string_view group_key(Group g) {
  switch (g) {
    case Group::kSupport: return "support";
    case Group::kNotSupport: return "not_support";
    case Group::kPartialSupport: return "partially_support";
    case Group::kPartialNotSupport: return "partially_not_support";
  }
  return "support";
}

std::string_view group_verb(Group g) {
  switch (g) {
    case Group::kSupport: return "support";
    case Group::kNotSupport: return "do not support";
    case Group::kPartialSupport: return "partially support";
    case Group::kPartialNotSupport: return "partially do not support";
  }
  return "support";
}

// Values that already start with a comparison ("≥ 500mls") read without "=".
std::string finding_text(const std::string& label, const std::string& value) {
  static const char* const kComparisons[] = {"\xE2\x89\xA5", "\xE2\x89\xA4", "<", ">"};
  for (const char* c : kComparisons) {
    if (value.rfind(c, 0) == 0) return detail::upper(label) + " " + detail::upper(value);
  }
  return detail::upper(label) + " = " + detail::upper(value);
}

struct NodeView {
  std::string id;
  std::string label;
  const std::vector<std::string>* states;
  const Distribution* prior;
  const Distribution* posterior;
  std::size_t focus;
};

class Renderer {
 public:
  Renderer(const ExplanationReport& report, const RenderConfig& config)
      : report_(report), config_(config) {}

  RenderedExplanation run() {
    NodeView target{report_.target,    report_.target_label, &report_.target_states,
                    &report_.prior,    &report_.posterior,   focus(report_.target, report_.target_states,
                                                                   report_.target_focus_state)};
    out_["target"] = report_.target;
    out_["level"] = config_.level;

    std::string headline = "The likelihood of " + outcome(target) + " is " +
                           percent_of(target.posterior->mass[target.focus]) + "%.";
    line(headline);
    line();
    out_["headline"] = {{"text", headline},
                        {"node", target.id},
                        {"state", (*target.states)[target.focus]},
                        {"percent", percent_of(target.posterior->mass[target.focus])}};
    ojson rc = relative_change_block(target);
    line(rc["text"].get<std::string>());
    out_["relative_change"] = std::move(rc);

    out_["level1"] = level1(target);

    const bool deeper = !report_.level2_3.empty();
    if (config_.level >= 2 && deeper) out_["level2"] = level2(target);
    if (config_.level >= 3 && deeper) out_["level3"] = level3();
    return {text_.str(), std::move(out_)};
  }

 private:
  void line(const std::string& s = {}) { text_ << s << '\n'; }

  std::size_t focus(const std::string& id, const std::vector<std::string>& states,
                    std::size_t fallback) const {
    if (auto it = config_.focus_states.find(id); it != config_.focus_states.end()) {
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == it->second) return i;
      }
    }
    return fallback;
  }

  std::string percent_of(double p) const {
    return format_percent(100.0 * p, config_.percent_precision);
  }

  static std::string outcome(const NodeView& n) {
    return detail::upper(n.label) + " = " + detail::upper((*n.states)[n.focus]);
  }

  static bool increased(const NodeView& n) {
    return n.posterior->mass[n.focus] >= n.prior->mass[n.focus];
  }

  std::string header(Group g, const NodeView& n, bool ranked) const {
    std::string h = "Factors that ";
    h += group_verb(g);
    h += " the ";
    h += increased(n) ? "INCREASED" : "DECREASED";
    h += " risk of " + outcome(n);
    if (ranked) h += " (strongest to least)";
    return h + ":";
  }

  ojson relative_change_block(const NodeView& n) const {
    double post = n.posterior->mass[n.focus];
    double prior = n.prior->mass[n.focus];
    RelativeChange rc = relative_change_percent(post, prior, config_.percent_precision);
    std::string phrase = "having " + outcome(n);
    if (auto it = config_.outcome_phrases.find(n.id); it != config_.outcome_phrases.end()) {
      phrase = it->second;
    }
    std::string text;
    if (rc.negligible_prior) {
      text = config_.subject + " has a risk of " + phrase + " that changed from negligible to " +
             percent_of(post) + "%.";
    } else if (rc.no_change()) {
      text = config_.subject + " has no change in risk of " + phrase + " from " +
             config_.reference + ".";
    } else {
      std::string pct = format_percent(std::abs(rc.percent), config_.percent_precision);
      text = config_.subject + " has " + std::string(article_for(pct)) + " " + pct + "% " +
             std::string(to_string(rc.direction)) + " in risk of " + phrase + " than " +
             config_.reference + ".";
    }
    ojson j;
    j["text"] = text;
    j["percent"] = rc.negligible_prior ? ojson(nullptr)
                                       : ojson(format_percent(rc.percent, config_.percent_precision));
    j["direction"] = to_string(rc.direction);
    j["negligible_prior"] = rc.negligible_prior;
    return j;
  }

  ojson group_block(Group g, const NodeView& n, std::vector<const ImpactRecord*> items,
                    bool ranked, int& rank) {
    ojson j;
    j["group"] = group_key(g);
    j["header"] = header(g, n, ranked);
    j["items"] = ojson::array();
    line(j["header"].get<std::string>());
    if (items.empty()) line("\xE2\x80\xA2 NONE");
    for (const ImpactRecord* r : items) {
      bool very = r->category == ConflictCategory::kDominant;
      std::string text = finding_text(r->evidence_label, r->observed_value);
      if (very) text += " (Very important)";
      line("\xE2\x80\xA2 " + text);
      j["items"].push_back({{"rank", ++rank},
                            {"node", r->evidence_node},
                            {"label", detail::upper(r->evidence_label)},
                            {"value", detail::upper(r->observed_value)},
                            {"category", to_string(r->category)},
                            {"impact", r->impact},
                            {"very_important", very},
                            {"text", text}});
    }
    return j;
  }

  // Records arrive ordered by descending impact; grouping keeps that order.
  static std::vector<const ImpactRecord*> members(const std::vector<const ImpactRecord*>& all,
                                                  Group g) {
    std::vector<const ImpactRecord*> out;
    for (const ImpactRecord* r : all) {
      if (group_of(r->category) == g) out.push_back(r);
    }
    return out;
  }

  ojson level1(const NodeView& target) {
    ojson j;
    j["groups"] = ojson::array();
    std::vector<const ImpactRecord*> sig = report_.significant();
    if (sig.empty()) {
      std::string msg = report_.level1.empty()
                            ? "No evidence is d-connected to " + detail::upper(target.label) + "."
                            : "No evidence has a significant impact on " +
                                  detail::upper(target.label) + ".";
      line();
      line(msg);
      j["message"] = msg;
      return j;
    }
    const bool binary = target.states->size() == 2;
    int rank = 0;
    for (Group g : kGroups) {
      auto items = members(sig, g);
      if (items.empty() && binary) continue;
      line();
      j["groups"].push_back(group_block(g, target, std::move(items), true, rank));
    }
    return j;
  }

  ojson level2(const NodeView& target) {
    ojson j;
    std::string header = "Important elements for predicting " + detail::upper(target.label) +
                         " are:";
    line();
    line(header);
    j["header"] = header;
    j["items"] = ojson::array();
    int index = 0;
    for (const auto& rec : report_.level2_3) {
      NodeView n = view(rec);
      std::string pct = percent_of(n.posterior->mass[n.focus]);
      std::string title = std::to_string(++index) + ". " + detail::upper(n.label) +
                          ": The likelihood of " + outcome(n) + " is " + pct + "%";
      ojson rc = relative_change_block(n);
      line();
      line(title);
      line(rc["text"].get<std::string>());
      j["items"].push_back({{"index", index},
                            {"node", n.id},
                            {"label", detail::upper(n.label)},
                            {"state", (*n.states)[n.focus]},
                            {"percent", pct},
                            {"text", title},
                            {"relative_change", std::move(rc)}});
    }
    return j;
  }

  ojson level3() {
    ojson j = ojson::array();
    for (const auto& rec : report_.level2_3) {
      NodeView n = view(rec);
      std::vector<const ImpactRecord*> all;
      for (const auto& e : rec.effects) all.push_back(&e);
      ojson block;
      block["node"] = n.id;
      block["groups"] = ojson::array();
      int rank = 0;
      for (Group g : kGroups) {
        line();
        block["groups"].push_back(group_block(g, n, members(all, g), false, rank));
      }
      j.push_back(std::move(block));
    }
    return j;
  }

  NodeView view(const IntermediateRecord& rec) const {
    return {rec.node,       rec.label,       &rec.states,
            &rec.prior,     &rec.posterior,  focus(rec.node, rec.states, rec.focus_state)};
  }

  const ExplanationReport& report_;
  const RenderConfig& config_;
  std::ostringstream text_;
  ojson out_;
};

}  // namespace

RenderedExplanation render(const ExplanationReport& report, const RenderConfig& config) {
  return Renderer(report, config).run();
}

}  // namespace bnx
