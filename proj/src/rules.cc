// Copyright 2026 The FieldSense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fieldsense/rules.h"

#include <algorithm>
#include <set>

#include "fieldsense/default_resources.h"
#include "json.hpp"

namespace fieldsense {
namespace {

using nlohmann::json;

Rule parse_rule(const json& j, std::size_t position) {
  const std::string at = "rule #" + std::to_string(position);
  if (!j.is_object()) throw RuleParseError("", -1, at + ": expected an object");

  Rule rule;
  if (auto it = j.find("id"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>().empty()) {
      throw RuleParseError("", -1, at + ": 'id' must be a non-empty string");
    }
    rule.rule_id = it->get<std::string>();
  }
  auto it = j.find("class");
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw RuleParseError(rule.rule_id, -1,
                         at + ": 'class' must be a non-empty string");
  }
  rule.class_name = it->get<std::string>();
  if (rule.rule_id.empty()) {
    rule.rule_id = rule.class_name + "#" + std::to_string(position);
  }
  const std::string named = "rule '" + rule.rule_id + "'";

  it = j.find("channels");
  if (it == j.end() || !it->is_array() || it->empty()) {
    throw RuleParseError(rule.rule_id, -1,
                         named + ": 'channels' must be a non-empty array");
  }
  for (const json& c : *it) {
    std::optional<Channel> channel =
        c.is_string() ? channel_from_name(c.get<std::string>()) : std::nullopt;
    if (!channel) {
      throw RuleParseError(rule.rule_id, -1,
                           named + ": unknown channel " + c.dump());
    }
    if (std::find(rule.channels.begin(), rule.channels.end(), *channel) ==
        rule.channels.end()) {
      rule.channels.push_back(*channel);
    }
  }

  it = j.find("pattern");
  if (it == j.end() || !it->is_string()) {
    throw RuleParseError(rule.rule_id, -1, named + ": 'pattern' must be a string");
  }
  rule.pattern = it->get<std::string>();

  it = j.find("priority");
  if (it != j.end()) {
    if (!it->is_number_integer()) {
      throw RuleParseError(rule.rule_id, -1,
                           named + ": 'priority' must be an integer");
    }
    rule.priority = it->get<int>();
  }

  try {
    rule.compiled = boost::regex(rule.pattern,
                                 boost::regex::perl | boost::regex::icase);
  } catch (const boost::regex_error& e) {
    throw RuleParseError(rule.rule_id, e.position(),
                         named + ": invalid pattern at position " +
                             std::to_string(e.position()) + ": " + e.what());
  }
  return rule;
}

}  // namespace

RuleSet RuleSet::load(std::string_view source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw RuleParseError("", -1, std::string("rules file is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw RuleParseError("", -1, "rules file must be a JSON array");

  RuleSet set;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Rule rule = parse_rule(j[i], i);
    if (!ids.insert(rule.rule_id).second) {
      throw RuleParseError(rule.rule_id, -1,
                           "duplicate rule id '" + rule.rule_id + "'");
    }
    set.rules_.push_back(std::move(rule));
  }
  std::stable_sort(set.rules_.begin(), set.rules_.end(),
                   [](const Rule& a, const Rule& b) { return a.priority < b.priority; });
  return set;
}

const RuleSet& RuleSet::defaults() {
  static const RuleSet rules = load(resources::kDefaultRules);
  return rules;
}

bool rule_matches(const Rule& rule, const FieldFeatures& field) {
  for (Channel channel : rule.channels) {
    const std::string& text = channel_text(field, channel);
    if (boost::regex_search(text, rule.compiled)) return true;
  }
  return false;
}

std::optional<std::size_t> RuleSet::first_match(const FieldFeatures& field) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rule_matches(rules_[i], field)) return i;
  }
  return std::nullopt;
}

std::optional<RuleMatch> RuleSet::apply(const FieldFeatures& field) const {
  if (auto i = first_match(field)) {
    return RuleMatch{rules_[*i].class_name, rules_[*i].rule_id};
  }
  return std::nullopt;
}

std::vector<std::string> RuleSet::class_names() const {
  std::vector<std::string> names;
  for (const Rule& r : rules_) {
    if (std::find(names.begin(), names.end(), r.class_name) == names.end()) {
      names.push_back(r.class_name);
    }
  }
  return names;
}

}  // namespace fieldsense
