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

#ifndef FIELDSENSE_RULES_H_
#define FIELDSENSE_RULES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/regex.hpp>

#include "fieldsense/errors.h"
#include "fieldsense/field_extractor.h"
#include "fieldsense/text_pipeline.h"

namespace fieldsense {

class RuleParseError : public Error {
 public:
  RuleParseError(std::string rule_id, std::ptrdiff_t position,
                 const std::string& what)
      : Error(what), rule_id_(std::move(rule_id)), position_(position) {}

  const std::string& rule_id() const { return rule_id_; }
  // Offset into the pattern, or -1 when the error is not about a pattern.
  std::ptrdiff_t position() const { return position_; }

 private:
  std::string rule_id_;
  std::ptrdiff_t position_;
};

struct Rule {
  std::string rule_id;
  std::string class_name;
  std::vector<Channel> channels;
  std::string pattern;
  int priority = 0;
  boost::regex compiled;
};

struct RuleMatch {
  std::string class_name;
  std::string rule_id;

  bool operator==(const RuleMatch&) const = default;
};

// Regex heuristics, evaluated in ascending priority then file order; the
// first rule matching any of its channels decides. Matching is a
// case-insensitive search over the raw channel text.
class RuleSet {
 public:
  RuleSet() = default;

  // JSON array of {id?, class, channels[], pattern, priority}.
  static RuleSet load(std::string_view source);
  // The rules shipped in data/default_rules.json.
  static const RuleSet& defaults();

  std::optional<RuleMatch> apply(const FieldFeatures& field) const;
  // Index into rules() of the deciding rule.
  std::optional<std::size_t> first_match(const FieldFeatures& field) const;

  // In evaluation order.
  std::span<const Rule> rules() const { return rules_; }
  // Distinct classes in order of first appearance.
  std::vector<std::string> class_names() const;

 private:
  std::vector<Rule> rules_;
};

bool rule_matches(const Rule& rule, const FieldFeatures& field);

}  // namespace fieldsense

#endif  // FIELDSENSE_RULES_H_
