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

#ifndef FIELDSENSE_FIELD_EXTRACTOR_H_
#define FIELDSENSE_FIELD_EXTRACTOR_H_

#include <compare>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fieldsense/html.h"

namespace fieldsense {

// One fillable form control, described only by its markup. Form values are
// never captured.
struct FieldFeatures {
  std::string label_text;
  std::string name;
  std::string id;
  std::string control_type = "text";
  std::string page_url;

  bool operator==(const FieldFeatures&) const = default;
};

// Key for remembering a field across visits: the page origin plus the
// lowercase "name|id|control_type".
struct FieldSignature {
  std::string origin;
  std::string key;

  auto operator<=>(const FieldSignature&) const = default;
};

FieldSignature signature(const FieldFeatures& field);

// Finds the human-visible label of a control. Candidates, first non-empty
// wins:
//   1. text of a <label for="ID"> naming the control's id
//   2. text of an enclosing <label>, minus the control's own text
//   3. aria-label
//   4. placeholder
//   5. text of the nearest preceding sibling text or inline element inside
//      the same block
// The result is entity-decoded with whitespace collapsed; it may be empty.
class LabelResolver {
 public:
  explicit LabelResolver(const html::Document& document);

  std::string resolve(const html::Node& control) const;

 private:
  std::unordered_map<std::string, std::string> label_for_;
};

std::string resolve_label(const html::Document& document,
                          const html::Node& control);

// One record per <input> (except hidden, submit, button, reset and image),
// <select> and <textarea>, in document order. Records whose label, name and
// id are all empty are dropped. Throws MalformedUrlError when page_url is not
// an absolute URL; markup is never rejected.
std::vector<FieldFeatures> parse_document(std::string_view html,
                                          std::string_view page_url);

// Lowercased input type, "select" or "textarea"; empty when the element is
// not an autofill target.
std::string control_type_of(const html::Node& element);

}  // namespace fieldsense

#endif  // FIELDSENSE_FIELD_EXTRACTOR_H_
