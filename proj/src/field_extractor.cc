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

#include "fieldsense/field_extractor.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "fieldsense/entities.h"
#include "fieldsense/errors.h"
#include "fieldsense/url.h"

namespace fieldsense {
namespace {

constexpr std::array<std::string_view, 5> kExcludedInputTypes = {
    "hidden", "submit", "button", "reset", "image"};

constexpr std::array<std::string_view, 17> kKnownInputTypes = {
    "checkbox", "color", "date",   "datetime-local", "email", "file",
    "month",    "number", "password", "radio",       "range", "search",
    "tel",      "text",  "time",   "url",            "week"};

std::string lowercase_trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_control(const html::Node& n) {
  return n.type == html::NodeType::kElement &&
         (n.tag == "input" || n.tag == "select" || n.tag == "textarea" ||
          n.tag == "button");
}

bool is_hidden_content(const html::Node& n) {
  return n.type == html::NodeType::kElement &&
         (n.tag == "script" || n.tag == "style" || n.tag == "template" ||
          n.tag == "noscript");
}

// Label-ish text of an element: descendant text without the text that
// belongs to controls (select options, textarea contents) or scripts.
std::string visible_text(const html::Node& n) {
  return collapse_whitespace(html::text_content(n, [](const html::Node& d) {
    return is_hidden_content(d) || d.is_element("select") ||
           d.is_element("textarea") || d.is_element("option");
  }));
}

bool breaks_sibling_search(const html::Node& n) {
  return n.tag == "th" || n.tag == "legend" || html::is_block_element(n.tag);
}

std::string attribute_text(const html::Node& n, std::string_view name) {
  const std::string* value = n.attribute(name);
  return value == nullptr ? std::string() : collapse_whitespace(*value);
}

std::string preceding_sibling_text(const html::Node& control) {
  const std::string* own_id = control.attribute("id");
  const html::Node* node = &control;
  while (node != nullptr) {
    for (const html::Node* sib = node->previous_sibling(); sib != nullptr;
         sib = sib->previous_sibling()) {
      if (sib->type == html::NodeType::kText) {
        std::string text = collapse_whitespace(sib->text);
        if (!text.empty()) return text;
        continue;
      }
      if (is_control(*sib) || breaks_sibling_search(*sib)) return {};
      if (is_hidden_content(*sib)) continue;
      if (sib->tag == "label") {
        const std::string* target = sib->attribute("for");
        if (target != nullptr && !target->empty() &&
            (own_id == nullptr || *target != *own_id)) {
          return {};  // labels another control
        }
      }
      std::string text = visible_text(*sib);
      if (!text.empty()) return text;
    }
    const html::Node* parent = node->parent;
    if (parent == nullptr || parent->type != html::NodeType::kElement ||
        breaks_sibling_search(*parent)) {
      break;
    }
    node = parent;
  }
  return {};
}

}  // namespace

FieldSignature signature(const FieldFeatures& field) {
  FieldSignature sig;
  if (auto url = parse_url(field.page_url)) sig.origin = url->origin();
  std::string key = field.name + "|" + field.id + "|" + field.control_type;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  sig.key = std::move(key);
  return sig;
}

LabelResolver::LabelResolver(const html::Document& document) {
  html::walk(document.root(), [this](const html::Node& n) {
    if (!n.is_element("label")) return;
    const std::string* target = n.attribute("for");
    if (target == nullptr || target->empty()) return;
    // First label with text wins when several name the same id.
    auto it = label_for_.find(*target);
    if (it != label_for_.end() && !it->second.empty()) return;
    label_for_[*target] = visible_text(n);
  });
}

std::string LabelResolver::resolve(const html::Node& control) const {
  if (const std::string* id = control.attribute("id");
      id != nullptr && !id->empty()) {
    auto it = label_for_.find(*id);
    if (it != label_for_.end() && !it->second.empty()) return it->second;
  }
  for (const html::Node* p = control.parent; p != nullptr; p = p->parent) {
    if (p->is_element("label")) {
      std::string text = visible_text(*p);
      if (!text.empty()) return text;
      break;
    }
  }
  if (std::string aria = attribute_text(control, "aria-label"); !aria.empty()) {
    return aria;
  }
  if (std::string placeholder = attribute_text(control, "placeholder");
      !placeholder.empty()) {
    return placeholder;
  }
  return preceding_sibling_text(control);
}

std::string resolve_label(const html::Document& document,
                          const html::Node& control) {
  return LabelResolver(document).resolve(control);
}

std::string control_type_of(const html::Node& element) {
  if (element.type != html::NodeType::kElement) return {};
  if (element.tag == "select") return "select";
  if (element.tag == "textarea") return "textarea";
  if (element.tag != "input") return {};
  const std::string* raw = element.attribute("type");
  std::string type = raw == nullptr ? std::string() : lowercase_trimmed(*raw);
  if (std::find(kExcludedInputTypes.begin(), kExcludedInputTypes.end(), type) !=
      kExcludedInputTypes.end()) {
    return {};
  }
  if (std::find(kKnownInputTypes.begin(), kKnownInputTypes.end(), type) ==
      kKnownInputTypes.end()) {
    return "text";
  }
  return type;
}

std::vector<FieldFeatures> parse_document(std::string_view markup,
                                          std::string_view page_url) {
  if (!parse_url(page_url)) throw MalformedUrlError(std::string(page_url));
  const html::Document document = html::Document::parse(markup);
  const LabelResolver resolver(document);

  std::vector<FieldFeatures> fields;
  html::walk(document.root(), [&](const html::Node& n) {
    std::string type = control_type_of(n);
    if (type.empty()) return;
    FieldFeatures f;
    f.label_text = resolver.resolve(n);
    if (const std::string* name = n.attribute("name")) f.name = *name;
    if (const std::string* id = n.attribute("id")) f.id = *id;
    f.control_type = std::move(type);
    f.page_url = std::string(page_url);
    if (f.label_text.empty() && f.name.empty() && f.id.empty()) return;
    fields.push_back(std::move(f));
  });
  return fields;
}

}  // namespace fieldsense
