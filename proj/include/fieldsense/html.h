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

#ifndef FIELDSENSE_HTML_H_
#define FIELDSENSE_HTML_H_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fieldsense::html {

enum class NodeType { kDocument, kElement, kText };

struct Attribute {
  std::string name;   // lowercase
  std::string value;  // entity-decoded
};

// A node of a parsed document. Element tags and attribute names are
// lowercase; text is entity-decoded but otherwise verbatim.
struct Node {
  NodeType type = NodeType::kElement;
  std::string tag;
  std::vector<Attribute> attributes;
  std::string text;
  Node* parent = nullptr;
  std::vector<std::unique_ptr<Node>> children;

  bool is_element(std::string_view name) const {
    return type == NodeType::kElement && tag == name;
  }
  // First attribute with this (lowercase) name, or nullptr.
  const std::string* attribute(std::string_view name) const;
  const Node* previous_sibling() const;
};

// Concatenated descendant text, skipping subtrees for which `skip` is true.
std::string text_content(const Node& node,
                         const std::function<bool(const Node&)>& skip = {});

// Pre-order walk over every node below (and including) `node`.
void walk(const Node& node, const std::function<void(const Node&)>& visit);

bool is_block_element(std::string_view tag);

// Parses markup the way browsers do: never fails, recovers from unclosed,
// stray and misnested tags.
class Document {
 public:
  static Document parse(std::string_view markup);

  const Node& root() const { return *root_; }

 private:
  Document() = default;
  std::unique_ptr<Node> root_;
};

}  // namespace fieldsense::html

#endif  // FIELDSENSE_HTML_H_
