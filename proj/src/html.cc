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

#include "fieldsense/html.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "fieldsense/entities.h"

namespace fieldsense::html {
namespace {

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

constexpr std::array<std::string_view, 15> kVoidElements = {
    "area",  "base", "br",     "col",  "embed", "hr",    "img",   "input",
    "keygen", "link", "meta",  "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 38> kBlockElements = {
    "address", "article", "aside",    "blockquote", "body",    "center",
    "dd",      "details", "dialog",   "dir",        "div",     "dl",
    "dt",      "fieldset", "figcaption", "figure",  "footer",  "form",
    "h1",      "h2",      "h3",       "h4",         "h5",      "h6",
    "header",  "hr",      "html",     "li",         "main",    "nav",
    "ol",      "p",       "pre",      "section",    "table",   "td",
    "tr",      "ul"};

// Start tags that implicitly close an open <p>.
constexpr std::array<std::string_view, 31> kClosesParagraph = {
    "address", "article", "aside", "blockquote", "center", "details",
    "dialog",  "dir",     "div",   "dl",         "fieldset", "figcaption",
    "figure",  "footer",  "form",  "h1",         "h2",      "h3",
    "h4",      "h5",      "h6",    "header",     "hr",      "main",
    "nav",     "ol",      "p",     "pre",        "section", "table",
    "ul"};

constexpr std::array<std::string_view, 8> kScopeBoundaries = {
    "applet", "button", "caption", "html", "marquee", "object", "table", "td"};

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || c == ':' || c == '.' ||
         u >= 0x80;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Case-insensitive search for "</tag" starting at pos.
std::size_t find_end_tag(std::string_view in, std::size_t pos,
                         std::string_view tag) {
  while (pos < in.size()) {
    const std::size_t lt = in.find("</", pos);
    if (lt == std::string_view::npos) return in.size();
    std::size_t i = lt + 2;
    std::size_t k = 0;
    while (k < tag.size() && i + k < in.size() &&
           std::tolower(static_cast<unsigned char>(in[i + k])) == tag[k]) {
      ++k;
    }
    if (k == tag.size() &&
        (i + k == in.size() || !is_name_char(in[i + k]))) {
      return lt;
    }
    pos = lt + 2;
  }
  return in.size();
}

class TreeBuilder {
 public:
  explicit TreeBuilder(Node* root) : stack_{root} {}

  Node* current() const { return stack_.back(); }

  void add_text(std::string text) {
    if (text.empty()) return;
    Node* parent = current();
    if (!parent->children.empty() &&
        parent->children.back()->type == NodeType::kText) {
      parent->children.back()->text += text;
      return;
    }
    auto node = std::make_unique<Node>();
    node->type = NodeType::kText;
    node->text = std::move(text);
    node->parent = parent;
    parent->children.push_back(std::move(node));
  }

  // Returns the inserted element when it was pushed on the open stack.
  Node* start_tag(std::string tag, std::vector<Attribute> attributes) {
    if ((tag == "html" || tag == "body" || tag == "head") && is_open(tag)) {
      return nullptr;
    }
    if (tag == "form" && is_open("form")) return nullptr;
    apply_implied_end_tags(tag);

    auto node = std::make_unique<Node>();
    node->type = NodeType::kElement;
    node->tag = std::move(tag);
    node->attributes = std::move(attributes);
    node->parent = current();
    Node* raw = node.get();
    current()->children.push_back(std::move(node));
    if (contains(kVoidElements, raw->tag)) return nullptr;
    stack_.push_back(raw);
    return raw;
  }

  void end_tag(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == tag) {
        stack_.resize(i);
        return;
      }
      // Stray end tags never close past a table cell or button.
      if (contains(kScopeBoundaries, stack_[i]->tag) && tag != "table" &&
          tag != "tr" && tag != "tbody" && tag != "thead" && tag != "tfoot") {
        return;
      }
    }
  }

 private:
  bool is_open(std::string_view tag) const {
    return std::any_of(stack_.begin() + 1, stack_.end(),
                       [&](const Node* n) { return n->tag == tag; });
  }

  // Pops to (and including) the nearest open `targets` element, unless a
  // boundary is met first.
  template <std::size_t N, std::size_t M>
  void close_in_scope(const std::array<std::string_view, N>& targets,
                      const std::array<std::string_view, M>& boundaries) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (contains(targets, stack_[i]->tag)) {
        stack_.resize(i);
        return;
      }
      if (contains(boundaries, stack_[i]->tag)) return;
    }
  }

  void apply_implied_end_tags(std::string_view tag) {
    static constexpr std::array<std::string_view, 1> kP = {"p"};
    static constexpr std::array<std::string_view, 1> kLi = {"li"};
    static constexpr std::array<std::string_view, 10> kListBoundaries = {
        "applet", "button", "caption", "html", "marquee", "object",
        "ol",     "table",  "td",      "ul"};
    static constexpr std::array<std::string_view, 2> kDefinition = {"dd", "dt"};
    static constexpr std::array<std::string_view, 2> kCells = {"td", "th"};
    static constexpr std::array<std::string_view, 1> kRow = {"tr"};
    static constexpr std::array<std::string_view, 6> kSections = {
        "tbody", "td", "tfoot", "th", "thead", "tr"};
    static constexpr std::array<std::string_view, 1> kTable = {"table"};
    static constexpr std::array<std::string_view, 1> kSelect = {"select"};

    if (is_open("select") &&
        (tag == "input" || tag == "select" || tag == "textarea" ||
         tag == "keygen")) {
      close_in_scope(kSelect, kTable);
    }
    if (contains(kClosesParagraph, tag)) close_in_scope(kP, kScopeBoundaries);
    if (tag == "li") close_in_scope(kLi, kListBoundaries);
    if (tag == "dd" || tag == "dt") close_in_scope(kDefinition, kScopeBoundaries);
    if (tag == "td" || tag == "th") close_in_scope(kCells, kTable);
    if (tag == "tr") close_in_scope(kRow, kTable);
    if (tag == "tbody" || tag == "thead" || tag == "tfoot") {
      close_in_scope(kSections, kTable);
    }
    if (tag == "option" && current()->tag == "option") stack_.pop_back();
    if (tag == "optgroup") {
      if (current()->tag == "option") stack_.pop_back();
      if (current()->tag == "optgroup") stack_.pop_back();
    }
  }

  std::vector<Node*> stack_;
};

class Parser {
 public:
  Parser(std::string_view in, Node* root) : in_(in), builder_(root) {}

  void run() {
    std::string text;
    while (pos_ < in_.size()) {
      const std::size_t lt = in_.find('<', pos_);
      const std::size_t stop = lt == std::string_view::npos ? in_.size() : lt;
      text.append(in_.substr(pos_, stop - pos_));
      pos_ = stop;
      if (pos_ >= in_.size()) break;
      if (!at_markup()) {
        text += '<';
        ++pos_;
        continue;
      }
      builder_.add_text(decode_entities(text));
      text.clear();
      parse_markup();
    }
    builder_.add_text(decode_entities(text));
  }

 private:
  char peek(std::size_t offset) const {
    return pos_ + offset < in_.size() ? in_[pos_ + offset] : '\0';
  }

  bool at_markup() const {
    const char next = peek(1);
    return std::isalpha(static_cast<unsigned char>(next)) || next == '/' ||
           next == '!' || next == '?';
  }

  void skip_past(std::string_view terminator) {
    const std::size_t end = in_.find(terminator, pos_);
    pos_ = end == std::string_view::npos ? in_.size() : end + terminator.size();
  }

  void parse_markup() {
    const char next = peek(1);
    if (next == '!') {
      if (in_.substr(pos_, 4) == "<!--") {
        pos_ += 4;
        skip_past("-->");
      } else {
        skip_past(">");
      }
      return;
    }
    if (next == '?') {
      skip_past(">");
      return;
    }
    if (next == '/') {
      if (!std::isalpha(static_cast<unsigned char>(peek(2)))) {
        skip_past(">");
        return;
      }
      pos_ += 2;
      const std::string tag = read_name();
      skip_past(">");
      builder_.end_tag(tag);
      return;
    }
    parse_start_tag();
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' &&
           in_[pos_] != '>') {
      ++pos_;
    }
    return lowercase(in_.substr(start, pos_ - start));
  }

  void skip_spaces() {
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
  }

  void parse_start_tag() {
    ++pos_;  // '<'
    std::string tag = read_name();
    std::vector<Attribute> attributes;
    for (;;) {
      while (pos_ < in_.size() && (is_space(in_[pos_]) || in_[pos_] == '/')) {
        ++pos_;
      }
      if (pos_ >= in_.size()) return;  // EOF inside a tag drops the tag
      if (in_[pos_] == '>') {
        ++pos_;
        break;
      }
      const std::size_t name_start = pos_;
      ++pos_;  // a leading '=' is part of the name
      while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' &&
             in_[pos_] != '>' && in_[pos_] != '=') {
        ++pos_;
      }
      Attribute attr{lowercase(in_.substr(name_start, pos_ - name_start)), ""};
      skip_spaces();
      if (pos_ < in_.size() && in_[pos_] == '=') {
        ++pos_;
        skip_spaces();
        attr.value = decode_entities(read_attribute_value());
      }
      const bool duplicate =
          std::any_of(attributes.begin(), attributes.end(),
                      [&](const Attribute& a) { return a.name == attr.name; });
      if (!duplicate) attributes.push_back(std::move(attr));
    }

    Node* element = builder_.start_tag(tag, std::move(attributes));
    if (element == nullptr) return;
    if (tag == "script" || tag == "style" || tag == "xmp" ||
        tag == "textarea" || tag == "title") {
      const std::size_t end = find_end_tag(in_, pos_, tag);
      std::string raw(in_.substr(pos_, end - pos_));
      builder_.add_text(tag == "textarea" || tag == "title"
                            ? decode_entities(raw)
                            : std::move(raw));
      pos_ = end;
      if (pos_ < in_.size()) {
        skip_past(">");
      }
      builder_.end_tag(tag);
    }
  }

  std::string_view read_attribute_value() {
    if (pos_ >= in_.size()) return {};
    const char quote = in_[pos_];
    if (quote == '"' || quote == '\'') {
      const std::size_t start = pos_ + 1;
      std::size_t end = in_.find(quote, start);
      if (end == std::string_view::npos) end = in_.size();
      pos_ = std::min(end + 1, in_.size());
      return in_.substr(start, end - start);
    }
    const std::size_t start = pos_;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '>') {
      ++pos_;
    }
    return in_.substr(start, pos_ - start);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  TreeBuilder builder_;
};

}  // namespace

const std::string* Node::attribute(std::string_view name) const {
  for (const Attribute& a : attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

const Node* Node::previous_sibling() const {
  if (parent == nullptr) return nullptr;
  const auto& siblings = parent->children;
  for (std::size_t i = 0; i < siblings.size(); ++i) {
    if (siblings[i].get() == this) {
      return i == 0 ? nullptr : siblings[i - 1].get();
    }
  }
  return nullptr;
}

std::string text_content(const Node& node,
                         const std::function<bool(const Node&)>& skip) {
  std::string out;
  std::function<void(const Node&)> collect = [&](const Node& n) {
    if (skip && skip(n)) return;
    if (n.type == NodeType::kText) {
      out += n.text;
      return;
    }
    // Block boundaries separate words.
    const bool block = n.type == NodeType::kElement &&
                       (is_block_element(n.tag) || n.tag == "br");
    if (block) out += ' ';
    for (const auto& child : n.children) collect(*child);
    if (block) out += ' ';
  };
  collect(node);
  return out;
}

void walk(const Node& node, const std::function<void(const Node&)>& visit) {
  visit(node);
  for (const auto& child : node.children) walk(*child, visit);
}

bool is_block_element(std::string_view tag) {
  return contains(kBlockElements, tag);
}

Document Document::parse(std::string_view markup) {
  Document doc;
  doc.root_ = std::make_unique<Node>();
  doc.root_->type = NodeType::kDocument;
  Parser(markup, doc.root_.get()).run();
  return doc;
}

}  // namespace fieldsense::html
