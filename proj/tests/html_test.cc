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

#include <gtest/gtest.h>

#include "fieldsense/entities.h"

namespace fieldsense::html {
namespace {

// Compact tree shape: tag(children...), text as 'text'.
std::string shape(const Node& node) {
  if (node.type == NodeType::kText) return "'" + node.text + "'";
  std::string out = node.type == NodeType::kDocument ? "#doc" : node.tag;
  if (node.children.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += " ";
    out += shape(*node.children[i]);
  }
  return out + ")";
}

std::string parse_shape(std::string_view markup) {
  return shape(Document::parse(markup).root());
}

const Node* find(const Node& node, std::string_view tag) {
  if (node.is_element(tag)) return &node;
  for (const auto& child : node.children) {
    if (const Node* hit = find(*child, tag)) return hit;
  }
  return nullptr;
}

TEST(EntitiesTest, DecodesNamedAndNumeric) {
  EXPECT_EQ(decode_entities("a &amp; b &lt;c&gt; &quot;d&quot; &#39;e&#39;"),
            "a & b <c> \"d\" 'e'");
  EXPECT_EQ(decode_entities("caf&eacute; &#xE9; &#233;"), "caf\xC3\xA9 \xC3\xA9 \xC3\xA9");
  EXPECT_EQ(decode_entities("&euro;&nbsp;"), "\xE2\x82\xAC\xC2\xA0");
}

TEST(EntitiesTest, PassesUnknownThrough) {
  EXPECT_EQ(decode_entities("Enter your email&rdsp;address"), "Enter your email&rdsp;address");
  EXPECT_EQ(decode_entities("AT&T & co"), "AT&T & co");
  EXPECT_EQ(decode_entities("&#xZZ; &#; &"), "&#xZZ; &#; &");
}

TEST(EntitiesTest, CollapsesWhitespaceIncludingNbsp) {
  EXPECT_EQ(collapse_whitespace("  Zip\xC2\xA0\xC2\xA0 code\n\t "), "Zip code");
  EXPECT_EQ(collapse_whitespace(""), "");
  EXPECT_EQ(collapse_whitespace(" \t\n"), "");
}

TEST(EntitiesTest, AppendUtf8Widths) {
  std::string s;
  append_utf8(s, U'A');
  append_utf8(s, U'é');
  append_utf8(s, U'€');
  append_utf8(s, U'\U0001F600');
  EXPECT_EQ(s, "A\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80");
}

TEST(HtmlParserTest, BuildsNestedTree) {
  EXPECT_EQ(parse_shape("<form><label>Email<input name=e></label></form>"),
            "#doc(form(label('Email' input)))");
}

TEST(HtmlParserTest, ReadsAttributesInAllQuotingStyles) {
  auto doc = Document::parse(
      "<input NAME=\"a b\" id='c' type=EMAIL disabled data-x=&quot;q&quot; name=dup>");
  const Node* input = find(doc.root(), "input");
  ASSERT_NE(input, nullptr);
  EXPECT_EQ(*input->attribute("name"), "a b");
  EXPECT_EQ(*input->attribute("id"), "c");
  EXPECT_EQ(*input->attribute("type"), "EMAIL");
  EXPECT_EQ(*input->attribute("disabled"), "");
  EXPECT_EQ(*input->attribute("data-x"), "\"q\"");
  EXPECT_EQ(input->attribute("missing"), nullptr);
}

TEST(HtmlParserTest, VoidElementsHaveNoChildren) {
  EXPECT_EQ(parse_shape("<p>a<br>b<input>c<img src=x>d</p>"),
            "#doc(p('a' br 'b' input 'c' img 'd'))");
  EXPECT_EQ(parse_shape("<div><input/><span/>x</div>"), "#doc(div(input span('x')))");
}

TEST(HtmlParserTest, ImpliedEndTags) {
  EXPECT_EQ(parse_shape("<p>one<p>two<div>three</div>"),
            "#doc(p('one') p('two') div('three'))");
  EXPECT_EQ(parse_shape("<ul><li>a<li>b</ul>"), "#doc(ul(li('a') li('b')))");
  EXPECT_EQ(parse_shape("<table><tr><td>a<td>b<tr><td>c</table>"),
            "#doc(table(tr(td('a') td('b')) tr(td('c'))))");
  EXPECT_EQ(parse_shape("<select><option>a<option>b</select>"),
            "#doc(select(option('a') option('b')))");
  EXPECT_EQ(parse_shape("<select name=a><option>x<input name=b>"),
            "#doc(select(option('x')) input)");
}

TEST(HtmlParserTest, StrayAndMismatchedEndTagsAreIgnored) {
  EXPECT_EQ(parse_shape("</div><b>x</i>y</b>z"), "#doc(b('xy') 'z')");
  EXPECT_EQ(parse_shape("<div><span>a</div>b"), "#doc(div(span('a')) 'b')");
}

TEST(HtmlParserTest, RawTextElementsAreOpaque) {
  EXPECT_EQ(parse_shape("<script>if (a<b) document.write('<input>')</script><input>"),
            "#doc(script('if (a<b) document.write('<input>')') input)");
  EXPECT_EQ(parse_shape("<style>p > a {}</STYLE>x"), "#doc(style('p > a {}') 'x')");
  EXPECT_EQ(parse_shape("<textarea>a &amp; <b>b</b></textarea>"),
            "#doc(textarea('a & <b>b</b>'))");
}

TEST(HtmlParserTest, CommentsDoctypeAndProcessingInstructionsVanish) {
  EXPECT_EQ(parse_shape("<!DOCTYPE html><!-- <input> --><?xml x?><p>a</p><!-- open"),
            "#doc(p('a'))");
}

TEST(HtmlParserTest, TagCutOffAtEndOfInputIsDropped) {
  EXPECT_EQ(parse_shape("<p>a<input name=\"x"), "#doc(p('a'))");
  EXPECT_EQ(parse_shape("<p>a<"), "#doc(p('a<'))");
}

TEST(HtmlParserTest, NestedFormsAreFlattened) {
  EXPECT_EQ(parse_shape("<form><form><input></form></form>"), "#doc(form(input))");
}

TEST(HtmlParserTest, LiteralLessThanIsText) {
  EXPECT_EQ(parse_shape("a < b <3 c"), "#doc('a < b <3 c')");
}

TEST(HtmlParserTest, TextContentDecodesAndConcatenates) {
  auto doc = Document::parse("<div>Fish &amp; <b>chips</b><script>x</script></div>");
  const Node* div = find(doc.root(), "div");
  ASSERT_NE(div, nullptr);
  EXPECT_EQ(text_content(*div, [](const Node& n) { return n.is_element("script"); }),
            " Fish & chips ");
}

TEST(HtmlParserTest, PreviousSiblingAndParentLinks) {
  auto doc = Document::parse("<p>a<b>b</b><input></p>");
  const Node* input = find(doc.root(), "input");
  ASSERT_NE(input, nullptr);
  ASSERT_NE(input->previous_sibling(), nullptr);
  EXPECT_TRUE(input->previous_sibling()->is_element("b"));
  EXPECT_TRUE(input->parent->is_element("p"));
  EXPECT_EQ(input->previous_sibling()->previous_sibling()->text, "a");
  EXPECT_EQ(input->previous_sibling()->previous_sibling()->previous_sibling(), nullptr);
}

TEST(HtmlParserTest, SurvivesGarbage) {
  const std::string inputs[] = {"", "<", ">", "<<>>", "</", "<!--", "<a b=\"", "&", "<><><>",
                                "<input name='a'b=c>", std::string("\0<p>\0", 5)};
  for (const std::string& in : inputs) {
    auto doc = Document::parse(in);
    EXPECT_EQ(doc.root().type, NodeType::kDocument) << in;
  }
}

}  // namespace
}  // namespace fieldsense::html
