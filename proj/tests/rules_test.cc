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

#include <random>

#include <gtest/gtest.h>

#include "fieldsense/dataset.h"
#include "fieldsense/synthetic.h"
#include "test_support.h"

namespace fieldsense {
namespace {

constexpr std::string_view kEmailRule = R"([
  {"id": "email", "class": "email", "channels": ["name", "id", "label"],
   "pattern": "(^|[^a-z])e[-_]?mail", "priority": 1}
])";

FieldFeatures amazon() {
  return {"Email or mobile phone number", "email", "ap_email", "email",
          "https://www.amazon.in/ap/signin"};
}

FieldFeatures linkedin() {
  return {"Email or phone", "session_key", "username", "text",
          "https://www.linkedin.com/login?trk=guest_h"};
}

TEST(RuleSetTest, DefaultsLoadAndCoverShippedClasses) {
  const RuleSet& rules = RuleSet::defaults();
  EXPECT_FALSE(rules.rules().empty());
  EXPECT_EQ(rules.class_names(),
            (std::vector<std::string>{"password", "email", "first_name", "last_name", "phone",
                                      "username", "state", "address"}));
  EXPECT_NO_THROW(RuleSet::load(read_file(FIELDSENSE_SOURCE_DIR "/data/default_rules.json")));
}

TEST(RuleSetTest, DefaultsOnlyUseNameIdLabel) {
  for (const Rule& rule : RuleSet::defaults().rules()) {
    for (Channel c : rule.channels) {
      EXPECT_TRUE(c == Channel::kName || c == Channel::kId || c == Channel::kLabel)
          << rule.rule_id;
    }
  }
}

TEST(RuleSetTest, InvalidPatternNamesRuleAndPosition) {
  try {
    RuleSet::load(R"([{"id": "broken", "class": "x", "channels": ["name"], "pattern": "("}])");
    FAIL() << "expected RuleParseError";
  } catch (const RuleParseError& e) {
    EXPECT_EQ(e.rule_id(), "broken");
    EXPECT_GE(e.position(), 0);
    EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
  }
}

TEST(RuleSetTest, EmptyListMatchesNothing) {
  const RuleSet rules = RuleSet::load("[]");
  EXPECT_TRUE(rules.rules().empty());
  EXPECT_FALSE(rules.apply(amazon()));
}

TEST(RuleSetTest, StructuralErrors) {
  EXPECT_THROW(RuleSet::load("{}"), RuleParseError);
  EXPECT_THROW(RuleSet::load("[1]"), RuleParseError);
  EXPECT_THROW(RuleSet::load(R"([{"class": "x", "channels": [], "pattern": "a"}])"),
               RuleParseError);
  EXPECT_THROW(RuleSet::load(R"([{"class": "x", "channels": ["value"], "pattern": "a"}])"),
               RuleParseError);
  EXPECT_THROW(RuleSet::load(R"([{"channels": ["name"], "pattern": "a"}])"), RuleParseError);
  EXPECT_THROW(RuleSet::load(R"([{"class": "x", "channels": ["name"]}])"), RuleParseError);
  EXPECT_THROW(RuleSet::load("[{"), RuleParseError);
}

TEST(RuleSetTest, DuplicateIdRejected) {
  try {
    RuleSet::load(R"([{"id": "a", "class": "x", "channels": ["name"], "pattern": "x"},
                      {"id": "a", "class": "y", "channels": ["name"], "pattern": "y"}])");
    FAIL() << "expected RuleParseError";
  } catch (const RuleParseError& e) {
    EXPECT_EQ(e.rule_id(), "a");
  }
}

TEST(RuleSetTest, OrderIsPriorityThenFileOrder) {
  const RuleSet rules = RuleSet::load(R"([
    {"id": "late", "class": "a", "channels": ["name"], "pattern": "x", "priority": 5},
    {"id": "early", "class": "b", "channels": ["name"], "pattern": "x", "priority": 1},
    {"id": "tie", "class": "c", "channels": ["name"], "pattern": "x", "priority": 5}
  ])");
  ASSERT_EQ(rules.rules().size(), 3u);
  EXPECT_EQ(rules.rules()[0].rule_id, "early");
  EXPECT_EQ(rules.rules()[1].rule_id, "late");
  EXPECT_EQ(rules.rules()[2].rule_id, "tie");
}

TEST(ApplyTest, AmazonRowMatchesByName) {
  const RuleSet rules = RuleSet::load(kEmailRule);
  EXPECT_EQ(rules.apply(amazon()), (RuleMatch{"email", "email"}));
  FieldFeatures name_only{"", "email", "", "text", "https://x.example/"};
  EXPECT_EQ(rules.apply(name_only), (RuleMatch{"email", "email"}));
}

TEST(ApplyTest, LinkedInRowMatchesViaLabel) {
  const RuleSet rules = RuleSet::load(kEmailRule);
  const FieldFeatures f = linkedin();
  EXPECT_EQ(rules.apply(f), (RuleMatch{"email", "email"}));
  FieldFeatures no_label = f;
  no_label.label_text.clear();
  EXPECT_FALSE(rules.apply(no_label));
}

TEST(ApplyTest, CaseInsensitiveSearchOnRawText) {
  const RuleSet rules = RuleSet::load(kEmailRule);
  EXPECT_TRUE(rules.apply({"", "", "LOGIN_E-MAIL", "text", "https://x.example/"}));
  EXPECT_FALSE(rules.apply({"", "", "hemail", "text", "https://x.example/"}));
}

TEST(ApplyTest, UndeclaredChannelsAreIgnored) {
  const RuleSet rules = RuleSet::load(kEmailRule);
  EXPECT_FALSE(rules.apply({"", "x", "y", "email", "https://email.example/email"}));
}

TEST(ApplyTest, FavColorHasNoDefaultRule) {
  EXPECT_FALSE(RuleSet::defaults().apply({"", "fav_color", "", "text", "https://x.example/"}));
}

TEST(ApplyTest, DefaultRulesOnLoginFormsRows) {
  const auto rows = load_csv(testing::read_fixture("login_forms.csv"));
  const char* expected[] = {"email",      "email", "email",    "password", "email",
                            "first_name", "last_name", "email", "password"};
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto match = RuleSet::defaults().apply(rows[i].features);
    ASSERT_TRUE(match) << "row " << i;
    EXPECT_EQ(match->class_name, expected[i]) << "row " << i;
  }
}

TEST(ApplyTest, DefaultRulesOnCommonFields) {
  struct Case {
    FieldFeatures field;
    const char* expected;
  };
  const Case cases[] = {
      {{"Password", "pass", "", "password", "https://x.example/"}, "password"},
      {{"", "given-name", "", "text", "https://x.example/"}, "first_name"},
      {{"Telephone", "", "", "tel", "https://x.example/"}, "phone"},
      {{"", "", "user_name", "text", "https://x.example/"}, "username"},
      {{"State / Province", "", "", "select", "https://x.example/"}, "state"},
      {{"Street address", "", "", "text", "https://x.example/"}, "address"},
  };
  for (const Case& c : cases) {
    const auto match = RuleSet::defaults().apply(c.field);
    ASSERT_TRUE(match) << c.expected;
    EXPECT_EQ(match->class_name, c.expected);
  }
}

// Removing every rule after the deciding one never changes the answer.
TEST(ApplyTest, FirstMatchProperty) {
  const RuleSet& rules = RuleSet::defaults();
  const auto rows = gen_synthetic(ClassProfile::defaults(), 500, 0.3, 12);
  for (const DatasetRow& row : rows) {
    const auto index = rules.first_match(row.features);
    if (!index) {
      for (const Rule& rule : rules.rules()) EXPECT_FALSE(rule_matches(rule, row.features));
      continue;
    }
    for (std::size_t i = 0; i < *index; ++i) {
      EXPECT_FALSE(rule_matches(rules.rules()[i], row.features));
    }
    EXPECT_TRUE(rule_matches(rules.rules()[*index], row.features));
    const auto match = rules.apply(row.features);
    ASSERT_TRUE(match);
    EXPECT_EQ(match->rule_id, rules.rules()[*index].rule_id);
    EXPECT_EQ(match->class_name, rules.rules()[*index].class_name);
  }
}

TEST(ApplyTest, IgnoresUrlAndType) {
  const RuleSet& rules = RuleSet::defaults();
  std::mt19937 rng(3);
  const auto rows = gen_synthetic(ClassProfile::defaults(), 200, 0.1, 4);
  for (const DatasetRow& row : rows) {
    FieldFeatures changed = row.features;
    changed.page_url = "https://password.example/email/phone";
    changed.control_type = rng() % 2 ? "password" : "email";
    EXPECT_EQ(rules.apply(changed), rules.apply(row.features));
  }
}

}  // namespace
}  // namespace fieldsense
