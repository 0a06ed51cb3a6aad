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

#include "fieldsense/text_pipeline.h"

#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "fieldsense/dataset.h"
#include "fieldsense/synthetic.h"
#include "test_support.h"

namespace fieldsense {
namespace {

using Tokens = std::vector<std::string>;

TEST(NormalizeTest, AmazonLabel) {
  EXPECT_EQ(normalize("Email or mobile phone number", Channel::kLabel),
            (Tokens{"email", "mobile", "phone", "number"}));
}

TEST(NormalizeTest, FacebookName) {
  EXPECT_EQ(normalize("reg_email__", Channel::kName), (Tokens{"reg", "email"}));
}

TEST(NormalizeTest, EmptyInput) { EXPECT_TRUE(normalize("", Channel::kLabel).empty()); }

TEST(NormalizeTest, AmazonUrl) {
  EXPECT_EQ(normalize("https://www.amazon.in/ap/signin", Channel::kUrl),
            (Tokens{"amazon", "in", "ap", "signin"}));
}

TEST(NormalizeTest, SplitsCamelDigitsAndPunctuation) {
  EXPECT_EQ(normalize("firstName", Channel::kName), (Tokens{"first", "name"}));
  EXPECT_EQ(normalize("HTMLParser2go", Channel::kId), (Tokens{"html", "parser", "go"}));
  EXPECT_EQ(normalize("username_01", Channel::kName), (Tokens{"username"}));
  EXPECT_EQ(normalize("email2stress", Channel::kId), (Tokens{"email", "stress"}));
  EXPECT_EQ(normalize("u_0_s", Channel::kId), (Tokens{"u", "s"}));
  EXPECT_EQ(normalize("login-passwd", Channel::kId), (Tokens{"login", "passwd"}));
  EXPECT_EQ(normalize("E-mail:", Channel::kLabel), (Tokens{"e", "mail"}));
  EXPECT_EQ(normalize("ADDRESS LINE 1", Channel::kLabel), (Tokens{"address", "line"}));
}

TEST(NormalizeTest, DecodesEntitiesAndDropsStopWords) {
  EXPECT_EQ(normalize("Please enter your e&#45;mail &amp; phone", Channel::kLabel),
            (Tokens{"e", "mail", "phone"}));
  EXPECT_EQ(normalize("Enter your email&rdsp;address", Channel::kLabel),
            (Tokens{"email", "rdsp", "address"}));
}

TEST(NormalizeTest, KeepsNonAsciiWords) {
  EXPECT_EQ(normalize("Correo electr\xC3\xB3nico", Channel::kLabel),
            (Tokens{"correo", "electr\xC3\xB3nico"}));
}

TEST(NormalizeTest, TypeChannelIsOneCategoricalToken) {
  EXPECT_EQ(normalize("Email", Channel::kType), (Tokens{"email"}));
  EXPECT_EQ(normalize("datetime-local", Channel::kType), (Tokens{"datetime-local"}));
  EXPECT_EQ(normalize("", Channel::kType), Tokens{});
}

TEST(NormalizeTest, UrlChannelDropsSchemeQueryAndUrlStopWords) {
  EXPECT_EQ(normalize("https://www.linkedin.com/login?trk=guest_h", Channel::kUrl),
            (Tokens{"linkedin", "login"}));
  EXPECT_EQ(normalize("http://shop.example.org/checkout/index.php#top", Channel::kUrl),
            (Tokens{"shop", "example", "checkout", "index"}));
  // Only the URL list applies to this channel.
  EXPECT_EQ(normalize("https://a.example/x", Channel::kUrl), (Tokens{"a", "example", "x"}));
}

TEST(NormalizeTest, CustomStopLists) {
  const StopLists lists = StopLists::from_text("# comment\nEmail\n\n", "amazon");
  EXPECT_EQ(normalize("Email or phone", Channel::kLabel, lists), (Tokens{"or", "phone"}));
  EXPECT_EQ(normalize("https://www.amazon.in/", Channel::kUrl, lists), (Tokens{"www", "in"}));
}

TEST(NormalizeTest, IdempotentOnItsOwnTokens) {
  const auto rows = gen_synthetic(ClassProfile::defaults(), 300, 0.2, 11);
  for (const DatasetRow& row : rows) {
    for (Channel c : kChannels) {
      for (const std::string& token : normalize(channel_text(row.features, c), c)) {
        EXPECT_EQ(normalize(token, c), Tokens{token}) << channel_name(c) << ": " << token;
      }
    }
  }
}

TEST(BuildVocabularyTest, SingleFieldExample) {
  const std::vector<FieldFeatures> corpus = {
      {"Email:", "email", "e2", "email", "https://a.example/x"}};
  const Vocabulary v = build_vocabulary(corpus, 1);
  EXPECT_EQ(std::vector<std::string>(v.tokens(Channel::kLabel).begin(),
                                     v.tokens(Channel::kLabel).end()),
            Tokens{"email"});
  EXPECT_EQ(Tokens(v.tokens(Channel::kName).begin(), v.tokens(Channel::kName).end()),
            Tokens{"email"});
  EXPECT_EQ(Tokens(v.tokens(Channel::kId).begin(), v.tokens(Channel::kId).end()),
            Tokens{"e"});
  EXPECT_EQ(Tokens(v.tokens(Channel::kType).begin(), v.tokens(Channel::kType).end()),
            Tokens{"email"});
  // All three URL tokens occur once, so they sort lexicographically.
  EXPECT_EQ(Tokens(v.tokens(Channel::kUrl).begin(), v.tokens(Channel::kUrl).end()),
            (Tokens{"a", "example", "x"}));
  EXPECT_EQ(v.total_width(), 7u);
}

TEST(BuildVocabularyTest, MinFrequencyDropsRareTokens) {
  const std::vector<FieldFeatures> corpus = {
      {"Email:", "email", "email2stress", "email", "https://a.example/x"},
      {"Email", "email", "email", "email", "https://a.example/y"}};
  const Vocabulary v = build_vocabulary(corpus, 2);
  for (Channel c : kChannels) {
    EXPECT_FALSE(v.index(c, "stress")) << channel_name(c);
  }
  EXPECT_TRUE(v.index(Channel::kId, "email"));
  EXPECT_TRUE(v.index(Channel::kUrl, "example"));
  EXPECT_FALSE(v.index(Channel::kUrl, "x"));
}

TEST(BuildVocabularyTest, OrdersByFrequencyThenLexicographically) {
  const std::vector<FieldFeatures> corpus = {{"b a c", "", "", "text", ""},
                                             {"c b", "", "", "text", ""},
                                             {"d c", "", "", "text", ""}};
  const Vocabulary v = build_vocabulary(corpus, 1, StopLists::from_text("", ""));
  EXPECT_EQ(Tokens(v.tokens(Channel::kLabel).begin(), v.tokens(Channel::kLabel).end()),
            (Tokens{"c", "b", "a", "d"}));
}

TEST(BuildVocabularyTest, EmptyCorpusThrows) {
  EXPECT_THROW(build_vocabulary({}, 1), EmptyCorpusError);
}

TEST(BuildVocabularyTest, Deterministic) {
  const auto rows = gen_synthetic(ClassProfile::defaults(), 200, 0.1, 3);
  std::vector<FieldFeatures> corpus;
  for (const auto& r : rows) corpus.push_back(r.features);
  EXPECT_EQ(build_vocabulary(corpus), build_vocabulary(corpus));
}

TEST(BuildVocabularyTest, MonotoneUnderAddedRows) {
  const auto rows = gen_synthetic(ClassProfile::defaults(), 300, 0.1, 5);
  std::vector<FieldFeatures> corpus;
  for (std::size_t n = 0; n < rows.size(); n += 37) {
    std::vector<FieldFeatures> smaller = corpus;
    corpus.push_back(rows[n].features);
    if (smaller.empty()) continue;
    const Vocabulary before = build_vocabulary(smaller);
    const Vocabulary after = build_vocabulary(corpus);
    for (Channel c : kChannels) {
      for (const std::string& token : before.tokens(c)) {
        EXPECT_TRUE(after.index(c, token)) << token;
      }
    }
  }
}

TEST(VocabularyTest, RejectsDuplicateTokens) {
  Vocabulary::ChannelTokens tokens;
  tokens[0] = {"a", "a"};
  EXPECT_THROW(Vocabulary{tokens}, Error);
}

TEST(VocabularyTest, SpansTileTheWidth) {
  Vocabulary::ChannelTokens tokens;
  tokens[0] = {"a", "b"};
  tokens[2] = {"c"};
  tokens[4] = {"d", "e", "f"};
  const Vocabulary v(tokens);
  EXPECT_EQ(v.total_width(), 6u);
  EXPECT_EQ(v.spans(), (std::vector<ChannelSpan>{{Channel::kLabel, 0, 2},
                                                  {Channel::kName, 2, 0},
                                                  {Channel::kId, 2, 1},
                                                  {Channel::kType, 3, 0},
                                                  {Channel::kUrl, 3, 3}}));
}

TEST(EncodeTest, SingleKnownToken) {
  Vocabulary::ChannelTokens tokens;
  tokens[0] = {"email", "phone"};
  tokens[1] = {"user"};
  const Vocabulary v(tokens);
  const FeatureVector x = encode({"Your email", "login", "", "text", ""}, v);
  EXPECT_EQ(x.width(), 3u);
  EXPECT_EQ(x.set_positions(), std::vector<std::size_t>{0});
}

TEST(EncodeTest, OutOfVocabularyIsAllZero) {
  const std::vector<FieldFeatures> corpus = {
      {"Email", "email", "ap_email", "email", "https://www.amazon.in/ap/signin"}};
  const Vocabulary v = build_vocabulary(corpus);
  const FeatureVector x = encode({"Zebra", "quux", "frob", "week", "https://z.example/q"}, v);
  EXPECT_EQ(x.width(), v.total_width());
  EXPECT_TRUE(x.set_positions().empty());
}

TEST(EncodeTest, MultiHotWithinAChannel) {
  const std::vector<FieldFeatures> corpus = {{"Email or phone", "", "", "text", ""}};
  const Vocabulary v = build_vocabulary(corpus);
  EXPECT_EQ(encode(corpus[0], v).set_positions().size(), 3u);  // email, phone, text
}

// Token lists written out by hand from the nine fixture rows, stop words
// removed. The vocabulary order is recomputed from these counts below.
const std::map<Channel, std::vector<Tokens>> kLoginFormsHandTokens = {
    {Channel::kLabel,
     {{"email", "mobile", "phone", "number"},
      {"email", "rdsp", "address"},
      {"email", "phone"},
      {"password"},
      {"email", "phone"},
      {"first", "name"},
      {"surname"},
      {"mobile", "number", "email", "address"},
      {"new", "password"}}},
    {Channel::kName,
     {{"email"},
      {"username"},
      {"session", "key"},
      {"session", "password"},
      {"email"},
      {"firstname"},
      {"lastname"},
      {"reg", "email"},
      {"reg", "password"}}},
    {Channel::kId,
     {{"ap", "email"},
      {"login", "username"},
      {"username"},
      {"password"},
      {"email"},
      {"u", "n"},
      {"u", "p"},
      {"u", "s"},
      {"u", "j"}}},
    {Channel::kType,
     {{"email"},
      {"text"},
      {"text"},
      {"password"},
      {"email"},
      {"text"},
      {"text"},
      {"text"},
      {"password"}}},
    {Channel::kUrl,
     {{"amazon", "in", "ap", "signin"},
      {"login", "yahoo"},
      {"linkedin", "login"},
      {"linkedin", "new", "login"},
      {"facebook"},
      {"facebook"},
      {"facebook"},
      {"facebook"},
      {"facebook"}}},
};

Tokens rank_by_hand(const std::vector<Tokens>& rows) {
  std::map<std::string, int> counts;
  for (const Tokens& row : rows) {
    for (const std::string& t : row) ++counts[t];
  }
  Tokens order;
  for (const auto& [t, n] : counts) order.push_back(t);
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return counts[a] > counts[b];
                   });
  return order;
}

TEST(EncodeTest, LoginFormsLinkedInRowMatchesHandTabulation) {
  const auto rows = load_csv(testing::read_fixture("login_forms.csv"));
  std::vector<FieldFeatures> corpus;
  for (const auto& r : rows) corpus.push_back(r.features);
  const Vocabulary v = build_vocabulary(corpus);

  std::size_t offset = 0;
  std::vector<std::size_t> expected;
  const std::size_t linkedin = 2;
  for (Channel c : kChannels) {
    const Tokens order = rank_by_hand(kLoginFormsHandTokens.at(c));
    EXPECT_EQ(Tokens(v.tokens(c).begin(), v.tokens(c).end()), order) << channel_name(c);
    for (const std::string& t : kLoginFormsHandTokens.at(c)[linkedin]) {
      expected.push_back(offset + (std::find(order.begin(), order.end(), t) - order.begin()));
    }
    offset += order.size();
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(v.total_width(), offset);
  EXPECT_EQ(encode(rows[linkedin].features, v).set_positions(), expected);
  // Pinned from the tabulation: label email/phone, name session/key, id
  // username, type text, url login/linkedin.
  EXPECT_EQ(expected, (std::vector<std::size_t>{0, 1, 14, 16, 21, 29, 33, 34}));
}

std::string random_text(std::mt19937& rng) {
  static const std::string kAlphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJ0123456789 _-:./?&;#@*()\t\xC3\xA9";
  std::uniform_int_distribution<std::size_t> length(0, 24);
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  std::string s;
  for (std::size_t n = length(rng); n > 0; --n) s += kAlphabet[pick(rng)];
  return s;
}

FieldFeatures random_field(std::mt19937& rng) {
  static const char* kUrls[] = {"https://www.amazon.in/ap/signin", "https://login.yahoo.com/",
                                "https://shop.example.com/checkout/billing", "garbage url"};
  FieldFeatures f;
  f.label_text = random_text(rng);
  f.name = random_text(rng);
  f.id = random_text(rng);
  f.control_type = rng() % 2 ? "text" : random_text(rng);
  f.page_url = kUrls[rng() % 4];
  return f;
}

std::string& mutable_channel(FieldFeatures& f, Channel c) {
  switch (c) {
    case Channel::kLabel: return f.label_text;
    case Channel::kName: return f.name;
    case Channel::kId: return f.id;
    case Channel::kType: return f.control_type;
    case Channel::kUrl: return f.page_url;
  }
  return f.label_text;
}

class EncodingPropertyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const auto& row : gen_synthetic(ClassProfile::defaults(), 500, 0.1, 21)) {
      corpus_.push_back(row.features);
    }
    vocabulary_ = build_vocabulary(corpus_);
  }

  std::vector<FieldFeatures> corpus_;
  Vocabulary vocabulary_;
};

TEST_F(EncodingPropertyTest, WidthIsTotalWidthOnRandomFields) {
  std::mt19937 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const FeatureVector x = encode(random_field(rng), vocabulary_);
    ASSERT_EQ(x.width(), vocabulary_.total_width());
    for (std::size_t p : x.set_positions()) {
      int owners = 0;
      for (const ChannelSpan& s : x.spans()) owners += p >= s.offset && p < s.offset + s.length;
      ASSERT_EQ(owners, 1);
    }
  }
}

TEST_F(EncodingPropertyTest, NameMutationStaysInNameSpan) {
  std::mt19937 rng(2);
  const std::size_t lo = vocabulary_.offset(Channel::kName);
  const std::size_t hi = lo + vocabulary_.size(Channel::kName);
  for (int i = 0; i < 1000; ++i) {
    FieldFeatures f = i % 2 ? random_field(rng) : corpus_[i % corpus_.size()];
    FieldFeatures g = f;
    g.name = i % 3 ? random_text(rng) : corpus_[(i * 7) % corpus_.size()].name;
    const FeatureVector a = encode(f, vocabulary_);
    const FeatureVector b = encode(g, vocabulary_);
    for (std::size_t p = 0; p < a.width(); ++p) {
      if (p >= lo && p < hi) continue;
      ASSERT_EQ(a.test(p), b.test(p)) << "bit " << p;
    }
  }
}

TEST_F(EncodingPropertyTest, EveryChannelIsIsolated) {
  std::mt19937 rng(3);
  for (Channel c : {Channel::kLabel, Channel::kId, Channel::kType, Channel::kUrl}) {
    const std::size_t lo = vocabulary_.offset(c);
    const std::size_t hi = lo + vocabulary_.size(c);
    for (int i = 0; i < 200; ++i) {
      FieldFeatures f = corpus_[i];
      FieldFeatures g = f;
      const FieldFeatures& donor = corpus_[(i * 13 + 5) % corpus_.size()];
      mutable_channel(g, c) = channel_text(donor, c);
      const FeatureVector a = encode(f, vocabulary_);
      const FeatureVector b = encode(g, vocabulary_);
      for (std::size_t p = 0; p < a.width(); ++p) {
        if (p < lo || p >= hi) {
          ASSERT_EQ(a.test(p), b.test(p));
        }
      }
    }
  }
}

TEST_F(EncodingPropertyTest, EncodeMatchesNormalizedTokenLookup) {
  for (const FieldFeatures& f : corpus_) {
    std::vector<std::size_t> expected;
    for (Channel c : kChannels) {
      for (const std::string& t : normalize(channel_text(f, c), c)) {
        if (auto i = vocabulary_.index(c, t)) expected.push_back(vocabulary_.offset(c) + *i);
      }
    }
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    ASSERT_EQ(encode(f, vocabulary_).set_positions(), expected);
  }
}

}  // namespace
}  // namespace fieldsense
