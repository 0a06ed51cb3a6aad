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
#include <cctype>
#include <unordered_map>

#include "fieldsense/default_resources.h"
#include "fieldsense/entities.h"
#include "fieldsense/url.h"

namespace fieldsense {
namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }

void push_token(std::string_view piece, std::vector<std::string>& out) {
  if (piece.empty()) return;
  if (std::all_of(piece.begin(), piece.end(),
                  [](unsigned char c) { return is_digit(c); })) {
    return;
  }
  std::string token(piece);
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  out.push_back(std::move(token));
}

// Splits one run of word bytes at digit and camelCase boundaries.
void split_run(std::string_view run, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < run.size(); ++i) {
    const auto prev = static_cast<unsigned char>(run[i - 1]);
    const auto cur = static_cast<unsigned char>(run[i]);
    const bool next_lower =
        i + 1 < run.size() && is_lower(static_cast<unsigned char>(run[i + 1]));
    const bool boundary =
        is_digit(prev) != is_digit(cur) ||        // "email2" | "stress"
        (is_lower(prev) && is_upper(cur)) ||      // "first" | "Name"
        (is_upper(prev) && is_upper(cur) && next_lower);  // "HTML" | "Parser"
    if (boundary) {
      push_token(run.substr(start, i - start), out);
      start = i;
    }
  }
  push_token(run.substr(start), out);
}

void split_words(std::string_view text, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_word_byte(text[i])) ++i;
    if (i > start) split_run(text.substr(start, i - start), out);
  }
}

std::set<std::string, std::less<>> parse_word_list(std::string_view text) {
  std::set<std::string, std::less<>> words;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = collapse_whitespace(line);
    std::transform(line.begin(), line.end(), line.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!line.empty()) words.insert(std::move(line));
    start = end + 1;
  }
  return words;
}

}  // namespace

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::kLabel: return "label";
    case Channel::kName: return "name";
    case Channel::kId: return "id";
    case Channel::kType: return "type";
    case Channel::kUrl: return "url";
  }
  return "";
}

std::optional<Channel> channel_from_name(std::string_view name) {
  for (Channel c : kChannels) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

const std::string& channel_text(const FieldFeatures& field, Channel channel) {
  switch (channel) {
    case Channel::kLabel: return field.label_text;
    case Channel::kName: return field.name;
    case Channel::kId: return field.id;
    case Channel::kType: return field.control_type;
    case Channel::kUrl: return field.page_url;
  }
  return field.label_text;
}

const StopLists& StopLists::defaults() {
  static const StopLists lists =
      from_text(resources::kStopWords, resources::kUrlStopWords);
  return lists;
}

std::string_view StopLists::default_words() { return resources::kStopWords; }

std::string_view StopLists::default_url_words() { return resources::kUrlStopWords; }

StopLists StopLists::from_text(std::string_view words,
                               std::string_view url_words) {
  StopLists lists;
  lists.words_ = parse_word_list(words);
  lists.url_words_ = parse_word_list(url_words);
  return lists;
}

bool StopLists::is_stop(std::string_view token, Channel channel) const {
  switch (channel) {
    case Channel::kType: return false;
    case Channel::kUrl: return url_words_.contains(token);
    default: return words_.contains(token);
  }
}

std::vector<std::string> tokenize(std::string_view raw, Channel channel) {
  const std::string text = decode_entities(raw);
  std::vector<std::string> tokens;
  if (channel == Channel::kType) {
    std::string token = collapse_whitespace(text);
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!token.empty()) tokens.push_back(std::move(token));
    return tokens;
  }
  if (channel == Channel::kUrl) {
    if (auto url = parse_url(text)) {
      split_words(url->host, tokens);
      for (const std::string& segment : url->path_segments()) {
        split_words(segment, tokens);
      }
      return tokens;
    }
    std::string_view rest = text;
    if (auto scheme = rest.find("://"); scheme != std::string_view::npos) {
      rest.remove_prefix(scheme + 3);
    }
    rest = rest.substr(0, rest.find_first_of("?#"));
    split_words(rest, tokens);
    return tokens;
  }
  split_words(text, tokens);
  return tokens;
}

std::vector<std::string> normalize(std::string_view raw, Channel channel,
                                   const StopLists& stop_lists) {
  std::vector<std::string> tokens = tokenize(raw, channel);
  std::erase_if(tokens, [&](const std::string& t) {
    return stop_lists.is_stop(t, channel);
  });
  return tokens;
}

Vocabulary::Vocabulary(ChannelTokens tokens) : tokens_(std::move(tokens)) {
  std::size_t offset = 0;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    offsets_[c] = offset;
    for (std::size_t i = 0; i < tokens_[c].size(); ++i) {
      if (!index_[c].emplace(tokens_[c][i], i).second) {
        throw Error("vocabulary channel '" +
                    std::string(channel_name(kChannels[c])) +
                    "' lists token '" + tokens_[c][i] + "' twice");
      }
    }
    offset += tokens_[c].size();
  }
  total_width_ = offset;
}

std::vector<ChannelSpan> Vocabulary::spans() const {
  std::vector<ChannelSpan> spans;
  for (Channel c : kChannels) spans.push_back({c, offset(c), size(c)});
  return spans;
}

std::optional<std::size_t> Vocabulary::index(Channel channel,
                                             std::string_view token) const {
  const auto& map = index_[static_cast<std::size_t>(channel)];
  auto it = map.find(token);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const FieldFeatures> corpus,
                            int min_frequency, const StopLists& stop_lists) {
  if (corpus.empty()) throw EmptyCorpusError();
  if (min_frequency < 1) throw Error("min_frequency must be >= 1");

  Vocabulary::ChannelTokens tokens;
  for (Channel channel : kChannels) {
    std::unordered_map<std::string, int> counts;
    for (const FieldFeatures& field : corpus) {
      for (std::string& t :
           normalize(channel_text(field, channel), channel, stop_lists)) {
        ++counts[std::move(t)];
      }
    }
    std::vector<std::pair<std::string, int>> ranked(counts.begin(),
                                                    counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    auto& out = tokens[static_cast<std::size_t>(channel)];
    for (auto& [token, count] : ranked) {
      if (count >= min_frequency) out.push_back(token);
    }
  }
  return Vocabulary(std::move(tokens));
}

std::vector<std::size_t> FeatureVector::set_positions() const {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != 0) positions.push_back(i);
  }
  return positions;
}

FeatureVector encode(const FieldFeatures& field, const Vocabulary& vocabulary) {
  FeatureVector vector(vocabulary.total_width(), vocabulary.spans());
  for (Channel channel : kChannels) {
    const std::size_t offset = vocabulary.offset(channel);
    for (const std::string& token :
         tokenize(channel_text(field, channel), channel)) {
      if (auto i = vocabulary.index(channel, token)) vector.set(offset + *i);
    }
  }
  return vector;
}

}  // namespace fieldsense
