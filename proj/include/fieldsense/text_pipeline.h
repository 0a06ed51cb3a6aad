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

#ifndef FIELDSENSE_TEXT_PIPELINE_H_
#define FIELDSENSE_TEXT_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/errors.h"
#include "fieldsense/field_extractor.h"

namespace fieldsense {

// Feature channels, in encoding order.
enum class Channel : std::uint8_t { kLabel, kName, kId, kType, kUrl };

inline constexpr std::size_t kChannelCount = 5;
inline constexpr std::array<Channel, kChannelCount> kChannels = {
    Channel::kLabel, Channel::kName, Channel::kId, Channel::kType,
    Channel::kUrl};

std::string_view channel_name(Channel channel);
std::optional<Channel> channel_from_name(std::string_view name);
const std::string& channel_text(const FieldFeatures& field, Channel channel);

class StopLists {
 public:
  // The checked-in lists under data/.
  static const StopLists& defaults();
  // One token per line; blank lines and '#' comments ignored.
  static StopLists from_text(std::string_view words, std::string_view url_words);
  // Raw text of the shipped lists.
  static std::string_view default_words();
  static std::string_view default_url_words();

  bool is_stop(std::string_view token, Channel channel) const;

 private:
  std::set<std::string, std::less<>> words_;
  std::set<std::string, std::less<>> url_words_;
};

// Lowercase tokens split on whitespace, punctuation, '_', '-', digit and
// camelCase boundaries. Pure-digit tokens are dropped; no stop filtering.
// kType yields the whole control type as one token; kUrl tokenizes host and
// path segments only.
std::vector<std::string> tokenize(std::string_view raw, Channel channel);

// tokenize() followed by stop-word removal.
std::vector<std::string> normalize(
    std::string_view raw, Channel channel,
    const StopLists& stop_lists = StopLists::defaults());

struct ChannelSpan {
  Channel channel;
  std::size_t offset;
  std::size_t length;

  bool operator==(const ChannelSpan&) const = default;
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("cannot build a vocabulary from an empty corpus") {}
};

// Per-channel token dictionaries laid end to end.
class Vocabulary {
 public:
  using ChannelTokens = std::array<std::vector<std::string>, kChannelCount>;

  Vocabulary() = default;
  // Throws Error when a channel lists a token twice.
  explicit Vocabulary(ChannelTokens tokens);

  std::span<const std::string> tokens(Channel channel) const {
    return tokens_[static_cast<std::size_t>(channel)];
  }
  std::size_t size(Channel channel) const { return tokens(channel).size(); }
  std::size_t offset(Channel channel) const {
    return offsets_[static_cast<std::size_t>(channel)];
  }
  std::size_t total_width() const { return total_width_; }
  std::vector<ChannelSpan> spans() const;

  // Position of the token within its channel.
  std::optional<std::size_t> index(Channel channel,
                                   std::string_view token) const;

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  ChannelTokens tokens_;
  std::array<std::map<std::string, std::size_t, std::less<>>, kChannelCount>
      index_;
  std::array<std::size_t, kChannelCount> offsets_{};
  std::size_t total_width_ = 0;
};

// Keeps tokens seen at least min_frequency times, ordered by descending
// frequency then lexicographically.
Vocabulary build_vocabulary(std::span<const FieldFeatures> corpus,
                            int min_frequency = 1,
                            const StopLists& stop_lists = StopLists::defaults());

// Multi-hot presence bits over a vocabulary.
class FeatureVector {
 public:
  FeatureVector() = default;
  FeatureVector(std::size_t width, std::vector<ChannelSpan> spans)
      : bits_(width, 0), spans_(std::move(spans)) {}
  explicit FeatureVector(std::vector<std::uint8_t> bits)
      : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b != 0;
  }

  std::size_t width() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i) { bits_[i] = 1; }
  std::span<const ChannelSpan> spans() const { return spans_; }
  std::vector<std::size_t> set_positions() const;

  bool operator==(const FeatureVector& other) const {
    return bits_ == other.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::vector<ChannelSpan> spans_;
};

// Out-of-vocabulary tokens are ignored, so all-zero vectors are legal.
FeatureVector encode(const FieldFeatures& field, const Vocabulary& vocabulary);

}  // namespace fieldsense

#endif  // FIELDSENSE_TEXT_PIPELINE_H_
