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

#include <cstdio>
#include <set>

#include "fieldsense/forest.h"
#include "json.hpp"

namespace fieldsense {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw SchemaValidationError("model " + path + ": " + what);
}

const json& field(const json& object, const std::string& key,
                  const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) invalid(path, "missing key '" + key + "'");
  return *it;
}

std::int64_t integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) invalid(path, "expected an integer");
  return value.get<std::int64_t>();
}

std::string text(const json& value, const std::string& path) {
  if (!value.is_string()) invalid(path, "expected a string");
  return value.get<std::string>();
}

json params_to_json(const ForestParams& p) {
  return json{{"tree_count", p.tree_count},
              {"max_depth", p.max_depth},
              {"random_splits_per_node", p.random_splits_per_node},
              {"min_samples_per_leaf", p.min_samples_per_leaf},
              {"resampling", "bagging"},
              {"seed", p.seed}};
}

ForestParams params_from_json(const json& j) {
  const std::string path = "/params";
  if (!j.is_object()) invalid(path, "expected an object");
  ForestParams p;
  p.tree_count = static_cast<int>(integer(field(j, "tree_count", path), path + "/tree_count"));
  p.max_depth = static_cast<int>(integer(field(j, "max_depth", path), path + "/max_depth"));
  p.random_splits_per_node = static_cast<int>(integer(
      field(j, "random_splits_per_node", path), path + "/random_splits_per_node"));
  p.min_samples_per_leaf = static_cast<int>(integer(
      field(j, "min_samples_per_leaf", path), path + "/min_samples_per_leaf"));
  if (text(field(j, "resampling", path), path + "/resampling") != "bagging") {
    invalid(path + "/resampling", "only 'bagging' is supported");
  }
  const json& seed = field(j, "seed", path);
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    invalid(path + "/seed", "expected a non-negative integer");
  }
  p.seed = seed.get<std::uint64_t>();
  try {
    p.validate();
  } catch (const InvalidParamsError& e) {
    invalid(path, e.what());
  }
  return p;
}

Vocabulary vocabulary_from_json(const json& j) {
  const std::string path = "/vocabulary/channels";
  if (!j.is_object()) invalid("/vocabulary", "expected an object");
  const json& channels = field(j, "channels", "/vocabulary");
  if (!channels.is_array() || channels.size() != kChannelCount) {
    invalid(path, "expected " + std::to_string(kChannelCount) + " channels");
  }
  Vocabulary::ChannelTokens tokens;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const std::string at = path + "/" + std::to_string(c);
    const json& channel = channels[c];
    if (!channel.is_object()) invalid(at, "expected an object");
    if (text(field(channel, "name", at), at + "/name") != channel_name(kChannels[c])) {
      invalid(at + "/name", "expected '" + std::string(channel_name(kChannels[c])) + "'");
    }
    const json& list = field(channel, "tokens", at);
    if (!list.is_array()) invalid(at + "/tokens", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      tokens[c].push_back(text(list[i], at + "/tokens/" + std::to_string(i)));
    }
  }
  try {
    return Vocabulary(std::move(tokens));
  } catch (const Error& e) {
    invalid(path, e.what());
  }
}

DecisionTree tree_from_json(const json& j, std::size_t tree_index,
                            std::size_t class_count, std::size_t width,
                            int max_depth) {
  const std::string path = "/trees/" + std::to_string(tree_index);
  if (!j.is_array() || j.empty()) invalid(path, "expected a non-empty node array");
  const auto count = static_cast<std::int64_t>(j.size());
  std::vector<TreeNode> nodes(j.size());
  std::vector<int> parents(j.size(), 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "/" + std::to_string(i);
    const json& node = j[i];
    if (!node.is_object()) invalid(at, "expected an object");
    const json& feature = field(node, "feature", at);
    const json& histogram = field(node, "histogram", at);
    const std::int64_t left = integer(field(node, "left", at), at + "/left");
    const std::int64_t right = integer(field(node, "right", at), at + "/right");
    if (feature.is_null()) {
      if (left != TreeNode::kNone || right != TreeNode::kNone) {
        invalid(at, "leaf children must be -1");
      }
      if (!histogram.is_array() || histogram.size() != class_count) {
        invalid(at + "/histogram",
                "expected " + std::to_string(class_count) + " class counts");
      }
      std::uint64_t total = 0;
      for (std::size_t c = 0; c < histogram.size(); ++c) {
        const std::int64_t v = integer(histogram[c], at + "/histogram/" + std::to_string(c));
        if (v < 0 || v > UINT32_MAX) invalid(at + "/histogram", "count out of range");
        nodes[i].histogram.push_back(static_cast<std::uint32_t>(v));
        total += static_cast<std::uint64_t>(v);
      }
      if (total == 0) invalid(at + "/histogram", "counts sum to zero");
      continue;
    }
    const std::int64_t f = integer(feature, at + "/feature");
    if (f < 0 || static_cast<std::uint64_t>(f) >= width) {
      invalid(at + "/feature", "index outside the vocabulary width");
    }
    if (!histogram.is_null()) invalid(at + "/histogram", "internal node has a histogram");
    // Pre-order: children come after their parent.
    for (std::int64_t child : {left, right}) {
      if (child <= static_cast<std::int64_t>(i) || child >= count) {
        invalid(at, "child index out of order or range");
      }
      if (parents[child]++ != 0) invalid(at, "node reachable twice");
    }
    nodes[i].feature = static_cast<std::int32_t>(f);
    nodes[i].left = static_cast<std::int32_t>(left);
    nodes[i].right = static_cast<std::int32_t>(right);
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (parents[i] != 1) invalid(path + "/" + std::to_string(i), "unreachable node");
  }
  DecisionTree tree(std::move(nodes));
  if (tree.depth() > max_depth) invalid(path, "deeper than max_depth");
  return tree;
}

json to_json(const ForestModel& model) {
  json vocabulary_channels = json::array();
  for (Channel c : kChannels) {
    json tokens = json::array();
    for (const std::string& t : model.vocabulary.tokens(c)) tokens.push_back(t);
    vocabulary_channels.push_back(
        json{{"name", std::string(channel_name(c))}, {"tokens", std::move(tokens)}});
  }
  json trees = json::array();
  for (const DecisionTree& tree : model.trees) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes()) {
      json n = json::object();
      if (node.is_leaf()) {
        n["feature"] = nullptr;
        n["histogram"] = node.histogram;
      } else {
        n["feature"] = node.feature;
        n["histogram"] = nullptr;
      }
      n["left"] = node.left;
      n["right"] = node.right;
      nodes.push_back(std::move(n));
    }
    trees.push_back(std::move(nodes));
  }
  return json{{"format_version", kModelFormatVersion},
              {"mode", std::string(mode_name(model.mode))},
              {"params", params_to_json(model.params)},
              {"class_names", model.class_names},
              {"vocabulary", json{{"channels", std::move(vocabulary_channels)}}},
              {"trees", std::move(trees)},
              {"model_version", model.model_version}};
}

}  // namespace

std::string save(const ForestModel& model) { return to_json(model).dump() + "\n"; }

ForestModel load(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw SchemaValidationError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("/", "expected an object");
  const json& version = field(j, "format_version", "");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kModelFormatVersion) {
    throw VersionMismatchError("unsupported model format_version " + version.dump() +
                               " (expected " + std::to_string(kModelFormatVersion) + ")");
  }

  ForestModel model;
  const std::string mode = text(field(j, "mode", ""), "/mode");
  if (mode == "multiclass") {
    model.mode = ForestMode::kMulticlass;
  } else if (mode == "binary") {
    model.mode = ForestMode::kBinary;
  } else {
    invalid("/mode", "expected 'multiclass' or 'binary'");
  }
  model.params = params_from_json(field(j, "params", ""));

  const json& names = field(j, "class_names", "");
  if (!names.is_array() || names.empty()) invalid("/class_names", "expected a non-empty array");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string name = text(names[i], "/class_names/" + std::to_string(i));
    if (name.empty() || !seen.insert(name).second) {
      invalid("/class_names/" + std::to_string(i), "empty or duplicate class");
    }
    model.class_names.push_back(std::move(name));
  }
  if (model.mode == ForestMode::kBinary &&
      (model.class_names.size() != 2 || model.class_names[1] != kOtherClass)) {
    invalid("/class_names", "binary models need exactly [target, \"other\"]");
  }

  model.vocabulary = vocabulary_from_json(field(j, "vocabulary", ""));

  const json& trees = field(j, "trees", "");
  if (!trees.is_array() || trees.empty()) invalid("/trees", "expected a non-empty array");
  if (trees.size() != static_cast<std::size_t>(model.params.tree_count)) {
    invalid("/trees", "tree count does not match params.tree_count");
  }
  for (std::size_t t = 0; t < trees.size(); ++t) {
    model.trees.push_back(tree_from_json(trees[t], t, model.class_names.size(),
                                         model.vocabulary.total_width(),
                                         model.params.max_depth));
  }
  model.model_version = text(field(j, "model_version", ""), "/model_version");
  return model;
}

std::string content_version(const ForestModel& model) {
  ForestModel copy = model;
  copy.model_version.clear();
  // FNV-1a, 64-bit.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : save(copy)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[24];
  std::snprintf(buffer, sizeof(buffer), "fs1-%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace fieldsense
