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

#ifndef FIELDSENSE_FOREST_H_
#define FIELDSENSE_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/errors.h"
#include "fieldsense/text_pipeline.h"

namespace fieldsense {

class EmptyTrainingSetError : public Error {
 public:
  EmptyTrainingSetError() : Error("training set is empty") {}
};

class WidthMismatchError : public Error {
 public:
  WidthMismatchError(std::size_t expected, std::size_t actual)
      : Error("feature vector width " + std::to_string(actual) +
              " does not match expected width " + std::to_string(expected)) {}
};

class UnknownClassError : public Error {
 public:
  explicit UnknownClassError(const std::string& name)
      : Error("class '" + name + "' is not in the class list") {}
};

class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

class VersionMismatchError : public Error {
 public:
  using Error::Error;
};

class SchemaValidationError : public Error {
 public:
  using Error::Error;
};

enum class ForestMode { kMulticlass, kBinary };
enum class Resampling { kBagging };

inline constexpr std::string_view kOtherClass = "other";
inline constexpr int kModelFormatVersion = 1;

std::string_view mode_name(ForestMode mode);

struct ForestParams {
  int tree_count = 16;
  int max_depth = 100;
  int random_splits_per_node = 128;
  int min_samples_per_leaf = 1;
  Resampling resampling = Resampling::kBagging;
  std::uint64_t seed = 0;

  // Throws InvalidParamsError.
  void validate() const;

  bool operator==(const ForestParams&) const = default;
};

// Flat tree node. Internal nodes send vectors with the feature bit set to
// `right` and the rest to `left`; leaves carry a class histogram.
struct TreeNode {
  static constexpr std::int32_t kNone = -1;

  std::int32_t feature = kNone;
  std::int32_t left = kNone;
  std::int32_t right = kNone;
  std::vector<std::uint32_t> histogram;
  std::vector<double> distribution;

  bool is_leaf() const { return feature == kNone; }
};

class DecisionTree {
 public:
  DecisionTree() = default;
  // Nodes in pre-order with the root first. Leaf distributions are derived
  // from the histograms.
  explicit DecisionTree(std::vector<TreeNode> nodes);

  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& leaf_for(const FeatureVector& x) const;
  // Longest root-to-leaf path, in edges.
  int depth() const;

 private:
  std::vector<TreeNode> nodes_;
};

struct ForestModel {
  ForestParams params;
  Vocabulary vocabulary;
  std::vector<std::string> class_names;
  std::vector<DecisionTree> trees;
  ForestMode mode = ForestMode::kMulticlass;
  std::string model_version;

  std::size_t class_index(std::string_view name) const;  // throws
};

struct Prediction {
  std::string class_name;
  double confidence = 0.0;
  std::vector<double> scores;  // aligned with ForestModel::class_names
};

struct LabeledVector {
  FeatureVector features;
  std::string class_name;
};

// Optional record of what each tree saw, for audits.
struct TrainingTrace {
  // Row indices drawn for each tree's bootstrap sample.
  std::vector<std::vector<std::size_t>> bootstrap;
  // For each tree and node, the row indices (with repeats) that reached it.
  std::vector<std::vector<std::vector<std::size_t>>> node_rows;
};

// Grows params.tree_count trees, each on a bootstrap resample drawn from a
// stream seeded by (params.seed, tree index). At every node
// random_splits_per_node features are drawn with replacement (all features
// when that budget reaches the width) and the one with the highest
// information gain wins, lowest index on ties. Trees are grown in
// parallel; the result does not depend on scheduling.
ForestModel train(std::span<const LabeledVector> rows,
                  const ForestParams& params,
                  std::vector<std::string> class_names, Vocabulary vocabulary,
                  ForestMode mode = ForestMode::kMulticlass,
                  TrainingTrace* trace = nullptr);

// Mean of the leaf distributions; ties go to the earlier class.
Prediction predict(const ForestModel& model, const FeatureVector& x);

// Canonical JSON: sorted keys, integers only, no whitespace.
std::string save(const ForestModel& model);
// Throws VersionMismatchError or SchemaValidationError.
ForestModel load(std::string_view bytes);

// "fs1-" followed by a hash of the model's content (excluding its version).
std::string content_version(const ForestModel& model);

// Entropy in bits of a class histogram.
double entropy(std::span<const std::uint32_t> counts);

}  // namespace fieldsense

#endif  // FIELDSENSE_FOREST_H_
