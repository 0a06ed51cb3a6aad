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

#include "fieldsense/forest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "fieldsense/random.h"

namespace fieldsense {
namespace {

// Gains closer than this are ties; a split must beat it to count as positive.
constexpr double kGainEpsilon = 1e-12;

class TreeGrower {
 public:
  TreeGrower(std::span<const LabeledVector> rows,
             std::span<const std::size_t> labels, std::size_t class_count,
             const ForestParams& params, std::size_t width, Rng& rng,
             std::vector<std::vector<std::size_t>>* node_rows)
      : rows_(rows),
        labels_(labels),
        class_count_(class_count),
        params_(params),
        width_(width),
        rng_(rng),
        node_rows_(node_rows) {}

  std::vector<TreeNode> grow(std::vector<std::size_t> sample) {
    build(std::move(sample), 0);
    return std::move(nodes_);
  }

 private:
  std::vector<std::uint32_t> histogram(std::span<const std::size_t> sample) const {
    std::vector<std::uint32_t> counts(class_count_, 0);
    for (std::size_t r : sample) ++counts[labels_[r]];
    return counts;
  }

  std::int32_t build(std::vector<std::size_t> sample, int depth) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (node_rows_ != nullptr) node_rows_->push_back(sample);

    std::vector<std::uint32_t> counts = histogram(sample);
    const bool pure =
        std::count_if(counts.begin(), counts.end(),
                      [](std::uint32_t c) { return c > 0; }) <= 1;
    const std::int32_t feature =
        (pure || depth >= params_.max_depth || width_ == 0)
            ? TreeNode::kNone
            : best_split(sample, counts);
    if (feature == TreeNode::kNone) {
      nodes_[index].histogram = std::move(counts);
      return index;
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : sample) {
      (rows_[r].features.test(feature) ? right : left).push_back(r);
    }
    sample.clear();
    sample.shrink_to_fit();
    nodes_[index].feature = feature;
    const std::int32_t l = build(std::move(left), depth + 1);
    const std::int32_t r = build(std::move(right), depth + 1);
    nodes_[index].left = l;
    nodes_[index].right = r;
    return index;
  }

  std::int32_t best_split(std::span<const std::size_t> sample,
                          std::span<const std::uint32_t> counts) {
    std::vector<std::size_t> candidates;
    if (static_cast<std::size_t>(params_.random_splits_per_node) >= width_) {
      // The budget covers every feature; search them all.
      candidates.resize(width_);
      std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    } else {
      candidates.resize(params_.random_splits_per_node);
      for (auto& c : candidates) c = rng_.below(width_);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
    }

    const double n = static_cast<double>(sample.size());
    const double parent = entropy(counts);
    std::vector<std::uint32_t> right_counts(class_count_);
    std::vector<std::uint32_t> left_counts(class_count_);
    std::vector<std::pair<std::size_t, double>> scored;
    scored.reserve(candidates.size());
    for (std::size_t feature : candidates) {
      std::fill(right_counts.begin(), right_counts.end(), 0);
      std::size_t n_right = 0;
      for (std::size_t r : sample) {
        if (rows_[r].features.test(feature)) {
          ++right_counts[labels_[r]];
          ++n_right;
        }
      }
      const std::size_t n_left = sample.size() - n_right;
      const auto min_leaf = static_cast<std::size_t>(params_.min_samples_per_leaf);
      if (n_left < min_leaf || n_right < min_leaf) continue;
      for (std::size_t c = 0; c < class_count_; ++c) {
        left_counts[c] = counts[c] - right_counts[c];
      }
      scored.emplace_back(feature, parent - (n_left / n) * entropy(left_counts) -
                                       (n_right / n) * entropy(right_counts));
    }
    double max_gain = 0.0;
    for (const auto& [feature, gain] : scored) max_gain = std::max(max_gain, gain);
    if (max_gain <= kGainEpsilon) return TreeNode::kNone;
    // Lowest feature index among the (near-)maximal gains.
    std::int32_t best = TreeNode::kNone;
    for (const auto& [feature, gain] : scored) {
      if (gain >= max_gain - kGainEpsilon) {
        best = static_cast<std::int32_t>(feature);
        break;
      }
    }
    return best;
  }

  std::span<const LabeledVector> rows_;
  std::span<const std::size_t> labels_;
  std::size_t class_count_;
  const ForestParams& params_;
  std::size_t width_;
  Rng& rng_;
  std::vector<std::vector<std::size_t>>* node_rows_;
  std::vector<TreeNode> nodes_;
};

void run_parallel(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view mode_name(ForestMode mode) {
  return mode == ForestMode::kBinary ? "binary" : "multiclass";
}

void ForestParams::validate() const {
  if (tree_count < 1) throw InvalidParamsError("tree_count must be >= 1");
  if (max_depth < 0) throw InvalidParamsError("max_depth must be >= 0");
  if (random_splits_per_node < 1) {
    throw InvalidParamsError("random_splits_per_node must be >= 1");
  }
  if (min_samples_per_leaf < 1) {
    throw InvalidParamsError("min_samples_per_leaf must be >= 1");
  }
}

double entropy(std::span<const std::uint32_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  for (TreeNode& node : nodes_) {
    if (!node.is_leaf()) continue;
    double total = 0;
    for (auto c : node.histogram) total += c;
    node.distribution.resize(node.histogram.size());
    for (std::size_t i = 0; i < node.histogram.size(); ++i) {
      node.distribution[i] = total > 0 ? node.histogram[i] / total : 0.0;
    }
  }
}

const TreeNode& DecisionTree::leaf_for(const FeatureVector& x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = static_cast<std::size_t>(x.test(node.feature) ? node.right : node.left);
  }
  return nodes_[i];
}

int DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> depth(nodes_.size(), 0);
  int deepest = 0;
  // Children always follow their parent in pre-order.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (nodes_[i].is_leaf()) continue;
    depth[nodes_[i].left] = depth[i] + 1;
    depth[nodes_[i].right] = depth[i] + 1;
  }
  return deepest;
}

std::size_t ForestModel::class_index(std::string_view name) const {
  auto it = std::find(class_names.begin(), class_names.end(), name);
  if (it == class_names.end()) throw UnknownClassError(std::string(name));
  return static_cast<std::size_t>(it - class_names.begin());
}

ForestModel train(std::span<const LabeledVector> rows,
                  const ForestParams& params,
                  std::vector<std::string> class_names, Vocabulary vocabulary,
                  ForestMode mode, TrainingTrace* trace) {
  params.validate();
  if (rows.empty()) throw EmptyTrainingSetError();
  if (class_names.empty()) throw Error("class list is empty");
  if (mode == ForestMode::kBinary &&
      (class_names.size() != 2 || class_names[1] != kOtherClass)) {
    throw Error("binary mode needs classes {target, \"other\"}");
  }

  ForestModel model;
  model.params = params;
  model.vocabulary = std::move(vocabulary);
  model.class_names = std::move(class_names);
  model.mode = mode;

  const std::size_t width = model.vocabulary.total_width();
  std::vector<std::size_t> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].features.width() != width) {
      throw WidthMismatchError(width, rows[i].features.width());
    }
    labels[i] = model.class_index(rows[i].class_name);
  }

  const auto tree_count = static_cast<std::size_t>(params.tree_count);
  std::vector<std::vector<TreeNode>> grown(tree_count);
  if (trace != nullptr) {
    trace->bootstrap.assign(tree_count, {});
    trace->node_rows.assign(tree_count, {});
  }
  run_parallel(tree_count, [&](std::size_t t) {
    Rng rng(params.seed, t);
    std::vector<std::size_t> sample(rows.size());
    for (auto& s : sample) s = rng.below(rows.size());
    if (trace != nullptr) trace->bootstrap[t] = sample;
    TreeGrower grower(rows, labels, model.class_names.size(), params, width,
                      rng, trace != nullptr ? &trace->node_rows[t] : nullptr);
    grown[t] = grower.grow(std::move(sample));
  });
  model.trees.reserve(tree_count);
  for (auto& nodes : grown) model.trees.emplace_back(std::move(nodes));
  return model;
}

Prediction predict(const ForestModel& model, const FeatureVector& x) {
  const std::size_t width = model.vocabulary.total_width();
  if (x.width() != width) throw WidthMismatchError(width, x.width());
  Prediction p;
  p.scores.assign(model.class_names.size(), 0.0);
  for (const DecisionTree& tree : model.trees) {
    const TreeNode& leaf = tree.leaf_for(x);
    for (std::size_t c = 0; c < p.scores.size(); ++c) {
      p.scores[c] += leaf.distribution[c];
    }
  }
  const double n = static_cast<double>(model.trees.size());
  for (double& s : p.scores) s /= n;
  const auto best = std::max_element(p.scores.begin(), p.scores.end());
  const auto index = static_cast<std::size_t>(best - p.scores.begin());
  p.class_name = model.class_names[index];
  p.confidence = *best;
  return p;
}

}  // namespace fieldsense
