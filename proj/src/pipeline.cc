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

#include "fieldsense/pipeline.h"

#include <utility>

namespace fieldsense {

std::optional<std::string> parse_training_mode(std::string_view mode) {
  constexpr std::string_view kBinaryPrefix = "binary:";
  if (mode == "multiclass") return std::nullopt;
  if (mode.substr(0, kBinaryPrefix.size()) == kBinaryPrefix &&
      mode.size() > kBinaryPrefix.size()) {
    return std::string(mode.substr(kBinaryPrefix.size()));
  }
  throw Error("mode must be 'multiclass' or 'binary:<class>', got '" +
              std::string(mode) + "'");
}

std::vector<DatasetRow> prepare_rows(std::span<const DatasetRow> rows,
                                     const std::optional<std::string>& binary_target) {
  if (binary_target) return to_binary(rows, *binary_target);
  return {rows.begin(), rows.end()};
}

ForestModel fit(std::span<const DatasetRow> rows, const TrainingOptions& options) {
  if (rows.empty()) throw EmptyTrainingSetError();
  std::vector<FieldFeatures> corpus;
  corpus.reserve(rows.size());
  for (const DatasetRow& row : rows) corpus.push_back(row.features);
  Vocabulary vocabulary =
      build_vocabulary(corpus, options.min_frequency, options.stop_lists);

  std::vector<LabeledVector> vectors;
  vectors.reserve(rows.size());
  for (const DatasetRow& row : rows) {
    vectors.push_back({encode(row.features, vocabulary), row.target});
  }

  std::vector<std::string> class_names;
  ForestMode mode = ForestMode::kMulticlass;
  if (options.binary_target) {
    class_names = {*options.binary_target, std::string(kOtherClass)};
    mode = ForestMode::kBinary;
  } else {
    class_names = class_names_of(rows);
  }
  ForestModel model = train(vectors, options.params, std::move(class_names),
                            std::move(vocabulary), mode);
  model.model_version = options.model_version.empty() ? content_version(model)
                                                      : options.model_version;
  return model;
}

std::string project_class(const ForestModel& model, const std::string& class_name) {
  if (model.mode != ForestMode::kBinary) return class_name;
  return class_name == model.class_names.front() ? class_name
                                                 : std::string(kOtherClass);
}

Predictor forest_predictor(const ForestModel& model) {
  return [&model](const FieldFeatures& field) {
    return predict(model, encode(field, model.vocabulary)).class_name;
  };
}

Predictor rules_predictor(const RuleSet& rules, const ForestModel& model,
                          std::string fallback_class) {
  return [&rules, &model, fallback = std::move(fallback_class)](const FieldFeatures& field) {
    const std::optional<RuleMatch> match = rules.apply(field);
    return project_class(model, match ? match->class_name : fallback);
  };
}

Predictor ensemble_predictor(const LookupTable* lookup, const RuleSet* rules,
                             const ForestModel& model, EnsemblePolicy policy) {
  return [lookup, rules, &model, policy = std::move(policy)](const FieldFeatures& field) {
    return project_class(model,
                         ensemble_predict(field, lookup, rules, &model, policy).class_name);
  };
}

TrainingRun train_and_evaluate(std::span<const DatasetRow> rows,
                               const TrainingOptions& options) {
  const std::vector<DatasetRow> prepared = prepare_rows(rows, options.binary_target);
  SplitResult parts = split(prepared, options.train_fraction, options.params.seed,
                            options.stratified);
  ForestModel model = fit(parts.train, options);
  Metrics holdout = evaluate(forest_predictor(model), parts.test);
  return {std::move(model), std::move(parts), std::move(holdout)};
}

}  // namespace fieldsense
