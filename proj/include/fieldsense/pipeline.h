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

#ifndef FIELDSENSE_PIPELINE_H_
#define FIELDSENSE_PIPELINE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/dataset.h"
#include "fieldsense/ensemble.h"
#include "fieldsense/forest.h"
#include "fieldsense/rules.h"
#include "fieldsense/text_pipeline.h"

namespace fieldsense {

// Parameters for going from labelled rows to a model.
struct TrainingOptions {
  ForestParams params;
  // Set for a one-vs-rest model of this class.
  std::optional<std::string> binary_target;
  int min_frequency = 1;
  double train_fraction = 0.7;
  bool stratified = true;
  StopLists stop_lists = StopLists::defaults();
  // Empty: derived from the model content.
  std::string model_version;
};

// "multiclass" or "binary:<class>". Throws Error on anything else.
std::optional<std::string> parse_training_mode(std::string_view mode);

// Relabels rows for a binary target; multiclass rows pass through.
std::vector<DatasetRow> prepare_rows(std::span<const DatasetRow> rows,
                                     const std::optional<std::string>& binary_target);

// Builds the vocabulary on `rows` only and grows the forest. Rows must
// already be prepared.
ForestModel fit(std::span<const DatasetRow> rows, const TrainingOptions& options);

// Maps a class name into the model's label space: binary models see their
// target or "other".
std::string project_class(const ForestModel& model, const std::string& class_name);

Predictor forest_predictor(const ForestModel& model);
Predictor rules_predictor(const RuleSet& rules, const ForestModel& model,
                          std::string fallback_class = "unknown");
Predictor ensemble_predictor(const LookupTable* lookup, const RuleSet* rules,
                             const ForestModel& model, EnsemblePolicy policy);

struct TrainingRun {
  ForestModel model;
  SplitResult split;
  Metrics holdout;
};

// prepare_rows, split, fit, then forest metrics on the holdout.
TrainingRun train_and_evaluate(std::span<const DatasetRow> rows,
                               const TrainingOptions& options);

}  // namespace fieldsense

#endif  // FIELDSENSE_PIPELINE_H_
