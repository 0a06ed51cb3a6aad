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

#ifndef FIELDSENSE_DATASET_H_
#define FIELDSENSE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/errors.h"
#include "fieldsense/field_extractor.h"
#include "json.hpp"

namespace fieldsense {

inline constexpr std::string_view kCsvHeader = "label,name,id,type,url,target";

// A labelled field. target is a class name, or "0"/"1" for single-class
// datasets.
struct DatasetRow {
  FieldFeatures features;
  std::string target;

  bool operator==(const DatasetRow&) const = default;
};

class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CsvOptions {
  // Accept rows with an empty target (extraction output awaiting labels).
  bool allow_unlabeled = false;
};

// RFC 4180 with the header label,name,id,type,url,target.
std::vector<DatasetRow> load_csv(std::string_view source, CsvOptions options = {});
// Canonical writer: "\n" line ends, quotes only where needed.
std::string write_csv(std::span<const DatasetRow> rows);

// True when every target is "0" or "1".
bool has_binary_targets(std::span<const DatasetRow> rows);
// Maps targets to {target_class, "other"}; "1"/"0" flags map the same way.
std::vector<DatasetRow> to_binary(std::span<const DatasetRow> rows,
                                  std::string_view target_class);
// Distinct targets, sorted.
std::vector<std::string> class_names_of(std::span<const DatasetRow> rows);

struct SplitResult {
  std::vector<DatasetRow> train;
  std::vector<DatasetRow> test;
  std::vector<std::string> warnings;
};

// Seeded shuffle, then ceil(count * train_fraction) rows of each class (or
// of the whole set when not stratified) go to train.
SplitResult split(std::span<const DatasetRow> rows, double train_fraction = 0.7,
                  std::uint64_t seed = 0, bool stratified = true);

struct ClassMetrics {
  std::string class_name;
  std::size_t support = 0;    // actual occurrences
  std::size_t predicted = 0;  // predicted occurrences
  std::size_t true_positives = 0;
  std::optional<double> precision;  // absent when nothing was predicted
  std::optional<double> recall;     // absent when support is zero
};

struct Metrics {
  // Sorted union of actual and predicted classes; indexes the matrix.
  std::vector<std::string> classes;
  // confusion[actual][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassMetrics> per_class;
  std::size_t total = 0;
  // Mean precision over classes with support; an absent precision counts 0.
  double macro_precision = 0.0;
  double micro_accuracy = 0.0;

  const ClassMetrics* find(std::string_view class_name) const;
};

class EmptyTestSetError : public Error {
 public:
  EmptyTestSetError() : Error("test set is empty") {}
};

Metrics compute_metrics(std::span<const std::string> actual,
                        std::span<const std::string> predicted);

using Predictor = std::function<std::string(const FieldFeatures&)>;
Metrics evaluate(const Predictor& predictor, std::span<const DatasetRow> test);

nlohmann::json to_json(const Metrics& metrics);
std::string to_table(const Metrics& metrics);

}  // namespace fieldsense

#endif  // FIELDSENSE_DATASET_H_
