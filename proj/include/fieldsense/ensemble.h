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

#ifndef FIELDSENSE_ENSEMBLE_H_
#define FIELDSENSE_ENSEMBLE_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/field_extractor.h"
#include "fieldsense/forest.h"
#include "fieldsense/rules.h"

namespace fieldsense {

// Exact-match memory from field signature to class.
class LookupTable {
 public:
  void put(const FieldSignature& signature, std::string class_name);
  std::optional<std::string> get(const FieldSignature& signature) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> class_names() const;

  // JSON object mapping "origin\tkey" to class.
  std::string save() const;
  static LookupTable load(std::string_view bytes);

  bool operator==(const LookupTable&) const = default;

 private:
  std::map<FieldSignature, std::string> entries_;
};

enum class Source { kLookup, kRules, kForest, kFallback };

std::string_view source_name(Source source);
std::optional<Source> source_from_name(std::string_view name);

struct EnsemblePolicy {
  std::array<Source, 3> order = {Source::kLookup, Source::kRules,
                                 Source::kForest};
  double forest_confidence_threshold = 0.5;
  std::string fallback_class = "unknown";

  // Throws Error unless order is a permutation of the three sources and the
  // threshold lies in [0, 1].
  void validate() const;
};

struct EnsemblePrediction {
  std::string class_name;
  double confidence = 0.0;
  Source source = Source::kFallback;
  std::string rule_id;          // set when source is kRules
  std::vector<double> scores;   // forest scores, when the forest was consulted
};

// Consults the sources in policy order; the first decisive one wins. Lookup
// and rules are decisive on any hit, the forest when its confidence reaches
// the threshold. Null components are skipped.
EnsemblePrediction ensemble_predict(const FieldFeatures& field,
                                    const LookupTable* lookup,
                                    const RuleSet* rules,
                                    const ForestModel* model,
                                    const EnsemblePolicy& policy);

}  // namespace fieldsense

#endif  // FIELDSENSE_ENSEMBLE_H_
