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

#include "fieldsense/ensemble.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "json.hpp"

namespace fieldsense {

void LookupTable::put(const FieldSignature& signature, std::string class_name) {
  entries_[signature] = std::move(class_name);
}

std::optional<std::string> LookupTable::get(const FieldSignature& signature) const {
  auto it = entries_.find(signature);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> LookupTable::class_names() const {
  std::vector<std::string> names;
  for (const auto& [sig, name] : entries_) names.push_back(name);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

std::string LookupTable::save() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [sig, name] : entries_) j[sig.origin + "\t" + sig.key] = name;
  return j.dump(2) + "\n";
}

LookupTable LookupTable::load(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("lookup table is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("lookup table must be a JSON object");
  LookupTable table;
  for (const auto& [composite, value] : j.items()) {
    const std::size_t tab = composite.find('\t');
    if (tab == std::string::npos) {
      throw Error("lookup key '" + composite + "' has no origin<TAB>key separator");
    }
    if (!value.is_string() || value.get<std::string>().empty()) {
      throw Error("lookup entry '" + composite + "' must map to a class name");
    }
    table.put(FieldSignature{composite.substr(0, tab), composite.substr(tab + 1)},
              value.get<std::string>());
  }
  return table;
}

std::string_view source_name(Source source) {
  switch (source) {
    case Source::kLookup: return "lookup";
    case Source::kRules: return "rules";
    case Source::kForest: return "forest";
    case Source::kFallback: return "fallback";
  }
  return "";
}

std::optional<Source> source_from_name(std::string_view name) {
  for (Source s : {Source::kLookup, Source::kRules, Source::kForest, Source::kFallback}) {
    if (source_name(s) == name) return s;
  }
  return std::nullopt;
}

void EnsemblePolicy::validate() const {
  std::array<Source, 3> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array{Source::kLookup, Source::kRules, Source::kForest}) {
    throw Error("ensemble order must list lookup, rules and forest exactly once");
  }
  if (!(forest_confidence_threshold >= 0.0 && forest_confidence_threshold <= 1.0)) {
    throw Error("forest confidence threshold must be in [0, 1]");
  }
}

EnsemblePrediction ensemble_predict(const FieldFeatures& field,
                                    const LookupTable* lookup,
                                    const RuleSet* rules,
                                    const ForestModel* model,
                                    const EnsemblePolicy& policy) {
  EnsemblePrediction out;
  for (Source source : policy.order) {
    switch (source) {
      case Source::kLookup:
        if (lookup == nullptr) break;
        if (auto hit = lookup->get(signature(field))) {
          out.class_name = *hit;
          out.confidence = 1.0;
          out.source = Source::kLookup;
          return out;
        }
        break;
      case Source::kRules:
        if (rules == nullptr) break;
        if (auto hit = rules->apply(field)) {
          out.class_name = hit->class_name;
          out.confidence = 1.0;
          out.source = Source::kRules;
          out.rule_id = hit->rule_id;
          return out;
        }
        break;
      case Source::kForest:
        if (model == nullptr) break;
        try {
          Prediction p = predict(*model, encode(field, model->vocabulary));
          out.scores = p.scores;
          if (p.confidence >= policy.forest_confidence_threshold) {
            out.class_name = std::move(p.class_name);
            out.confidence = p.confidence;
            out.source = Source::kForest;
            return out;
          }
        } catch (const Error& e) {
          spdlog::warn("event=forest_skipped error=\"{}\"", e.what());
        }
        break;
      case Source::kFallback:
        break;
    }
  }
  out.class_name = policy.fallback_class;
  out.confidence = 0.0;
  out.source = Source::kFallback;
  return out;
}

}  // namespace fieldsense
