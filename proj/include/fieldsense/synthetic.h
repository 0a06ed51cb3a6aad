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

#ifndef FIELDSENSE_SYNTHETIC_H_
#define FIELDSENSE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fieldsense/dataset.h"

namespace fieldsense {

// Attribute pools for one class.
struct ClassTemplate {
  std::string class_name;
  std::vector<std::string> labels;
  std::vector<std::string> names;
  std::vector<std::string> ids;
  std::vector<std::string> types;
  double weight = 1.0;
};

struct ClassProfile {
  std::vector<ClassTemplate> classes;
  // Page URLs shared by every class.
  std::vector<std::string> sites;

  // Eight classes: email, password, first_name, last_name, phone, address,
  // username, state.
  static ClassProfile defaults();
  // {"classes": [{"class", "labels", "names", "ids", "types", "weight"?}],
  //  "sites": [...]}
  static ClassProfile from_json(std::string_view text);

  const ClassTemplate* find(std::string_view class_name) const;
};

// Samples n labelled fields. Labels, names and ids are drawn from the row's
// class pools with light decoration (case, punctuation, prefixes, opaque
// ids); a `noise` fraction of rows gets one of label/name/id replaced by a
// value from another class. Same arguments, same rows.
std::vector<DatasetRow> gen_synthetic(const ClassProfile& profile, std::size_t n,
                                      double noise, std::uint64_t seed);

}  // namespace fieldsense

#endif  // FIELDSENSE_SYNTHETIC_H_
