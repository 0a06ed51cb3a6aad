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
#ifndef FIELDSENSE_URL_H_
#define FIELDSENSE_URL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fieldsense {

// The pieces of an absolute hierarchical URL. Scheme and host are lowercased.
struct Url {
  std::string scheme;
  std::string host;
  std::string port;  // empty when absent
  std::string path;  // starts with '/' or is empty
  std::string query;
  std::string fragment;

  // scheme://host[:port]
  std::string origin() const;
  // Non-empty path segments in order.
  std::vector<std::string> path_segments() const;
};

// Returns nullopt unless the text is scheme "://" host [...].
std::optional<Url> parse_url(std::string_view text);

}  // namespace fieldsense

#endif  // FIELDSENSE_URL_H_
