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
#ifndef FIELDSENSE_ERRORS_H_
#define FIELDSENSE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fieldsense {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedUrlError : public Error {
 public:
  explicit MalformedUrlError(const std::string& url)
      : Error("malformed URL: '" + url + "'") {}
};

}  // namespace fieldsense

#endif  // FIELDSENSE_ERRORS_H_
