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
#ifndef FIELDSENSE_ENTITIES_H_
#define FIELDSENSE_ENTITIES_H_

#include <string>
#include <string_view>

namespace fieldsense {

// Decodes named and numeric character references. Unknown or unterminated
// references are passed through verbatim.
std::string decode_entities(std::string_view text);

// Trims and collapses runs of whitespace (including U+00A0) to one space.
std::string collapse_whitespace(std::string_view text);

// Appends the UTF-8 encoding of a code point. Invalid values become U+FFFD.
void append_utf8(std::string& out, char32_t code_point);

}  // namespace fieldsense

#endif  // FIELDSENSE_ENTITIES_H_
