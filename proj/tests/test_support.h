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

#ifndef FIELDSENSE_TESTS_TEST_SUPPORT_H_
#define FIELDSENSE_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <random>
#include <string>

#include "fieldsense/io.h"

namespace fieldsense::testing {

inline std::string fixture_path(const std::string& relative) {
  return std::string(FIELDSENSE_FIXTURE_DIR) + "/" + relative;
}

inline std::string read_fixture(const std::string& relative) {
  return read_file(fixture_path(relative));
}

// A fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("fieldsense-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fieldsense::testing

#endif  // FIELDSENSE_TESTS_TEST_SUPPORT_H_
