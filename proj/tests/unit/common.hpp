// Copyright 2026 The Diagraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIAGRAPH_TESTS_UNIT_COMMON_HPP_
#define DIAGRAPH_TESTS_UNIT_COMMON_HPP_

#include <atomic>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"

#include "diagraph/error.hpp"
#include "diagraph/ids.hpp"

namespace testing {

inline std::vector<diagraph::ElementId> ids(std::initializer_list<const char*> xs) {
  std::vector<diagraph::ElementId> out;
  for (const char* x : xs) out.push_back(diagraph::ElementId::parse(x));
  return out;
}

inline diagraph::ElementId id(const char* x) { return diagraph::ElementId::parse(x); }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("diagraph-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing

// Asserts that `expr` throws diagraph::Error with the given code.
#define CHECK_THROWS_CODE(expr, expected_code)                         \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const diagraph::Error& e_) {                              \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());          \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "expected an exception from " #expr);       \
  } while (0)

#endif  // DIAGRAPH_TESTS_UNIT_COMMON_HPP_
