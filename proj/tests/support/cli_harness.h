// Copyright 2026 The HedgeKit Authors.
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

#ifndef HEDGEKIT_TESTS_SUPPORT_CLI_HARNESS_H_
#define HEDGEKIT_TESTS_SUPPORT_CLI_HARNESS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "hedgekit/corpus.h"

namespace hedgekit::testing {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

// Runs the command line in process. `args` excludes the program name.
CliRun Run(const std::vector<std::string> &args, const std::string &stdin_text = {},
           bool stdin_is_terminal = false);

// A fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string &tag);
  ~ScratchDir();
  ScratchDir(const ScratchDir &) = delete;
  ScratchDir &operator=(const ScratchDir &) = delete;

  std::string path(const std::string &name) const { return (root_ / name).string(); }
  std::string Write(const std::string &name, const std::string &contents) const;
  std::string Save(const std::string &name, const Corpus &corpus) const;
  std::string Read(const std::string &name) const;

 private:
  std::filesystem::path root_;
};

}  // namespace hedgekit::testing

#endif  // HEDGEKIT_TESTS_SUPPORT_CLI_HARNESS_H_
