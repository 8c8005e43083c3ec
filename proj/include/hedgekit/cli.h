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

#ifndef HEDGEKIT_CLI_H_
#define HEDGEKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace hedgekit {

struct CliIo {
  std::istream &in;
  std::ostream &out;
  std::ostream &err;
  // Whether `in` is an interactive terminal; annotate refuses to prompt
  // otherwise unless keys come from --from-file.
  bool in_is_terminal = false;
};

// Runs the hedgekit command line. `args` includes the program name.
// Returns 0 on success, 2 on input or validation errors, 3 when training
// does not converge and 4 on command line misuse.
int RunCli(const std::vector<std::string> &args, CliIo io);

}  // namespace hedgekit

#endif  // HEDGEKIT_CLI_H_
