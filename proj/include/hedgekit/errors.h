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

#ifndef HEDGEKIT_ERRORS_H_
#define HEDGEKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hedgekit {

// Base class for all library failures. The exit code is what the command
// line front end returns when the error escapes a subcommand.
class Error : public std::runtime_error {
 public:
  Error(const std::string &what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}

  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

// Malformed input, failed validation, or inconsistent arguments to an
// operation (exit code 2).
class InputError : public Error {
 public:
  explicit InputError(const std::string &what) : Error(what, 2) {}
};

// The dual solver ran out of its iteration budget (exit code 3).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string &what, double max_violation)
      : Error(what, 3), max_violation_(max_violation) {}

  double max_violation() const { return max_violation_; }

 private:
  double max_violation_;
};

// Command line misuse (exit code 4).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string &what) : Error(what, 4) {}
};

}  // namespace hedgekit

#endif  // HEDGEKIT_ERRORS_H_
