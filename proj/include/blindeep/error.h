// Copyright 2026 The blindeep Authors.
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

#ifndef BLINDEEP_ERROR_H_
#define BLINDEEP_ERROR_H_

#include <stdexcept>
#include <string>

namespace blindeep {

// Precondition violations: malformed graphs, partitions, shapes, configs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric routine could not produce a usable result (solver stall,
// degenerate input that the contract cannot absorb).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files that fail to parse. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace blindeep

#endif  // BLINDEEP_ERROR_H_
