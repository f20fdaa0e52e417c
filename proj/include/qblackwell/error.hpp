// Copyright 2026 The qblackwell Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace qbw {

/// Raised when an input violates a documented invariant (dimension
/// mismatch, non-Hermitian operator, trace not preserved, ...). The message
/// names the invariant and, where meaningful, the measured residual.
class InvariantError : public std::invalid_argument {
 public:
  explicit InvariantError(const std::string& what) : std::invalid_argument(what) {}

  InvariantError(const std::string& invariant, double residual)
      : std::invalid_argument(format(invariant, residual)) {}

 private:
  static std::string format(const std::string& invariant, double residual) {
    std::ostringstream os;
    os << invariant << " (residual " << residual << ")";
    return os.str();
  }
};

/// Raised by the SDP layer for problems that are malformed before any
/// iteration starts (empty blocks, contradictory duplicate constraints).
class IllPosedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an eigensolver fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qbw
