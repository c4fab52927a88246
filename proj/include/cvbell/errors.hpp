// Copyright 2026 The cvbell Authors
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

#ifndef CVBELL_ERRORS_HPP
#define CVBELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvbell {

/// Raised when a computed quantity falls outside its mathematically valid
/// range (probabilities outside [0,1], broken invariants, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Fock-space operation moves more probability mass above the
/// cutoff than the configured truncation budget permits.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail)
      : NumericalError(what), tail_(tail) {}
  double tail() const { return tail_; }

 private:
  double tail_;
};

/// Raised instead of returning garbage when a matrix is numerically singular.
class IllConditionedError : public NumericalError {
 public:
  IllConditionedError(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Raised when an operation would exceed a hard memory/size guard.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvbell

#endif  // CVBELL_ERRORS_HPP
