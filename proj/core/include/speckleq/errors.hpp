// Copyright 2026 The speckleq Authors
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

#ifndef SPECKLEQ_ERRORS_HPP
#define SPECKLEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace speckleq {

/// Requested operator moment is outside the implemented closed-form table.
/// Raised instead of silently returning zero.
class UnsupportedOrderError : public std::domain_error {
 public:
  explicit UnsupportedOrderError(const std::string& what) : std::domain_error(what) {}
};

/// A normalized correlation was requested at an output with (numerically)
/// zero mean photon number, so the ratio is undefined.
class UndefinedCorrelationError : public std::domain_error {
 public:
  explicit UndefinedCorrelationError(const std::string& what) : std::domain_error(what) {}
};

/// Every Monte Carlo realization was degenerate; no estimate exists.
class DegenerateEnsembleError : public std::runtime_error {
 public:
  explicit DegenerateEnsembleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace speckleq

#endif  // SPECKLEQ_ERRORS_HPP
