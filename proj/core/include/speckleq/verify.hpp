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

#ifndef SPECKLEQ_VERIFY_HPP
#define SPECKLEQ_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace speckleq {

struct VerifyCheck {
  std::string name;
  bool passed;
  std::string detail;  // max error / z-score summary, or the failure reason
};

struct VerifyOptions {
  std::int64_t mc_realizations = 4000;  // reduced-scale MC cross-checks
  std::uint64_t seed = 7;
  /// Test-harness hook (negative control): bias added to every closed-form
  /// moment before comparing against the oracle, simulating a corrupted
  /// moment table. Zero in normal operation.
  double moment_bias = 0.0;
};

/// Runs the oracle-equivalence and invariant suite over the built-in
/// corpus: closed-form moments vs fockoracle, single-realization
/// correlators vs fockoracle, ensemble closed forms vs the contraction
/// engine, MC vs closed forms at reduced realizations, covariance
/// physicality, and sampler moment statistics.
std::vector<VerifyCheck> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<VerifyCheck>& checks);

}  // namespace speckleq

#endif  // SPECKLEQ_VERIFY_HPP
