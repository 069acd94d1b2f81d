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

#ifndef SPECKLEQ_FORMAT_HPP
#define SPECKLEQ_FORMAT_HPP

#include <string>

namespace speckleq {

/// Shortest decimal string that round-trips to the same double.
/// NaN formats as "nan", infinities as "inf"/"-inf". Used everywhere a
/// number is written to a file so outputs are byte-deterministic.
std::string format_double(double value);

}  // namespace speckleq

#endif  // SPECKLEQ_FORMAT_HPP
