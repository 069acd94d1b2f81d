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

#ifndef SPECKLEQ_RNG_HPP
#define SPECKLEQ_RNG_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace speckleq {

/// Statistically independent substream seed for (master_seed, stream_index),
/// via the splitmix64 finalizer. Identical inputs give identical seeds on
/// every platform, which is what makes per-realization results independent
/// of how work is partitioned across threads.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream_index);

/// mt19937_64 engine seeded with mix_seed(master_seed, stream_index).
std::mt19937_64 substream_rng(std::uint64_t master_seed, std::uint64_t stream_index);

/// Uniform draw in [0, 1) with 53 random bits. Hand-rolled (not
/// std::uniform_real_distribution) so the draw sequence is identical across
/// standard library implementations.
double uniform01(std::mt19937_64& rng);

/// Exponential draw with unit mean, via inversion of uniform01.
double exponential1(std::mt19937_64& rng);

/// Complex Gaussian with independent N(0,1) real and imaginary parts
/// (Box-Muller; consumes exactly two uniforms).
std::complex<double> standard_complex_gaussian(std::mt19937_64& rng);

/// Runs fn(i) for i in [0, count) on `workers` threads (workers <= 1 runs
/// inline). Partitioning is contiguous blocks; fn must write only to
/// per-index storage so results do not depend on the worker count.
/// Exceptions thrown by fn are captured and rethrown on the calling thread.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Pairwise (cascade) sum. Used for every ensemble reduction because its
/// result depends only on element order, never on thread partitioning.
double pairwise_sum(std::span<const double> values);

}  // namespace speckleq

#endif  // SPECKLEQ_RNG_HPP
