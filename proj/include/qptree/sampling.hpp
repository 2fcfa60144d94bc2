// Copyright 2026 The qptree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

/// Seeded categorical sampling.
///
/// The sample index range is cut into fixed-size blocks. Block k draws from
/// its own mt19937_64 engine seeded with seed_seq{seed_lo, seed_hi, k_lo, k_hi},
/// so a record depends only on (seed, n), never on how blocks are spread over
/// threads. `draw_outcomes_serial` is the single-threaded reference the OpenMP
/// kernel is tested against.
namespace qptree::sampling {

inline constexpr std::size_t kBlockSize = 1 << 16;
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64; 65536-sample blocks; block k seeded by seed_seq{seed_lo32, seed_hi32, k_lo32, k_hi32}; "
    "u = (x >> 11) * 2^-53; inverse-CDF draw";

using Outcome = std::uint8_t;

/// Running sums of `law`, with the last positive entry extended to cover 1.
std::vector<double> cumulative(std::span<const double> law);

/// Index of the first cumulative entry strictly greater than u.
Outcome pick(std::span<const double> cdf, double u);

/// Fills `out` with outcome indices drawn from `law`.
void draw_outcomes_serial(std::span<const double> law, std::uint64_t seed, std::span<Outcome> out);
void draw_outcomes_parallel(std::span<const double> law, std::uint64_t seed, std::span<Outcome> out);

/// Per-outcome tallies of a record.
std::vector<std::size_t> count_outcomes(std::span<const Outcome> record, std::size_t n_outcomes);

/// Stream seed for independent sub-experiments (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Maximum number of threads the parallel kernels will use.
int max_threads();

}  // namespace qptree::sampling
