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

#include "qptree/sampling.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qptree::sampling {

namespace {

std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

double unit_interval(std::mt19937_64 &engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void draw_block(std::span<const double> cdf, std::uint64_t seed, std::size_t block, std::span<Outcome> out) {
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(out.size(), begin + kBlockSize);
    auto engine = block_engine(seed, block);
    for (std::size_t i = begin; i < end; ++i) {
        out[i] = pick(cdf, unit_interval(engine));
    }
}

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

void check_law(std::span<const double> law) {
    if (law.empty() || law.size() > 255) {
        throw std::invalid_argument("sampling: law must have between 1 and 255 outcomes");
    }
    for (double p : law) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("sampling: negative or NaN probability");
        }
    }
}

}  // namespace

std::vector<double> cumulative(std::span<const double> law) {
    check_law(law);
    std::vector<double> cdf(law.size());
    double running = 0.0;
    std::size_t last_positive = law.size();
    for (std::size_t k = 0; k < law.size(); ++k) {
        running += law[k];
        cdf[k] = running;
        if (law[k] > 0.0) {
            last_positive = k;
        }
    }
    if (last_positive == law.size()) {
        throw std::invalid_argument("sampling: law has no positive entry");
    }
    // Rounding must not leave a gap below 1; zero-weight tail entries stay unreachable.
    for (std::size_t k = last_positive; k < law.size(); ++k) {
        cdf[k] = 2.0;
    }
    return cdf;
}

Outcome pick(std::span<const double> cdf, double u) {
    std::size_t k = 0;
    while (k + 1 < cdf.size() && !(u < cdf[k])) {
        ++k;
    }
    return static_cast<Outcome>(k);
}

void draw_outcomes_serial(std::span<const double> law, std::uint64_t seed, std::span<Outcome> out) {
    const auto cdf = cumulative(law);
    const std::size_t blocks = block_count(out.size());
    for (std::size_t b = 0; b < blocks; ++b) {
        draw_block(cdf, seed, b, out);
    }
}

void draw_outcomes_parallel(std::span<const double> law, std::uint64_t seed, std::span<Outcome> out) {
    const auto cdf = cumulative(law);
    const auto blocks = static_cast<std::int64_t>(block_count(out.size()));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        draw_block(cdf, seed, static_cast<std::size_t>(b), out);
    }
}

std::vector<std::size_t> count_outcomes(std::span<const Outcome> record, std::size_t n_outcomes) {
    std::vector<std::size_t> counts(n_outcomes, 0);
    for (Outcome o : record) {
        if (o >= n_outcomes) {
            throw std::out_of_range("count_outcomes: outcome index out of range");
        }
        ++counts[o];
    }
    return counts;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qptree::sampling
