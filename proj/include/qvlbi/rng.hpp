// Copyright 2026 The qvlbi Authors
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

#include <cstdint>
#include <random>

namespace qvlbi {

/// Engine used by every stochastic routine. Its output sequence is fixed by
/// the C++ standard, so traces are bit-reproducible across toolchains.
using Rng = std::mt19937_64;

/// Default seed used by the CLI when neither --seed nor QVLBI_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for an independent stream identified by (seed, lane). Monte Carlo
/// batches draw from lane = batch index so serial and parallel execution
/// consume identical streams.
constexpr std::uint64_t lane_seed(std::uint64_t seed, std::uint64_t lane) {
    return mix64(mix64(seed) ^ mix64(lane + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qvlbi
