/*
   Copyright 2026 The bdec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <random>

namespace bdec {

using Engine = std::mt19937_64;

/// splitmix64 finalizer, used to decorrelate (seed, stream) pairs.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent engine for work unit `index` of a run seeded with `seed`.
/// The result depends only on (seed, purpose, index), never on the worker
/// that happens to execute the unit.
inline Engine stream_engine(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index)
{
    std::seed_seq seq{mix64(seed), mix64(seed ^ mix64(purpose)), mix64(index + mix64(purpose + 1))};
    return Engine(seq);
}

// Stream purposes, so that different consumers of one seed never overlap.
inline constexpr std::uint64_t kStreamPurity = 1;
inline constexpr std::uint64_t kStreamLyapunov = 2;
inline constexpr std::uint64_t kStreamMeanFreeTime = 3;
inline constexpr std::uint64_t kStreamErgodic = 4;

} // namespace bdec
