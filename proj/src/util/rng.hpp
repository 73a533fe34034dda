// Copyright 2026 The starreg Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace starreg {

/// Trial-level random streams derived from one master seed.
///
/// Stream k is a mt19937_64 seeded with splitmix64(master + k * golden).
/// Work is split into fixed-size chunks, one stream per chunk, so results do
/// not depend on how chunks are distributed across threads.
inline constexpr std::uint64_t kStreamChunk = 4096;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return std::mt19937_64(splitmix64(master_seed + stream_id * 0x9E3779B97F4A7C15ULL));
}

/// Derives an independent master seed for a named sub-task.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept {
  return splitmix64(master_seed ^ splitmix64(salt));
}

}  // namespace starreg
