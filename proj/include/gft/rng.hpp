// Copyright 2026 The gftransport Authors
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

// Per-stream seeding. Every (master seed, realization, site) triple maps to
// its own std::mt19937_64 seed, so results do not depend on which worker ran a
// realization or in what order.

#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace gft {

using StreamEngine = std::mt19937_64;

inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t realization, std::uint64_t site) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(realization), hi(realization), lo(site), hi(site)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace gft
