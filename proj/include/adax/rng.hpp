// Copyright 2026 The adax Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADAX_RNG_HPP
#define ADAX_RNG_HPP

#include <cstdint>
#include <random>

namespace adax {

/// Generator used everywhere randomness is needed. Streams derived from one
/// user seed are independent: data generation, splits, initialization and
/// batch order each take their own stream id.
using Rng = std::mt19937_64;

enum class Stream : std::uint64_t {
  ClassMeans = 1,
  Samples = 2,
  Split = 3,
  Init = 4,
  Shuffle = 5,
  MonteCarlo = 6,
  Property = 7,
};

/// SplitMix64 finalizer; decorrelates (seed, stream) pairs.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  return Rng(mix_seed(mix_seed(seed) ^ static_cast<std::uint64_t>(stream)));
}

}  // namespace adax

#endif  // ADAX_RNG_HPP
