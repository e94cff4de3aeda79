// Copyright 2026 The visq Authors
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

#ifndef VISQ_RNG_HPP
#define VISQ_RNG_HPP

#include <cstdint>
#include <random>

namespace visq {

// Stream tags keep the RNG substreams of unrelated consumers disjoint even
// when the user supplies a single seed for the whole run.
enum class RngStream : std::uint64_t {
  kHaarSample = 0,
  kStateConstruction = 1,
  kDecomposition = 2,
};

/// SplitMix64 output function; the standard seed expander.
std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit sub-seed for (base_seed, stream, index). Counter-based: the result
/// depends only on the three inputs, never on call order, so parallel workers
/// can derive identical streams regardless of how indices are partitioned.
std::uint64_t substream_seed(std::uint64_t base_seed, RngStream stream,
                             std::uint64_t index);

/// Generator positioned at the start of the (base_seed, stream, index) stream.
std::mt19937_64 substream_rng(std::uint64_t base_seed, RngStream stream,
                              std::uint64_t index);

}  // namespace visq

#endif  // VISQ_RNG_HPP
