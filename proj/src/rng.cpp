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

#include "rng.hpp"

namespace visq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t base_seed, RngStream stream,
                             std::uint64_t index) {
  const std::uint64_t domain =
      splitmix64(base_seed ^ (static_cast<std::uint64_t>(stream) *
                              0xD1B54A32D192ED03ULL));
  return splitmix64(domain + 0x9E3779B97F4A7C15ULL * index);
}

std::mt19937_64 substream_rng(std::uint64_t base_seed, RngStream stream,
                              std::uint64_t index) {
  return std::mt19937_64(substream_seed(base_seed, stream, index));
}

}  // namespace visq
