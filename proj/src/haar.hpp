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

#ifndef VISQ_HAAR_HPP
#define VISQ_HAAR_HPP

#include <cstdint>
#include <random>

#include "linalg.hpp"
#include "rng.hpp"

namespace visq {

/// Standard complex normal entries: (x + iy)/sqrt(2) with x, y unit normals.
Vector complex_gaussian(int n, std::mt19937_64& rng);

/// Ginibre matrix: i.i.d. standard complex normal entries.
Matrix ginibre(int dim, std::mt19937_64& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the Q columns
/// rephased by the unit phases of R's diagonal. Without the rephasing the
/// Q factor is not uniform (see qr_orthonormal_unphased).
Matrix haar_unitary(int dim, std::mt19937_64& rng);

/// Raw Q factor of the Ginibre QR, without rephasing. Biased; kept only so
/// the bias is demonstrable in tests and diagnostics.
Matrix qr_orthonormal_unphased(int dim, std::mt19937_64& rng);

/// Deterministic sampler over the Haar measure on U(dim): sample(i) is a
/// pure function of (base_seed, i), so parallel workers produce identical
/// draws regardless of how indices are partitioned across them.
class HaarSampler {
 public:
  HaarSampler(int dim, std::uint64_t base_seed);

  UnitaryMatrix sample(std::uint64_t index) const;

  int dim() const { return dim_; }
  std::uint64_t base_seed() const { return base_seed_; }

 private:
  int dim_;
  std::uint64_t base_seed_;
};

/// Empirical mean of U (x) U^dag over n draws; converges to F/dim.
Matrix estimate_m_operator(const HaarSampler& sampler, std::uint64_t n_samples);

}  // namespace visq

#endif  // VISQ_HAAR_HPP
