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

#ifndef VISQ_CHANNELS_HPP
#define VISQ_CHANNELS_HPP

#include "linalg.hpp"

namespace visq {

/// Orthonormal measurement basis: the columns of `matrix()` are the measured
/// vectors b_i, i.e. the rank-1 projectors are |b_i><b_i|. Completeness
/// follows from unitarity.
class MeasurementBasis {
 public:
  static MeasurementBasis computational(int dim);
  static MeasurementBasis from_unitary(UnitaryMatrix u);

  int dim() const { return u_.dim(); }
  const Matrix& matrix() const { return u_.matrix(); }
  const UnitaryMatrix& unitary() const { return u_; }

 private:
  explicit MeasurementBasis(UnitaryMatrix u) : u_(std::move(u)) {}

  UnitaryMatrix u_;
};

/// Complete local projective measurement on both subsystems:
/// rho -> sum_ij (P_i (x) P_j) rho (P_i (x) P_j). Output is diagonal in the
/// product basis; trace, Hermiticity and positivity are preserved.
BipartiteState dephase_full(const BipartiteState& state,
                            const MeasurementBasis& basis_a,
                            const MeasurementBasis& basis_b);

/// Measurement on subsystem A only: rho -> sum_i (P_i (x) I) rho (P_i (x) I).
/// The reduced state of B is unchanged.
BipartiteState dephase_one_sided(const BipartiteState& state,
                                 const MeasurementBasis& basis_a);

/// Noisy measurement: with probability epsilon the complete measurement is
/// performed, otherwise the state is left untouched:
/// rho -> epsilon * dephase_full(rho) + (1 - epsilon) * rho.
BipartiteState noisy_measure(const BipartiteState& state, double epsilon,
                             const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b);

}  // namespace visq

#endif  // VISQ_CHANNELS_HPP
