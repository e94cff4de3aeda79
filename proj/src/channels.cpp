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

#include "channels.hpp"

namespace visq {

namespace {

void require_basis_dims(const BipartiteState& state,
                        const MeasurementBasis& basis_a,
                        const MeasurementBasis* basis_b) {
  if (basis_a.dim() != state.dims().a)
    throw DimensionError("basis A dimension " + std::to_string(basis_a.dim()) +
                         " does not match d_A = " +
                         std::to_string(state.dims().a));
  if (basis_b && basis_b->dim() != state.dims().b)
    throw DimensionError("basis B dimension " +
                         std::to_string(basis_b->dim()) +
                         " does not match d_B = " +
                         std::to_string(state.dims().b));
}

// Pinching in the rotated frame: conjugate by the basis unitary, zero the
// masked entries, rotate back. O(d^3) versus O(d^4) for the projector sum.
Matrix pinch(const Matrix& rho, const Matrix& frame, Dims dims,
             bool one_sided) {
  const Matrix rotated = frame.adjoint() * rho * frame;
  const int db = dims.b;
  Matrix masked = Matrix::Zero(rotated.rows(), rotated.cols());
  if (one_sided) {
    // Keep the d_B x d_B blocks on the A-diagonal.
    for (int i = 0; i < dims.a; ++i)
      masked.block(i * db, i * db, db, db) =
          rotated.block(i * db, i * db, db, db);
  } else {
    masked.diagonal() = rotated.diagonal();
  }
  return frame * masked * frame.adjoint();
}

}  // namespace

MeasurementBasis MeasurementBasis::computational(int dim) {
  if (dim < 1) throw DimensionError("basis dimension must be >= 1");
  return MeasurementBasis(UnitaryMatrix::trusted(Matrix::Identity(dim, dim)));
}

MeasurementBasis MeasurementBasis::from_unitary(UnitaryMatrix u) {
  return MeasurementBasis(std::move(u));
}

BipartiteState dephase_full(const BipartiteState& state,
                            const MeasurementBasis& basis_a,
                            const MeasurementBasis& basis_b) {
  require_basis_dims(state, basis_a, &basis_b);
  const Matrix frame = kron(basis_a.matrix(), basis_b.matrix());
  return BipartiteState(
      state.dims(), DensityMatrix::trusted(pinch(state.matrix(), frame,
                                                 state.dims(), false)));
}

BipartiteState dephase_one_sided(const BipartiteState& state,
                                 const MeasurementBasis& basis_a) {
  require_basis_dims(state, basis_a, nullptr);
  const Matrix frame =
      kron(basis_a.matrix(), Matrix::Identity(state.dims().b, state.dims().b));
  return BipartiteState(
      state.dims(),
      DensityMatrix::trusted(pinch(state.matrix(), frame, state.dims(), true)));
}

BipartiteState noisy_measure(const BipartiteState& state, double epsilon,
                             const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("noisy_measure: epsilon must be in [0, 1]");
  const BipartiteState dephased = dephase_full(state, basis_a, basis_b);
  Matrix mixed =
      epsilon * dephased.matrix() + (1.0 - epsilon) * state.matrix();
  return BipartiteState(state.dims(), DensityMatrix::trusted(std::move(mixed)));
}

}  // namespace visq
