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

#ifndef VISQ_MEASURES_HPP
#define VISQ_MEASURES_HPP

#include "channels.hpp"
#include "states.hpp"

namespace visq {

class UndefinedPhaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interference visibility |Tr(rho U)| in [0, 1].
double visibility(const DensityMatrix& rho, const UnitaryMatrix& u);

/// |Tr(rho U)|^2, the quantity whose Haar average is Tr(rho^2)/d.
double visibility_squared(const DensityMatrix& rho, const UnitaryMatrix& u);

/// Pancharatnam relative phase Arg Tr(rho U) in (-pi, pi]. Undefined when
/// the visibility is below `tau`; throws UndefinedPhaseError then.
double relative_phase(const DensityMatrix& rho, const UnitaryMatrix& u,
                      double tau = 1e-9);

/// Q computed two ways: directly as the Hilbert-Schmidt distance to the
/// dephased state, and via the purity drop Tr(rho^2) - Tr(Phi(rho)^2).
/// Both routes must agree to 1e-10 or the computation aborts.
struct QBreakdown {
  double q = 0.0;
  double q_squared_norm = 0.0;
  double q_squared_purity = 0.0;
};

QBreakdown q_disturbance_detail(const BipartiteState& state,
                                const MeasurementBasis& basis_a,
                                const MeasurementBasis& basis_b);

/// Measurement-disturbance correlation ||rho - Phi(rho)||_HS.
double q_disturbance(const BipartiteState& state,
                     const MeasurementBasis& basis_a,
                     const MeasurementBasis& basis_b);

/// ||rho - Phi_eps(rho)||_HS; equals epsilon * Q identically.
double q_disturbance_noisy(const BipartiteState& state, double epsilon,
                           const MeasurementBasis& basis_a,
                           const MeasurementBasis& basis_b);

/// One-sided variant: ||rho - Phi_A(rho)||_HS with the measurement on A only.
double q_disturbance_one_sided(const BipartiteState& state,
                               const MeasurementBasis& basis_a);

/// Schmidt coefficients lambda_i (probabilities), nonincreasing; these are
/// the eigenvalues of either reduced state of the pure state.
struct SchmidtSpectrum {
  std::vector<double> coefficients;
  Dims dims;
};

SchmidtSpectrum schmidt(const PureState& psi);

/// Linear-entropy entanglement E = 1 - Tr(rho_A^2) in [0, 1 - 1/d_A].
double linear_entanglement(const PureState& psi);

/// Concurrence sqrt(2 (1 - Tr(rho_A^2))).
double concurrence(const PureState& psi);

/// Decomposition average sum_j p_j E(Psi_j): an upper bound on the linear
/// entanglement of formation (never the convex-roof minimum itself).
double ef_decomposition_average(const PureDecomposition& decomp);

/// Closed-form upper bound 1 - Tr(rho_A^2) on the linear entanglement of
/// formation; equals 1 - d_A * (Haar average of squared local visibility).
double ef_visibility_bound(const BipartiteState& state);

/// Same bound from an estimated average squared visibility: 1 - d_A * v2.
double ef_visibility_bound_from_estimate(int dim_a, double mean_sq_visibility);

/// Trade-off between entanglement, one-sided measurement disturbance and the
/// purity of subsystem B. lhs_q_squared uses Q^2/d_B, the form the
/// global/local purity inequalities actually yield; lhs_q_linear uses Q/d_B.
/// Both are reported; only the squared form is asserted anywhere.
struct ComplementarityReport {
  double ef_bound = 0.0;       // 1 - Tr(rho_A^2)
  double q_one_sided = 0.0;    // ||rho - Phi_A(rho)||_HS
  double purity_b = 0.0;       // Tr(rho_B^2)
  double lhs_q_squared = 0.0;  // ef_bound + Q^2/d_B + P(rho_B)/(d_A d_B)
  double lhs_q_linear = 0.0;   // ef_bound + Q/d_B + P(rho_B)/(d_A d_B)
  double slack = 0.0;          // 1 - lhs_q_squared
};

ComplementarityReport complementarity_report(const BipartiteState& state,
                                             const MeasurementBasis& basis_a);

/// Tr(rho_AB^2) / Tr(rho_A^2) and whether it lies in [1/d_B, d_B].
struct PurityRatio {
  double ratio = 0.0;
  bool within_bounds = false;
};

PurityRatio purity_ratio_check(const BipartiteState& state);

}  // namespace visq

#endif  // VISQ_MEASURES_HPP
