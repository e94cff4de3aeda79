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

#include "measures.hpp"

#include <algorithm>
#include <cmath>

namespace visq {

namespace {

cxd interference_amplitude(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (rho.dim() != u.dim())
    throw DimensionError("visibility: state dim " + std::to_string(rho.dim()) +
                         " does not match unitary dim " +
                         std::to_string(u.dim()));
  return trace_product(rho.matrix(), u.matrix());
}

}  // namespace

double visibility(const DensityMatrix& rho, const UnitaryMatrix& u) {
  return std::abs(interference_amplitude(rho, u));
}

double visibility_squared(const DensityMatrix& rho, const UnitaryMatrix& u) {
  return std::norm(interference_amplitude(rho, u));
}

double relative_phase(const DensityMatrix& rho, const UnitaryMatrix& u,
                      double tau) {
  const cxd amp = interference_amplitude(rho, u);
  if (std::abs(amp) <= tau)
    throw UndefinedPhaseError(
        "relative phase is undefined: visibility " +
        std::to_string(std::abs(amp)) + " is below " + std::to_string(tau));
  return std::arg(amp);
}

QBreakdown q_disturbance_detail(const BipartiteState& state,
                                const MeasurementBasis& basis_a,
                                const MeasurementBasis& basis_b) {
  const BipartiteState dephased = dephase_full(state, basis_a, basis_b);
  QBreakdown out;
  out.q = hs_norm(state.matrix() - dephased.matrix());
  out.q_squared_norm = out.q * out.q;
  out.q_squared_purity = purity(state.rho()) - purity(dephased.rho());
  if (std::abs(out.q_squared_norm - out.q_squared_purity) > 1e-10)
    throw std::logic_error(
        "q_disturbance: norm and purity routes disagree beyond 1e-10");
  return out;
}

double q_disturbance(const BipartiteState& state,
                     const MeasurementBasis& basis_a,
                     const MeasurementBasis& basis_b) {
  return q_disturbance_detail(state, basis_a, basis_b).q;
}

double q_disturbance_noisy(const BipartiteState& state, double epsilon,
                           const MeasurementBasis& basis_a,
                           const MeasurementBasis& basis_b) {
  const BipartiteState mixed =
      noisy_measure(state, epsilon, basis_a, basis_b);
  return hs_norm(state.matrix() - mixed.matrix());
}

double q_disturbance_one_sided(const BipartiteState& state,
                               const MeasurementBasis& basis_a) {
  const BipartiteState dephased = dephase_one_sided(state, basis_a);
  return hs_norm(state.matrix() - dephased.matrix());
}

SchmidtSpectrum schmidt(const PureState& psi) {
  const Dims dims = psi.dims();
  // Amplitude matrix: row index on A, column index on B.
  Matrix amp(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.b; ++j) amp(i, j) = psi.amplitudes()(i * dims.b + j);
  Eigen::JacobiSVD<Matrix> svd(amp);
  const auto& sv = svd.singularValues();
  SchmidtSpectrum out;
  out.dims = dims;
  out.coefficients.resize(sv.size());
  for (long i = 0; i < sv.size(); ++i)
    out.coefficients[i] = sv(i) * sv(i);  // already nonincreasing
  return out;
}

double linear_entanglement(const PureState& psi) {
  const SchmidtSpectrum spectrum = schmidt(psi);
  double sum_sq = 0.0;
  for (double l : spectrum.coefficients) sum_sq += l * l;
  return 1.0 - sum_sq;
}

double concurrence(const PureState& psi) {
  return std::sqrt(std::max(0.0, 2.0 * linear_entanglement(psi)));
}

double ef_decomposition_average(const PureDecomposition& decomp) {
  decomp.check();
  double avg = 0.0;
  for (std::size_t j = 0; j < decomp.members.size(); ++j)
    avg += decomp.weights[j] * linear_entanglement(decomp.members[j]);
  return avg;
}

double ef_visibility_bound(const BipartiteState& state) {
  return 1.0 - purity(partial_trace(state, Subsystem::A));
}

double ef_visibility_bound_from_estimate(int dim_a,
                                         double mean_sq_visibility) {
  return 1.0 - dim_a * mean_sq_visibility;
}

ComplementarityReport complementarity_report(const BipartiteState& state,
                                             const MeasurementBasis& basis_a) {
  const int da = state.dims().a;
  const int db = state.dims().b;
  ComplementarityReport report;
  report.ef_bound = ef_visibility_bound(state);
  report.q_one_sided = q_disturbance_one_sided(state, basis_a);
  report.purity_b = purity(partial_trace(state, Subsystem::B));
  const double p_term = report.purity_b / (da * db);
  report.lhs_q_squared =
      report.ef_bound + report.q_one_sided * report.q_one_sided / db + p_term;
  report.lhs_q_linear = report.ef_bound + report.q_one_sided / db + p_term;
  report.slack = 1.0 - report.lhs_q_squared;
  return report;
}

PurityRatio purity_ratio_check(const BipartiteState& state) {
  const double global = purity(state.rho());
  const double local = purity(partial_trace(state, Subsystem::A));
  const double db = state.dims().b;
  PurityRatio out;
  out.ratio = global / local;
  out.within_bounds = out.ratio >= 1.0 / db - 1e-12 && out.ratio <= db + 1e-12;
  return out;
}

}  // namespace visq
