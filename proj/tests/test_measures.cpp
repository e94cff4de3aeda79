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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "haar.hpp"
#include "measures.hpp"
#include "test_support.hpp"

using namespace visq;
using namespace test_support;

namespace {

const MeasurementBasis kComp2 = MeasurementBasis::computational(2);
const MeasurementBasis kComp3 = MeasurementBasis::computational(3);

MeasurementBasis haar_basis(int dim, std::uint64_t seed) {
  return MeasurementBasis::from_unitary(HaarSampler(dim, seed).sample(0));
}

}  // namespace

TEST_CASE("visibility fixtures") {
  const DensityMatrix mixed = DensityMatrix::trusted(Matrix::Identity(2, 2) / 2.0);
  check_close(visibility(mixed, UnitaryMatrix::trusted(Matrix::Identity(2, 2))),
              1.0, 1e-15);
  check_close(visibility(mixed, UnitaryMatrix::trusted(pauli_z())), 0.0,
              1e-15);

  // Tr(rho (sigma_z (x) I)) = (1 - 1)/2 for the Bell projector
  const DensityMatrix bell = bell_state(0).projector();
  const UnitaryMatrix zi =
      UnitaryMatrix::trusted(kron(pauli_z(), Matrix::Identity(2, 2)));
  check_close(visibility(bell, zi), 0.0, 1e-15);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 3, seed).rho();
    check_close(
        visibility(rho, UnitaryMatrix::trusted(Matrix::Identity(4, 4))), 1.0,
        1e-12);
  }
  CHECK_THROWS_AS(
      visibility(mixed, UnitaryMatrix::trusted(Matrix::Identity(3, 3))),
      DimensionError);
}

TEST_CASE("relative phase fixtures") {
  Matrix u = Matrix::Identity(2, 2);
  u(0, 0) = std::polar(1.0, 0.7);
  Matrix proj0 = Matrix::Zero(2, 2);
  proj0(0, 0) = 1.0;
  check_close(relative_phase(DensityMatrix::trusted(proj0),
                             UnitaryMatrix::trusted(u)),
              0.7, 1e-14);

  const DensityMatrix bell = bell_state(0).projector();
  check_close(relative_phase(bell,
                             UnitaryMatrix::trusted(Matrix::Identity(4, 4))),
              0.0, 1e-15);

  // |+><+| with sigma_x: Tr = 1
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  check_close(relative_phase(DensityMatrix::trusted(plus),
                             UnitaryMatrix::trusted(pauli_x())),
              0.0, 1e-15);

  // zero visibility has no phase
  const DensityMatrix mixed =
      DensityMatrix::trusted(Matrix::Identity(2, 2) / 2.0);
  CHECK_THROWS_AS(relative_phase(mixed, UnitaryMatrix::trusted(pauli_z())),
                  UndefinedPhaseError);
}

TEST_CASE("q_disturbance fixtures") {
  check_close(q_disturbance(bell_state(0).to_bipartite(), kComp2, kComp2),
              std::sqrt(0.5), 1e-12);
  check_close(q_disturbance(werner(0.5), kComp2, kComp2), std::sqrt(0.125),
              1e-12);

  Eigen::MatrixXd grid(2, 3);
  grid << 0.1, 0.2, 0.05, 0.25, 0.3, 0.1;
  check_close(q_disturbance(classical_classical(grid), kComp2, kComp3), 0.0,
              1e-12);
}

TEST_CASE("q breakdown: the two squared routes agree") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteState state = random_density(Dims{2, 3}, 4, seed);
    const auto detail = q_disturbance_detail(state, haar_basis(2, 30 + seed),
                                             haar_basis(3, 60 + seed));
    check_close(detail.q_squared_norm, detail.q_squared_purity, 1e-10);
    check_close(detail.q * detail.q, detail.q_squared_norm, 1e-12);
  }
}

TEST_CASE("q is covariant under local basis rotations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipartiteState state = random_density(Dims{2, 2}, 3, 90 + seed);
    const Matrix wa = HaarSampler(2, 200 + seed).sample(0).matrix();
    const Matrix wb = HaarSampler(2, 300 + seed).sample(0).matrix();
    const Matrix w = kron(wa, wb);
    const BipartiteState rotated(
        state.dims(),
        DensityMatrix::trusted(w * state.matrix() * w.adjoint()));
    const double q_plain = q_disturbance(state, kComp2, kComp2);
    const double q_rotated = q_disturbance(
        rotated,
        MeasurementBasis::from_unitary(UnitaryMatrix::trusted(wa)),
        MeasurementBasis::from_unitary(UnitaryMatrix::trusted(wb)));
    check_close(q_plain, q_rotated, 1e-12);
  }
}

TEST_CASE("product states have Q = 0 in any basis containing the factors") {
  auto basis_containing = [](const Vector& v, std::uint64_t seed) {
    // QR of [v | gaussian columns]: the Q factor's first column is v up to
    // phase, which the projectors do not see.
    const int d = static_cast<int>(v.size());
    auto rng = substream_rng(seed, RngStream::kStateConstruction, 5);
    Matrix a(d, d);
    a.col(0) = v;
    for (int c = 1; c < d; ++c) a.col(c) = complex_gaussian(d, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    return MeasurementBasis::from_unitary(UnitaryMatrix::trusted(
        qr.householderQ() * Matrix::Identity(d, d)));
  };

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rng = substream_rng(1000 + seed, RngStream::kStateConstruction, 0);
    Vector psi_a = complex_gaussian(2, rng);
    psi_a /= psi_a.norm();
    Vector psi_b = complex_gaussian(3, rng);
    psi_b /= psi_b.norm();
    const PureState product = product_state(psi_a, psi_b);
    const double q = q_disturbance(product.to_bipartite(),
                                   basis_containing(psi_a, 2000 + seed),
                                   basis_containing(psi_b, 3000 + seed));
    check_close(q, 0.0, 1e-10);
  }
}

TEST_CASE("noisy disturbance equals epsilon * Q across the grid") {
  check_close(
      q_disturbance_noisy(bell_state(0).to_bipartite(), 0.0, kComp2, kComp2),
      0.0, 1e-15);
  check_close(
      q_disturbance_noisy(bell_state(0).to_bipartite(), 1.0, kComp2, kComp2),
      std::sqrt(0.5), 1e-12);
  check_close(
      q_disturbance_noisy(bell_state(0).to_bipartite(), 0.5, kComp2, kComp2),
      0.5 * std::sqrt(0.5), 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteState state = random_density(Dims{2, 2}, 3, 400 + seed);
    const double q = q_disturbance(state, kComp2, kComp2);
    for (int k = 0; k <= 10; ++k) {
      const double eps = k / 10.0;
      check_close(q_disturbance_noisy(state, eps, kComp2, kComp2), eps * q,
                  1e-12);
    }
  }
}

TEST_CASE("schmidt fixtures") {
  const auto bell = schmidt(bell_state(0));
  REQUIRE(bell.coefficients.size() == 2);
  check_close(bell.coefficients[0], 0.5, 1e-12);
  check_close(bell.coefficients[1], 0.5, 1e-12);

  Vector e0(2);
  e0 << 1, 0;
  const auto product = schmidt(product_state(e0, e0));
  check_close(product.coefficients[0], 1.0, 1e-12);
  check_close(product.coefficients[1], 0.0, 1e-12);

  const auto skewed = schmidt(schmidt_state({0.8, 0.2}));
  check_close(skewed.coefficients[0], 0.8, 1e-12);
  check_close(skewed.coefficients[1], 0.2, 1e-12);
}

TEST_CASE("schmidt spectrum matches the reduced-state eigenvalues") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (Dims dims : {Dims{2, 3}, Dims{3, 3}}) {
      const PureState psi = random_pure(dims, 500 + seed);
      const auto spectrum = schmidt(psi);
      // independent route: Hermitian eigensolver on Tr_B |psi><psi|
      const Matrix rho_a =
          partial_trace(psi.projector().matrix(), dims, Subsystem::A);
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho_a, Eigen::EigenvaluesOnly);
      REQUIRE(spectrum.coefficients.size() ==
              static_cast<std::size_t>(es.eigenvalues().size()));
      double sum = 0.0;
      for (std::size_t i = 0; i < spectrum.coefficients.size(); ++i) {
        // eigenvalues come out ascending; schmidt is nonincreasing
        const double expected =
            es.eigenvalues()(es.eigenvalues().size() - 1 - i);
        check_close(spectrum.coefficients[i], expected, 1e-10);
        sum += spectrum.coefficients[i];
      }
      check_close(sum, 1.0, 1e-10);
    }
  }
}

TEST_CASE("linear entanglement and concurrence fixtures") {
  check_close(linear_entanglement(bell_state(0)), 0.5, 1e-12);
  check_close(concurrence(bell_state(0)), 1.0, 1e-12);

  Vector e0(2);
  e0 << 1, 0;
  const PureState product = product_state(e0, e0);
  check_close(linear_entanglement(product), 0.0, 1e-12);
  check_close(concurrence(product), 0.0, 1e-12);

  const PureState skewed = schmidt_state({0.8, 0.2});
  check_close(linear_entanglement(skewed), 0.32, 1e-12);
  check_close(concurrence(skewed), 0.8, 1e-12);
}

TEST_CASE("ef_decomposition_average fixtures") {
  PureDecomposition single;
  single.weights = {1.0};
  single.members = {schmidt_state({0.8, 0.2})};
  check_close(ef_decomposition_average(single), 0.32, 1e-12);

  // eigendecomposition of Werner(1) is the Bell projector itself
  PureDecomposition bell_only;
  bell_only.weights = {1.0};
  bell_only.members = {bell_state(0)};
  check_close(ef_decomposition_average(bell_only), 0.5, 1e-12);

  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  PureDecomposition classical;
  classical.weights = {0.5, 0.5};
  classical.members = {product_state(e0, e0), product_state(e1, e1)};
  check_close(ef_decomposition_average(classical), 0.0, 1e-12);
}

TEST_CASE("ef_visibility_bound fixtures; bound can be loose") {
  check_close(ef_visibility_bound(bell_state(0).to_bipartite()), 0.5, 1e-12);

  Vector e0(2);
  e0 << 1, 0;
  check_close(ef_visibility_bound(product_state(e0, e0).to_bipartite()), 0.0,
              1e-12);

  // equal mixture of |00>, |11>: bound is 0.5 while the best decomposition
  // average is 0
  Vector e1(2);
  e1 << 0, 1;
  PureDecomposition classical;
  classical.weights = {0.5, 0.5};
  classical.members = {product_state(e0, e0), product_state(e1, e1)};
  const BipartiteState mixture = classical.reconstruct();
  check_close(ef_visibility_bound(mixture), 0.5, 1e-12);
  check_close(ef_decomposition_average(classical), 0.0, 1e-12);

  // consistency with the estimate form at the exact average visibility
  const double v2 = purity(partial_trace(mixture, Subsystem::A)) / 2.0;
  check_close(ef_visibility_bound_from_estimate(2, v2),
              ef_visibility_bound(mixture), 1e-14);
}

TEST_CASE("complementarity report fixtures") {
  const auto bell =
      complementarity_report(bell_state(0).to_bipartite(), kComp2);
  check_close(bell.ef_bound, 0.5, 1e-12);
  check_close(bell.q_one_sided * bell.q_one_sided / 2.0, 0.25, 1e-12);
  check_close(bell.purity_b / 4.0, 0.125, 1e-12);
  check_close(bell.lhs_q_squared, 0.875, 1e-12);
  check_close(bell.slack, 0.125, 1e-12);
  CHECK(bell.lhs_q_squared <= 1.0 + 1e-12);

  const BipartiteState maximally_mixed(
      Dims{2, 2}, DensityMatrix::trusted(Matrix::Identity(4, 4) / 4.0));
  const auto mixed = complementarity_report(maximally_mixed, kComp2);
  check_close(mixed.ef_bound, 0.5, 1e-12);
  check_close(mixed.q_one_sided, 0.0, 1e-12);
  check_close(mixed.lhs_q_squared, 0.625, 1e-12);

  Vector e0(2);
  e0 << 1, 0;
  const auto product =
      complementarity_report(product_state(e0, e0).to_bipartite(), kComp2);
  check_close(product.ef_bound, 0.0, 1e-12);
  check_close(product.q_one_sided, 0.0, 1e-12);
  check_close(product.lhs_q_squared, 0.25, 1e-12);
}

TEST_CASE("complementarity derivation chain on random states") {
  int count = 0;
  for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const BipartiteState state =
          random_density(dims, 1 + static_cast<int>(seed % dims.total()),
                         700 + seed);
      const MeasurementBasis ba = haar_basis(dims.a, 800 + seed);
      const double q = q_disturbance_one_sided(state, ba);
      const double purity_a = purity(partial_trace(state, Subsystem::A));
      const double purity_b = purity(partial_trace(state, Subsystem::B));
      CHECK(purity_a >=
            q * q / dims.b + purity_b / dims.total() - 1e-10);
      ++count;
    }
  }
  CHECK(count == 60);
}

TEST_CASE("purity ratio boundary cases and bounds") {
  const BipartiteState maximally_mixed(
      Dims{2, 2}, DensityMatrix::trusted(Matrix::Identity(4, 4) / 4.0));
  const auto at_floor = purity_ratio_check(maximally_mixed);
  check_close(at_floor.ratio, 0.5, 1e-12);  // exactly 1/d_B
  CHECK(at_floor.within_bounds);

  Vector e0(2);
  e0 << 1, 0;
  const auto product = purity_ratio_check(product_state(e0, e0).to_bipartite());
  check_close(product.ratio, 1.0, 1e-12);
  CHECK(product.within_bounds);

  const auto bell = purity_ratio_check(bell_state(0).to_bipartite());
  check_close(bell.ratio, 2.0, 1e-12);  // exactly d_B
  CHECK(bell.within_bounds);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BipartiteState state = random_density(Dims{2, 3}, 3, 900 + seed);
    CHECK(purity_ratio_check(state).within_bounds);
  }
}
