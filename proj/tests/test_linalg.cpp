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
#include <random>

#include "states.hpp"
#include "test_support.hpp"

using namespace visq;
using namespace test_support;

namespace {

Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cxd(normal(rng), normal(rng));
  return m;
}

}  // namespace

TEST_CASE("kron: identity blocks") {
  check_matrix_close(kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)),
                     Matrix::Identity(4, 4), 0.0);
}

TEST_CASE("kron: dimension rule") {
  std::mt19937_64 rng(1);
  const Matrix a = random_complex(2, 3, rng);
  const Matrix b = random_complex(4, 5, rng);
  const Matrix out = kron(a, b);
  CHECK(out.rows() == 8);
  CHECK(out.cols() == 15);
  // spot-check the block structure
  check_close(std::abs(out(5, 7) - a(1, 1) * b(1, 2)), 0.0, 1e-15);
}

TEST_CASE("kron: sigma_x (x) sigma_x is the anti-diagonal of ones") {
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 3) = expected(1, 2) = expected(2, 1) = expected(3, 0) = 1.0;
  check_matrix_close(kron(pauli_x(), pauli_x()), expected, 0.0);
}

TEST_CASE("kron: associativity on random inputs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_complex(2, 2, rng);
    const Matrix b = random_complex(3, 3, rng);
    const Matrix c = random_complex(2, 2, rng);
    check_matrix_close(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12);
  }
}

TEST_CASE("trace_product equals the full product trace") {
  std::mt19937_64 rng(11);
  const Matrix a = random_complex(4, 4, rng);
  const Matrix b = random_complex(4, 4, rng);
  const cxd direct = (a * b).trace();
  check_close(std::abs(trace_product(a, b) - direct), 0.0, 1e-12);
}

TEST_CASE("partial_trace: Bell state reduces to I/2") {
  const BipartiteState bell = bell_state(0).to_bipartite();
  check_matrix_close(partial_trace(bell, Subsystem::A).matrix(),
                     Matrix::Identity(2, 2) / 2.0, 1e-12);
  check_matrix_close(partial_trace(bell, Subsystem::B).matrix(),
                     Matrix::Identity(2, 2) / 2.0, 1e-12);
}

TEST_CASE("partial_trace: product state reduces to its factors") {
  const Matrix a = random_density(Dims{2, 1}, 2, 21).matrix();
  const Matrix b = random_density(Dims{3, 1}, 3, 22).matrix();
  const BipartiteState joint(Dims{2, 3}, DensityMatrix::trusted(kron(a, b)));
  check_matrix_close(partial_trace(joint, Subsystem::A).matrix(), a, 1e-12);
  check_matrix_close(partial_trace(joint, Subsystem::B).matrix(), b, 1e-12);
}

TEST_CASE("partial_trace: sqrt(0.8)|00> + sqrt(0.2)|11> reduces to "
          "diag(0.8, 0.2)") {
  const PureState psi = schmidt_state({0.8, 0.2});
  Matrix expected(2, 2);
  expected << 0.8, 0, 0, 0.2;
  check_matrix_close(partial_trace(psi.to_bipartite(), Subsystem::A).matrix(),
                     expected, 1e-12);
}

TEST_CASE("partial_trace preserves the trace") {
  for (int seed = 0; seed < 10; ++seed) {
    const BipartiteState state = random_density(Dims{2, 3}, 4, seed);
    const DensityMatrix reduced = partial_trace(state, Subsystem::B);
    check_close(reduced.matrix().trace().real(), 1.0, 1e-12);
    check_close(reduced.matrix().trace().imag(), 0.0, 1e-12);
  }
}

TEST_CASE("swap operator: action, trace, involution") {
  const Matrix f = swap_operator(2);
  // F|01> = |10>, F|00> = |00>
  Vector e01 = Vector::Zero(4);
  e01(1) = 1.0;
  Vector e10 = Vector::Zero(4);
  e10(2) = 1.0;
  check_close((f * e01 - e10).norm(), 0.0, 0.0);
  Vector e00 = Vector::Zero(4);
  e00(0) = 1.0;
  check_close((f * e00 - e00).norm(), 0.0, 0.0);

  for (int d : {2, 3, 4}) {
    const Matrix fd = swap_operator(d);
    check_close(fd.trace().real(), static_cast<double>(d), 0.0);
    check_matrix_close(fd * fd, Matrix::Identity(d * d, d * d), 0.0);
  }
}

TEST_CASE("swap operator: Tr((A (x) B) F) = Tr(AB) on random pairs") {
  std::mt19937_64 rng(13);
  const Matrix f = swap_operator(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_complex(3, 3, rng);
    const Matrix b = random_complex(3, 3, rng);
    const cxd lhs = trace_product(kron(a, b), f);
    const cxd rhs = trace_product(a, b);
    check_close(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST_CASE("hs_norm fixtures") {
  check_close(hs_norm(Matrix::Identity(5, 5)), std::sqrt(5.0), 1e-14);
  check_close(hs_norm(Matrix::Zero(3, 3)), 0.0, 0.0);
  // eigenvalues of sigma_x - sigma_z are +-sqrt(2)
  check_close(hs_norm(pauli_x() - pauli_z()), 2.0, 1e-14);
}

TEST_CASE("purity fixtures") {
  for (int d : {2, 3, 6}) {
    const auto mixed =
        DensityMatrix::trusted(Matrix::Identity(d, d) / static_cast<double>(d));
    check_close(purity(mixed), 1.0 / d, 1e-14);
  }
  check_close(purity(bell_state(0).projector()), 1.0, 1e-12);
}

TEST_CASE("purity of Werner(1/2) by direct 4x4 arithmetic") {
  // Oracle: build p*P + (1-p)*I/4 entrywise and sum |entries| products.
  Matrix w = Matrix::Zero(4, 4);
  const double p = 0.5;
  w(0, 0) = w(3, 3) = p * 0.5 + (1 - p) / 4.0;
  w(0, 3) = w(3, 0) = p * 0.5;
  w(1, 1) = w(2, 2) = (1 - p) / 4.0;
  double direct = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) direct += (w(r, c) * w(c, r)).real();
  check_close(direct, 0.4375, 1e-15);
  check_close(purity(werner(0.5).rho()), direct, 1e-14);
}

TEST_CASE("hs_norm(rho)^2 equals purity(rho)") {
  for (int seed = 0; seed < 20; ++seed) {
    const BipartiteState state = random_density(Dims{2, 2}, 1 + seed % 4, seed);
    const double n = hs_norm(state.matrix());
    check_close(n * n, purity(state.rho()), 1e-12);
  }
}

TEST_CASE("purity bounds 1/d <= Tr(rho^2) <= 1") {
  for (int seed = 0; seed < 20; ++seed) {
    const Dims dims{2, 3};
    const BipartiteState state = random_density(dims, 1 + seed % 6, 100 + seed);
    const double p = purity(state.rho());
    CHECK(p >= 1.0 / dims.total() - 1e-12);
    CHECK(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("validate_density: accepts I/2") {
  CHECK(validate_density(Matrix::Identity(2, 2) / 2.0).empty());
}

TEST_CASE("validate_density: trace violation carries its magnitude") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.7;
  m(1, 1) = 0.4;
  const auto issues = validate_density(m);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].invariant == "trace");
  check_close(issues[0].magnitude, 0.1, 1e-12);
}

TEST_CASE("validate_density: sigma_x violates trace and positivity") {
  const auto issues = validate_density(pauli_x());
  REQUIRE(issues.size() == 2);
  CHECK(issues[0].invariant == "trace");
  check_close(issues[0].magnitude, 1.0, 1e-12);
  CHECK(issues[1].invariant == "positivity");
  check_close(issues[1].magnitude, 1.0, 1e-12);
}

TEST_CASE("validate_density: non-square and non-finite inputs") {
  CHECK(validate_density(Matrix::Zero(2, 3)).front().invariant == "square");
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = cxd(std::nan(""), 0.0);
  CHECK(validate_density(m).front().invariant == "finite");
}

TEST_CASE("validate_density: hermiticity reported separately") {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = cxd(1e-6, 0.0);  // asymmetric perturbation
  const auto issues = validate_density(m);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].invariant == "hermiticity");
}

TEST_CASE("DensityMatrix::validated throws with the issue list") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.7;
  m(1, 1) = 0.4;
  try {
    DensityMatrix::validated(m);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].invariant == "trace");
  }
}

TEST_CASE("UnitaryMatrix::checked rejects non-unitary input") {
  CHECK_THROWS_AS(UnitaryMatrix::checked(pauli_x() * 2.0), ValidationError);
  CHECK_NOTHROW(UnitaryMatrix::checked(pauli_y()));
}

TEST_CASE("BipartiteState rejects mismatched dims") {
  CHECK_THROWS_AS(
      BipartiteState(Dims{2, 3},
                     DensityMatrix::trusted(Matrix::Identity(5, 5) / 5.0)),
      DimensionError);
}
