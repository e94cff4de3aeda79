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

#ifndef VISQ_LINALG_HPP
#define VISQ_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace visq {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical tolerances applied at validation boundaries (file load, CLI
/// input). Hot loops reuse already-validated values and skip these checks.
struct Tolerances {
  double hermiticity = 1e-9;
  double trace = 1e-9;
  double unitarity = 1e-9;
  // Eigenvalues may dip slightly negative after partial-trace round-off.
  double positivity = 1e-8;
};

/// One violated invariant found during validation, with its magnitude
/// (e.g. invariant "trace", magnitude |Tr(m) - 1|).
struct ValidationIssue {
  std::string invariant;
  double magnitude = 0.0;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<ValidationIssue> issues)
      : std::runtime_error(what), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subsystem dimensions (d_A, d_B) of a bipartite Hilbert space.
struct Dims {
  int a = 1;
  int b = 1;

  int total() const { return a * b; }
  bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

/// Checks the density-matrix invariants (finite entries, square, Hermitian,
/// unit trace, positive semidefinite) and returns one issue per violation.
/// An empty result means `m` is a valid density matrix at the tolerances.
std::vector<ValidationIssue> validate_density(const Matrix& m,
                                              const Tolerances& tol = {});

/// d x d Hermitian positive-semidefinite unit-trace operator.
class DensityMatrix {
 public:
  /// Validates all invariants; throws ValidationError with the full issue
  /// list on failure.
  static DensityMatrix validated(Matrix m, const Tolerances& tol = {});

  /// Wraps without checking. For construction sites that are valid by
  /// arithmetic (channel outputs, partial traces) and hot loops.
  static DensityMatrix trusted(Matrix m) { return DensityMatrix(std::move(m)); }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

 private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}

  Matrix mat_;
};

/// Density matrix on H_A (x) H_B together with the tensor split.
/// Basis ordering is row-major: composite index (i, j) -> i * d_B + j.
class BipartiteState {
 public:
  BipartiteState(Dims dims, DensityMatrix rho);

  Dims dims() const { return dims_; }
  const DensityMatrix& rho() const { return rho_; }
  const Matrix& matrix() const { return rho_.matrix(); }

 private:
  Dims dims_;
  DensityMatrix rho_;
};

/// d x d matrix with U'U = I within tolerance.
class UnitaryMatrix {
 public:
  /// Throws ValidationError when ||U'U - I||_HS exceeds `tol`.
  static UnitaryMatrix checked(Matrix m, double tol = Tolerances{}.unitarity);
  static UnitaryMatrix trusted(Matrix m) { return UnitaryMatrix(std::move(m)); }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

 private:
  explicit UnitaryMatrix(Matrix m) : mat_(std::move(m)) {}

  Matrix mat_;
};

/// Kronecker product: (m x n) (x) (p x q) -> (mp x nq) with blocks a_ij * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace of the product a * b in O(rows * cols), without forming the product.
cxd trace_product(const Matrix& a, const Matrix& b);

/// Reduced state of the kept subsystem. Trace is preserved.
DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep);

/// Partial trace of a raw d_A*d_B square matrix over the discarded factor.
Matrix partial_trace(const Matrix& m, Dims dims, Subsystem keep);

/// Swap operator F on C^d (x) C^d: F|ij> = |ji>. F^2 = I, Tr(F) = d.
Matrix swap_operator(int d);

/// Hilbert-Schmidt (Frobenius) norm sqrt(Tr(a' a)).
double hs_norm(const Matrix& a);

/// Tr(rho^2), in (0, 1]; equals 1 iff rho is pure.
double purity(const DensityMatrix& rho);

}  // namespace visq

#endif  // VISQ_LINALG_HPP
