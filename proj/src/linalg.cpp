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

#include "linalg.hpp"

#include <cmath>
#include <sstream>

namespace visq {

namespace {

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) os << "; ";
    os << issues[i].invariant << " violated by " << issues[i].magnitude;
  }
  return os.str();
}

}  // namespace

std::vector<ValidationIssue> validate_density(const Matrix& m,
                                              const Tolerances& tol) {
  std::vector<ValidationIssue> issues;

  long bad_entries = 0;
  for (long c = 0; c < m.cols(); ++c)
    for (long r = 0; r < m.rows(); ++r)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        ++bad_entries;
  if (bad_entries > 0) {
    issues.push_back({"finite", static_cast<double>(bad_entries)});
    return issues;  // remaining checks are meaningless on NaN/Inf input
  }

  if (m.rows() != m.cols()) {
    issues.push_back(
        {"square", static_cast<double>(std::abs(m.rows() - m.cols()))});
    return issues;
  }
  if (m.rows() == 0) {
    issues.push_back({"square", 1.0});
    return issues;
  }

  // Hermiticity error is reported separately from positivity: the eigenvalue
  // check runs on the Hermitian part (m + m')/2.
  const Matrix herm = (m + m.adjoint()) / 2.0;
  const double asym = hs_norm(m - herm);
  if (asym > tol.hermiticity) issues.push_back({"hermiticity", asym});

  const double trace_dev = std::abs(m.trace() - cxd(1.0, 0.0));
  if (trace_dev > tol.trace) issues.push_back({"trace", trace_dev});

  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.positivity) issues.push_back({"positivity", -min_eig});

  return issues;
}

DensityMatrix DensityMatrix::validated(Matrix m, const Tolerances& tol) {
  auto issues = validate_density(m, tol);
  if (!issues.empty())
    throw ValidationError("invalid density matrix: " + describe(issues),
                          std::move(issues));
  return DensityMatrix(std::move(m));
}

BipartiteState::BipartiteState(Dims dims, DensityMatrix rho)
    : dims_(dims), rho_(std::move(rho)) {
  if (dims_.a < 1 || dims_.b < 1)
    throw DimensionError("subsystem dimensions must be positive");
  if (rho_.dim() != dims_.total())
    throw DimensionError("state dimension " + std::to_string(rho_.dim()) +
                         " does not match dims (" + std::to_string(dims_.a) +
                         ", " + std::to_string(dims_.b) + ")");
}

UnitaryMatrix UnitaryMatrix::checked(Matrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError("unitary matrix must be square and non-empty");
  const int d = static_cast<int>(m.rows());
  const double dev = hs_norm(m.adjoint() * m - Matrix::Identity(d, d));
  if (dev > tol)
    throw ValidationError("matrix is not unitary: ||U'U - I|| = " +
                              std::to_string(dev),
                          {{"unitarity", dev}});
  return UnitaryMatrix(std::move(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

cxd trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionError("trace_product: incompatible shapes");
  cxd sum = 0.0;
  for (long i = 0; i < a.rows(); ++i)
    for (long k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, i);
  return sum;
}

Matrix partial_trace(const Matrix& m, Dims dims, Subsystem keep) {
  const int da = dims.a;
  const int db = dims.b;
  if (m.rows() != m.cols() || m.rows() != dims.total())
    throw DimensionError("partial_trace: matrix does not match dims");

  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep) {
  return DensityMatrix::trusted(
      partial_trace(state.matrix(), state.dims(), keep));
}

Matrix swap_operator(int d) {
  if (d < 1) throw DimensionError("swap_operator: dimension must be >= 1");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

double hs_norm(const Matrix& a) { return a.norm(); }

double purity(const DensityMatrix& rho) {
  return trace_product(rho.matrix(), rho.matrix()).real();
}

}  // namespace visq
