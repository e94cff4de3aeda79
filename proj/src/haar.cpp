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

#include "haar.hpp"

#include <cmath>

namespace visq {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

Vector complex_gaussian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cxd(re * kInvSqrt2, im * kInvSqrt2);
  }
  return v;
}

Matrix ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  // Row-major fill order fixes the draw sequence independently of the
  // storage layout.
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cxd(re * kInvSqrt2, im * kInvSqrt2);
    }
  return g;
}

Matrix qr_orthonormal_unphased(int dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  const Matrix g = ginibre(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR();
  // A = (Q Lambda)(Lambda' R) is the unique decomposition with a positive
  // real R diagonal, and that Q factor is the Haar-distributed one.
  for (int j = 0; j < dim; ++j) {
    const cxd rjj = r(j, j);
    const double mag = std::abs(rjj);
    const cxd phase = mag > 0.0 ? rjj / mag : cxd(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

HaarSampler::HaarSampler(int dim, std::uint64_t base_seed)
    : dim_(dim), base_seed_(base_seed) {
  if (dim < 1) throw DimensionError("HaarSampler: dimension must be >= 1");
}

UnitaryMatrix HaarSampler::sample(std::uint64_t index) const {
  auto rng = substream_rng(base_seed_, RngStream::kHaarSample, index);
  return UnitaryMatrix::trusted(haar_unitary(dim_, rng));
}

Matrix estimate_m_operator(const HaarSampler& sampler,
                           std::uint64_t n_samples) {
  if (n_samples < 1)
    throw std::invalid_argument("estimate_m_operator: n_samples must be >= 1");
  const int d = sampler.dim();
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const Matrix u = sampler.sample(i).matrix();
    acc += kron(u, u.adjoint());
  }
  return acc / static_cast<double>(n_samples);
}

}  // namespace visq
