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

#include "estimators.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace visq {

namespace {

// Chunk size is fixed so the reduction order never depends on the worker
// count: each chunk is summed serially, chunk sums are combined in index
// order.
constexpr std::uint64_t kChunkSize = 1024;

std::atomic<int> g_max_threads{0};

int effective_threads(std::uint64_t n_chunks) {
  int cap = g_max_threads.load();
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (static_cast<std::uint64_t>(cap) > n_chunks)
    cap = static_cast<int>(n_chunks);
  return cap;
}

TheoremCheck make_check(EstimateResult estimate, double predicted,
                        double sigma_threshold) {
  TheoremCheck check;
  check.estimate = std::move(estimate);
  check.predicted = predicted;
  check.sigma_distance =
      sigma_distance(check.estimate.mean, predicted, check.estimate.std_error);
  check.pass = check.sigma_distance <= sigma_threshold;
  return check;
}

}  // namespace

double sigma_distance(double mean, double predicted, double std_error) {
  const double diff = std::abs(mean - predicted);
  if (std_error == 0.0)
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / std_error;
}

void set_max_threads(int n) { g_max_threads.store(n); }

int max_threads() { return g_max_threads.load(); }

EstimateResult mc_estimate(
    std::uint64_t n, std::uint64_t seed,
    const std::function<double(std::uint64_t)>& sample) {
  if (n < 2) throw std::invalid_argument("mc_estimate: need n >= 2 samples");

  const std::uint64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<double> sums(n_chunks, 0.0);
  std::vector<double> sq_sums(n_chunks, 0.0);

  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min(begin + kChunkSize, n);
      double s = 0.0;
      double s2 = 0.0;
      for (std::uint64_t i = begin; i < end; ++i) {
        const double v = sample(i);
        s += v;
        s2 += v * v;
      }
      sums[c] = s;
      sq_sums[c] = s2;
    }
  };

  const int n_threads = effective_threads(n_chunks);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double sum = 0.0;
  double sq_sum = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    sum += sums[c];
    sq_sum += sq_sums[c];
  }

  EstimateResult result;
  result.n_samples = n;
  result.seed = seed;
  result.mean = sum / static_cast<double>(n);
  const double variance =
      std::max(0.0, (sq_sum - static_cast<double>(n) * result.mean *
                                  result.mean) /
                        static_cast<double>(n - 1));
  result.std_error = std::sqrt(variance / static_cast<double>(n));
  return result;
}

EstimateResult mc_avg_sq_visibility(const DensityMatrix& rho, std::uint64_t n,
                                    std::uint64_t seed) {
  const int d = rho.dim();
  const Matrix& m = rho.matrix();
  auto result = mc_estimate(n, seed, [&](std::uint64_t i) {
    auto rng = substream_rng(seed, RngStream::kHaarSample, i);
    const Matrix u = haar_unitary(d, rng);
    return std::norm(trace_product(m, u));
  });
  result.exact_value = purity(rho) / d;
  return result;
}

EstimateResult mc_avg_sq_visibility_local(const BipartiteState& state,
                                          std::uint64_t n,
                                          std::uint64_t seed) {
  const Dims dims = state.dims();
  const Matrix& m = state.matrix();
  auto result = mc_estimate(n, seed, [&](std::uint64_t i) {
    auto rng = substream_rng(seed, RngStream::kHaarSample, i);
    const Matrix u = haar_unitary(dims.a, rng);
    const Matrix v = haar_unitary(dims.b, rng);
    return std::norm(trace_product(m, kron(u, v)));
  });
  result.exact_value = purity(state.rho()) / dims.total();
  return result;
}

namespace {

// Average of |Tr(rho U)|^2 - |Tr(sigma U)|^2 for two precomputed operators,
// either at the same U (paired) or at independent draws per term.
EstimateResult visibility_gap_estimate(const Matrix& rho, const Matrix& sigma,
                                       int dim, const TheoremOptions& options) {
  return mc_estimate(
      options.n_samples, options.seed, [&, dim](std::uint64_t i) {
        auto rng = substream_rng(options.seed, RngStream::kHaarSample, i);
        const Matrix u = haar_unitary(dim, rng);
        const double first = std::norm(trace_product(rho, u));
        if (options.paired)
          return first - std::norm(trace_product(sigma, u));
        const Matrix u2 = haar_unitary(dim, rng);
        return first - std::norm(trace_product(sigma, u2));
      });
}

}  // namespace

TheoremCheck verify_theorem1(const BipartiteState& state,
                             const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b,
                             const TheoremOptions& options) {
  const BipartiteState dephased = dephase_full(state, basis_a, basis_b);
  const double q = q_disturbance(state, basis_a, basis_b);
  const double predicted = q * q / state.dims().total();
  EstimateResult estimate = visibility_gap_estimate(
      state.matrix(), dephased.matrix(), state.dims().total(), options);
  estimate.exact_value = predicted;
  return make_check(std::move(estimate), predicted, options.sigma_threshold);
}

TheoremCheck verify_noisy_theorem(const BipartiteState& state, double epsilon,
                                  const MeasurementBasis& basis_a,
                                  const MeasurementBasis& basis_b,
                                  const TheoremOptions& options) {
  const BipartiteState mixed = noisy_measure(state, epsilon, basis_a, basis_b);
  const double q = q_disturbance(state, basis_a, basis_b);
  const double predicted =
      epsilon * (2.0 - epsilon) * q * q / state.dims().total();
  EstimateResult estimate = visibility_gap_estimate(
      state.matrix(), mixed.matrix(), state.dims().total(), options);
  estimate.exact_value = predicted;
  return make_check(std::move(estimate), predicted, options.sigma_threshold);
}

EntanglementEstimate entanglement_from_visibility(const PureState& psi,
                                                  std::uint64_t n,
                                                  std::uint64_t seed,
                                                  double sigma_threshold) {
  const int da = psi.dims().a;
  const Matrix rho_a =
      partial_trace(psi.projector().matrix(), psi.dims(), Subsystem::A);

  const EstimateResult vis = mc_estimate(n, seed, [&](std::uint64_t i) {
    auto rng = substream_rng(seed, RngStream::kHaarSample, i);
    const Matrix u = haar_unitary(da, rng);
    return std::norm(trace_product(rho_a, u));
  });

  EstimateResult e_est;
  e_est.mean = 1.0 - da * vis.mean;
  e_est.std_error = da * vis.std_error;
  e_est.n_samples = n;
  e_est.seed = seed;
  e_est.exact_value = linear_entanglement(psi);

  EstimateResult c_est;
  const double c_sq = 2.0 * e_est.mean;
  c_est.mean = std::sqrt(std::max(0.0, c_sq));
  // Delta method: se(C) = se(C^2) / (2 C); degenerates at C = 0 where the
  // linear-entropy check is the meaningful one.
  c_est.std_error = c_est.mean > 1e-9
                        ? (2.0 * e_est.std_error) / (2.0 * c_est.mean)
                        : std::numeric_limits<double>::infinity();
  c_est.n_samples = n;
  c_est.seed = seed;
  c_est.exact_value = concurrence(psi);

  const double e_predicted = *e_est.exact_value;
  const double c_predicted = *c_est.exact_value;
  EntanglementEstimate out;
  out.linear_entropy =
      make_check(std::move(e_est), e_predicted, sigma_threshold);
  out.concurrence = make_check(std::move(c_est), c_predicted, sigma_threshold);
  return out;
}

PureDecomposition sample_decomposition(const BipartiteState& state,
                                       std::uint64_t seed,
                                       std::uint64_t index) {
  const int d = state.dims().total();
  const Matrix herm =
      (state.matrix() + state.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sample_decomposition: eigendecomposition failed");

  std::vector<int> support;
  for (int k = 0; k < d; ++k)
    if (es.eigenvalues()(k) > 1e-12) support.push_back(k);
  if (support.empty())
    throw std::invalid_argument("sample_decomposition: state has no support");

  auto rng = substream_rng(seed, RngStream::kDecomposition, index);
  const Matrix w = haar_unitary(d, rng);  // isometry = first r columns

  PureDecomposition decomp;
  for (int j = 0; j < d; ++j) {
    Vector member = Vector::Zero(d);
    for (std::size_t c = 0; c < support.size(); ++c) {
      const int k = support[c];
      member += w(j, static_cast<int>(c)) *
                std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k);
    }
    const double weight = member.squaredNorm();
    if (weight < 1e-14) continue;
    member /= std::sqrt(weight);
    decomp.weights.push_back(weight);
    decomp.members.push_back(PureState::trusted(state.dims(), std::move(member)));
  }
  return decomp;
}

EfBoundReport verify_ef_bound(const BipartiteState& state,
                              std::uint64_t n_decomps, std::uint64_t seed) {
  if (n_decomps < 1)
    throw std::invalid_argument("verify_ef_bound: need n_decomps >= 1");
  EfBoundReport report;
  report.bound = ef_visibility_bound(state);
  report.n_decompositions = n_decomps;
  report.best_average = std::numeric_limits<double>::infinity();
  report.worst_average = -std::numeric_limits<double>::infinity();
  report.all_within_bound = true;
  for (std::uint64_t k = 0; k < n_decomps; ++k) {
    const PureDecomposition decomp = sample_decomposition(state, seed, k);
    const double avg = ef_decomposition_average(decomp);
    report.best_average = std::min(report.best_average, avg);
    report.worst_average = std::max(report.worst_average, avg);
    if (avg > report.bound + 1e-10) report.all_within_bound = false;
  }
  return report;
}

SwapMomentReport verify_swap_moment(int dim, std::uint64_t n,
                                    std::uint64_t seed) {
  const HaarSampler sampler(dim, seed);
  const Matrix m_hat = estimate_m_operator(sampler, n);
  const Matrix f = swap_operator(dim);
  SwapMomentReport report;
  report.hs_deviation = hs_norm(m_hat - f / static_cast<double>(dim));
  report.trace_mf = trace_product(m_hat, f).real();
  report.n_samples = n;
  report.seed = seed;
  return report;
}

}  // namespace visq
