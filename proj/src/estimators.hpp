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

#ifndef VISQ_ESTIMATORS_HPP
#define VISQ_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "haar.hpp"
#include "measures.hpp"

namespace visq {

/// Monte Carlo estimate of a Haar average. std_error is the unbiased sample
/// standard deviation divided by sqrt(n). exact_value carries the
/// closed-form counterpart when one exists.
struct EstimateResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> exact_value;
};

/// Estimate versus closed-form prediction. sigma_distance is
/// |mean - predicted| / std_error, with 0/0 taken as 0 and x/0 as infinity
/// (an exactly-zero spread passes only when the means agree exactly).
struct TheoremCheck {
  EstimateResult estimate;
  double predicted = 0.0;
  double sigma_distance = 0.0;
  bool pass = false;
};

double sigma_distance(double mean, double predicted, double std_error);

/// Caps the number of worker threads used by the sample loops. 0 restores
/// the hardware default. Results are bit-identical for every setting: the
/// loop reduces fixed-size chunks in index order.
void set_max_threads(int n);
int max_threads();

/// Deterministic chunked mean of sample(0..n-1). sample(i) must be a pure
/// function of i; it is invoked from multiple threads.
EstimateResult mc_estimate(std::uint64_t n, std::uint64_t seed,
                           const std::function<double(std::uint64_t)>& sample);

/// MC mean of |Tr(rho U)|^2 over Haar draws; exact value Tr(rho^2)/d.
EstimateResult mc_avg_sq_visibility(const DensityMatrix& rho, std::uint64_t n,
                                    std::uint64_t seed);

/// Local-unitary variant: mean of |Tr(rho (U (x) V))|^2 with independent
/// Haar draws on U(d_A) and U(d_B); exact value Tr(rho^2)/(d_A d_B).
EstimateResult mc_avg_sq_visibility_local(const BipartiteState& state,
                                          std::uint64_t n, std::uint64_t seed);

struct TheoremOptions {
  std::uint64_t n_samples = 50000;
  std::uint64_t seed = 0;
  double sigma_threshold = 4.0;
  // Paired sampling evaluates both visibilities at the same U per sample;
  // far tighter confidence interval, identical expectation. The unpaired
  // mode draws an independent unitary for each term.
  bool paired = true;
};

/// Haar average of |Tr(rho U)|^2 - |Tr(Phi(rho) U)|^2 against the predicted
/// Q(rho)^2 / (d_A d_B).
TheoremCheck verify_theorem1(const BipartiteState& state,
                             const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b,
                             const TheoremOptions& options);

/// Noisy-measurement variant: predicted eps (2 - eps) Q(rho)^2 / (d_A d_B).
TheoremCheck verify_noisy_theorem(const BipartiteState& state, double epsilon,
                                  const MeasurementBasis& basis_a,
                                  const MeasurementBasis& basis_b,
                                  const TheoremOptions& options);

/// Entanglement of a pure state read off the average local visibility:
/// E = 1 - d_A * mean(|Tr(rho_A U)|^2), C = sqrt(2 E). The concurrence
/// standard error is delta-method propagated.
struct EntanglementEstimate {
  TheoremCheck linear_entropy;
  TheoremCheck concurrence;
};

EntanglementEstimate entanglement_from_visibility(const PureState& psi,
                                                  std::uint64_t n,
                                                  std::uint64_t seed,
                                                  double sigma_threshold = 4.0);

/// Random ensemble-equivalent decomposition of `state`: the eigenvector
/// ensemble mixed by a Haar-random isometry. Reconstructs the state exactly.
PureDecomposition sample_decomposition(const BipartiteState& state,
                                       std::uint64_t seed,
                                       std::uint64_t index);

/// Decomposition-average sweep against the visibility bound 1 - Tr(rho_A^2).
struct EfBoundReport {
  double bound = 0.0;
  double best_average = 0.0;   // tightest upper bound on E_F found
  double worst_average = 0.0;
  std::uint64_t n_decompositions = 0;
  bool all_within_bound = false;  // every average <= bound + 1e-10
};

EfBoundReport verify_ef_bound(const BipartiteState& state,
                              std::uint64_t n_decomps, std::uint64_t seed);

/// Deviation of the empirical mean of U (x) U^dag from F/d, plus Tr(M F).
struct SwapMomentReport {
  double hs_deviation = 0.0;
  double trace_mf = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

SwapMomentReport verify_swap_moment(int dim, std::uint64_t n,
                                    std::uint64_t seed);

}  // namespace visq

#endif  // VISQ_ESTIMATORS_HPP
