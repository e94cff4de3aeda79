/* Copyright 2026 The visq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* visq -- interference visibility, measurement disturbance and entanglement
 * measures for bipartite quantum states, with Monte Carlo verification of
 * the Haar-average identities relating them.
 *
 * All functions return VISQ_OK on success; on failure visq_last_error()
 * carries a human-readable message for the calling thread. Handles returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function. Passing NULL to a *_free is a no-op.
 */

#ifndef VISQ_H
#define VISQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VISQ_API __declspec(dllexport)
#else
#define VISQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum visq_status {
  VISQ_OK = 0,
  VISQ_ERR_INVALID_ARGUMENT = 1,
  VISQ_ERR_DIMENSION_MISMATCH = 2,
  VISQ_ERR_VALIDATION = 3, /* a state/operator invariant is violated */
  VISQ_ERR_IO = 4,
  VISQ_ERR_PARSE = 5,
  VISQ_ERR_UNDEFINED_PHASE = 6, /* visibility too small for a phase */
  VISQ_ERR_BUFFER_TOO_SMALL = 7,
  VISQ_ERR_INTERNAL = 8
} visq_status;

/* Bipartite quantum state: a density matrix with a (d_A, d_B) tensor split,
 * optionally backed by a pure-state amplitude vector. */
typedef struct visq_state visq_state;

/* Unitary matrix; doubles as a measurement basis (columns = measured
 * vectors). */
typedef struct visq_unitary visq_unitary;

VISQ_API const char *visq_status_name(visq_status status);

/* Message for the most recent failure on the calling thread. */
VISQ_API const char *visq_last_error(void);

/* ------------------------------------------------------------------ */
/* States                                                              */

/* Builtin grammar: "bell:0..3", "werner:p", "cc-uniform:dA,dB",
 * "random:dA,dB[,rank=r][,seed=s]", "random-pure:dA,dB[,seed=s]",
 * "schmidt:l1,l2,...". Anything else is treated as a state-file path. */
VISQ_API visq_status visq_state_parse_spec(const char *spec, visq_state **out);

/* State files: {"kind":"density"|"pure","dims":[dA,dB],"re":...,"im":...},
 * validated on load. */
VISQ_API visq_status visq_state_load(const char *path, visq_state **out);
VISQ_API visq_status visq_state_save(const visq_state *state,
                                     const char *path);

/* Serializes the state; writes at most `cap` bytes including the NUL
 * terminator and stores the required size in *needed. Returns
 * VISQ_ERR_BUFFER_TOO_SMALL (with *needed set) when cap is insufficient. */
VISQ_API visq_status visq_state_to_json(const visq_state *state, char *buf,
                                        size_t cap, size_t *needed);

/* Density matrix from row-major d x d real/imaginary parts; validated. */
VISQ_API visq_status visq_state_from_dense(int dim_a, int dim_b,
                                           const double *re, const double *im,
                                           visq_state **out);

VISQ_API void visq_state_free(visq_state *state);

VISQ_API visq_status visq_state_dims(const visq_state *state, int *dim_a,
                                     int *dim_b);
VISQ_API int visq_state_is_pure(const visq_state *state);

/* Row-major d x d density matrix into caller buffers of d*d doubles each. */
VISQ_API visq_status visq_state_get_matrix(const visq_state *state, double *re,
                                           double *im);

VISQ_API visq_status visq_state_purity(const visq_state *state, double *out);

/* Reduced state of the kept subsystem (0 = A, 1 = B), as a (d, 1) or (1, d)
 * bipartite state. */
VISQ_API visq_status visq_state_reduce(const visq_state *state, int keep_a,
                                       visq_state **out);

/* Validates a state file without constructing a state. Writes a JSON report
 * {"valid":...,"violations":[{"invariant":...,"magnitude":...},...]} and
 * stores 1/0 in *valid. IO and parse failures are still errors. */
VISQ_API visq_status visq_validate_file(const char *path, char *report,
                                        size_t cap, size_t *needed,
                                        int *valid);

/* ------------------------------------------------------------------ */
/* Unitaries and bases                                                 */

/* Grammar: "identity:d", "haar:d[,seed=s][,index=i]", else a basis-file
 * path ({"kind":"basis","dim":d,"re":[[...]],"im":[[...]]}). */
VISQ_API visq_status visq_unitary_parse_spec(const char *spec,
                                             visq_unitary **out);
VISQ_API visq_status visq_unitary_load(const char *path, visq_unitary **out);
VISQ_API visq_status visq_unitary_identity(int dim, visq_unitary **out);

/* Haar-distributed draw, deterministic in (seed, index). */
VISQ_API visq_status visq_unitary_haar(int dim, uint64_t seed, uint64_t index,
                                       visq_unitary **out);

/* Unitary from row-major d x d real/imaginary parts; unitarity checked. */
VISQ_API visq_status visq_unitary_from_dense(int dim, const double *re,
                                             const double *im,
                                             visq_unitary **out);

VISQ_API visq_status visq_unitary_get_matrix(const visq_unitary *u, double *re,
                                             double *im);
VISQ_API int visq_unitary_dim(const visq_unitary *u);
VISQ_API void visq_unitary_free(visq_unitary *u);

/* ------------------------------------------------------------------ */
/* Channels                                                            */
/* A NULL basis means the computational basis of the matching subsystem. */

VISQ_API visq_status visq_dephase(const visq_state *state,
                                  const visq_unitary *basis_a,
                                  const visq_unitary *basis_b,
                                  visq_state **out);
VISQ_API visq_status visq_dephase_one_sided(const visq_state *state,
                                            const visq_unitary *basis_a,
                                            visq_state **out);
VISQ_API visq_status visq_noisy_measure(const visq_state *state,
                                        double epsilon,
                                        const visq_unitary *basis_a,
                                        const visq_unitary *basis_b,
                                        visq_state **out);

/* ------------------------------------------------------------------ */
/* Measures                                                            */

VISQ_API visq_status visq_visibility(const visq_state *state,
                                     const visq_unitary *u, double *out);
VISQ_API visq_status visq_visibility_squared(const visq_state *state,
                                             const visq_unitary *u,
                                             double *out);

/* Arg Tr(rho U); VISQ_ERR_UNDEFINED_PHASE when the visibility is < 1e-9. */
VISQ_API visq_status visq_relative_phase(const visq_state *state,
                                         const visq_unitary *u, double *out);

VISQ_API visq_status visq_q(const visq_state *state,
                            const visq_unitary *basis_a,
                            const visq_unitary *basis_b, double *out);
VISQ_API visq_status visq_q_noisy(const visq_state *state, double epsilon,
                                  const visq_unitary *basis_a,
                                  const visq_unitary *basis_b, double *out);
VISQ_API visq_status visq_q_one_sided(const visq_state *state,
                                      const visq_unitary *basis_a,
                                      double *out);

/* Schmidt coefficients (nonincreasing probabilities) of a pure state into a
 * caller buffer; *count receives min(d_A, d_B). The state must be pure. */
VISQ_API visq_status visq_schmidt(const visq_state *state, double *coeffs,
                                  size_t cap, size_t *count);

VISQ_API visq_status visq_linear_entanglement(const visq_state *state,
                                              double *out);
VISQ_API visq_status visq_concurrence(const visq_state *state, double *out);

/* Closed-form upper bound 1 - Tr(rho_A^2) on the linear entanglement of
 * formation. */
VISQ_API visq_status visq_ef_bound(const visq_state *state, double *out);

typedef struct visq_complementarity {
  double ef_bound;      /* 1 - Tr(rho_A^2) */
  double q_one_sided;   /* one-sided measurement disturbance */
  double purity_b;      /* Tr(rho_B^2) */
  double lhs_q_squared; /* ef_bound + Q^2/d_B + purity_b/(d_A d_B) */
  double lhs_q_linear;  /* ef_bound + Q/d_B + purity_b/(d_A d_B) */
  double slack;         /* 1 - lhs_q_squared */
} visq_complementarity;

VISQ_API visq_status visq_complementarity_report(const visq_state *state,
                                                 const visq_unitary *basis_a,
                                                 visq_complementarity *out);

/* Tr(rho_AB^2)/Tr(rho_A^2); *within is 1 iff it lies in [1/d_B, d_B]. */
VISQ_API visq_status visq_purity_ratio(const visq_state *state, double *ratio,
                                       int *within);

/* ------------------------------------------------------------------ */
/* Monte Carlo estimators                                              */

typedef struct visq_estimate {
  double mean;
  double std_error; /* sample standard deviation / sqrt(n) */
  uint64_t n_samples;
  uint64_t seed;
  int has_exact;
  double exact_value;
} visq_estimate;

typedef struct visq_check {
  visq_estimate estimate;
  double predicted;
  double sigma_distance; /* |mean - predicted| / std_error */
  int pass;
} visq_check;

/* Caps the sampling worker count (0 = hardware default). Estimates are
 * bit-identical for every setting. */
VISQ_API void visq_set_max_threads(int n);

/* Mean of |Tr(rho U)|^2 over n Haar draws; exact value Tr(rho^2)/d. */
VISQ_API visq_status visq_avg_sq_visibility(const visq_state *state,
                                            uint64_t n, uint64_t seed,
                                            visq_estimate *out);

/* Local-unitary variant over independent U(d_A) x U(d_B) draws. */
VISQ_API visq_status visq_avg_sq_visibility_local(const visq_state *state,
                                                  uint64_t n, uint64_t seed,
                                                  visq_estimate *out);

/* Haar average of the squared-visibility drop under full measurement,
 * against the predicted Q^2/(d_A d_B). paired=1 evaluates both terms at the
 * same draw (variance reduction); paired=0 uses independent draws. */
VISQ_API visq_status visq_theorem1(const visq_state *state,
                                   const visq_unitary *basis_a,
                                   const visq_unitary *basis_b, uint64_t n,
                                   uint64_t seed, int paired, double sigma,
                                   visq_check *out);

/* Same under the noisy measurement; predicted eps(2-eps) Q^2/(d_A d_B). */
VISQ_API visq_status visq_noisy_theorem(const visq_state *state,
                                        double epsilon,
                                        const visq_unitary *basis_a,
                                        const visq_unitary *basis_b,
                                        uint64_t n, uint64_t seed, int paired,
                                        double sigma, visq_check *out);

/* E and C of a pure state estimated from the average local visibility. */
VISQ_API visq_status visq_entanglement_from_visibility(
    const visq_state *state, uint64_t n, uint64_t seed, double sigma,
    visq_check *linear_entropy, visq_check *concurrence);

typedef struct visq_ef_report {
  double bound;        /* 1 - Tr(rho_A^2) */
  double best_average; /* tightest decomposition average found */
  double worst_average;
  uint64_t n_decompositions;
  int all_within_bound; /* every average <= bound + 1e-10 */
} visq_ef_report;

/* Sweeps random ensemble-equivalent decompositions against the bound. */
VISQ_API visq_status visq_verify_ef_bound(const visq_state *state,
                                          uint64_t n_decomps, uint64_t seed,
                                          visq_ef_report *out);

typedef struct visq_swap_report {
  double hs_deviation; /* || mean(U (x) U^dag) - F/d ||_HS */
  double trace_mf;     /* Tr(M_hat F), exactly d in expectation */
  uint64_t n_samples;
  uint64_t seed;
} visq_swap_report;

VISQ_API visq_status visq_verify_swap_moment(int dim, uint64_t n,
                                             uint64_t seed,
                                             visq_swap_report *out);

/* |mean of U_00| over n draws. rephased=1 uses the canonical sampler;
 * rephased=0 uses the raw QR factor, whose bias this exposes. */
VISQ_API visq_status visq_haar_phase_bias(int dim, uint64_t n, uint64_t seed,
                                          int rephased, double *mean_abs);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VISQ_H */
