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

#include "visq.h"

#include <cstring>
#include <string>

#include "estimators.hpp"

struct visq_state {
  visq::AnyState any;
  visq::BipartiteState rho;

  explicit visq_state(visq::AnyState s)
      : any(std::move(s)), rho(visq::to_bipartite(any)) {}
};

struct visq_unitary {
  visq::UnitaryMatrix u;
};

namespace {

thread_local std::string g_last_error;

visq_status fail(visq_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body` and maps the library's exception taxonomy onto status codes.
template <typename F>
visq_status guarded(F&& body) {
  try {
    return body();
  } catch (const visq::ValidationError& e) {
    return fail(VISQ_ERR_VALIDATION, e.what());
  } catch (const visq::DimensionError& e) {
    return fail(VISQ_ERR_DIMENSION_MISMATCH, e.what());
  } catch (const visq::UndefinedPhaseError& e) {
    return fail(VISQ_ERR_UNDEFINED_PHASE, e.what());
  } catch (const visq::ParseError& e) {
    return fail(VISQ_ERR_PARSE, e.what());
  } catch (const visq::IoError& e) {
    return fail(VISQ_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(VISQ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(VISQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VISQ_ERR_INTERNAL, "unknown error");
  }
}

visq_status require(bool ok, const char* message) {
  return ok ? VISQ_OK : fail(VISQ_ERR_INVALID_ARGUMENT, message);
}

visq_status write_text(const std::string& text, char* buf, size_t cap,
                       size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || cap < text.size() + 1)
    return fail(VISQ_ERR_BUFFER_TOO_SMALL,
                "buffer of " + std::to_string(cap) + " bytes is too small (" +
                    std::to_string(text.size() + 1) + " needed)");
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  return VISQ_OK;
}

visq::MeasurementBasis basis_or_computational(const visq_unitary* u,
                                              int dim) {
  if (!u) return visq::MeasurementBasis::computational(dim);
  return visq::MeasurementBasis::from_unitary(u->u);
}

void to_c(const visq::EstimateResult& in, visq_estimate* out) {
  out->mean = in.mean;
  out->std_error = in.std_error;
  out->n_samples = in.n_samples;
  out->seed = in.seed;
  out->has_exact = in.exact_value.has_value() ? 1 : 0;
  out->exact_value = in.exact_value.value_or(0.0);
}

void to_c(const visq::TheoremCheck& in, visq_check* out) {
  to_c(in.estimate, &out->estimate);
  out->predicted = in.predicted;
  out->sigma_distance = in.sigma_distance;
  out->pass = in.pass ? 1 : 0;
}

const visq::PureState& require_pure(const visq_state* state) {
  const auto* pure = std::get_if<visq::PureState>(&state->any);
  if (!pure)
    throw std::invalid_argument(
        "operation requires a pure state (amplitude vector)");
  return *pure;
}

std::string issues_report(const std::vector<visq::ValidationIssue>& issues) {
  std::string out = "{\n  \"valid\": ";
  out += issues.empty() ? "true" : "false";
  out += ",\n  \"violations\": [";
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) out += ",";
    out += "\n    {\"invariant\": \"" + issues[i].invariant +
           "\", \"magnitude\": " + visq::format_double(issues[i].magnitude) +
           "}";
  }
  out += issues.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace

extern "C" {

const char* visq_status_name(visq_status status) {
  switch (status) {
    case VISQ_OK:
      return "ok";
    case VISQ_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case VISQ_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case VISQ_ERR_VALIDATION:
      return "validation failed";
    case VISQ_ERR_IO:
      return "io error";
    case VISQ_ERR_PARSE:
      return "parse error";
    case VISQ_ERR_UNDEFINED_PHASE:
      return "undefined phase";
    case VISQ_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case VISQ_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* visq_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ */

visq_status visq_state_parse_spec(const char* spec, visq_state** out) {
  if (auto s = require(spec && out, "spec and out must be non-NULL")) return s;
  return guarded([&] {
    *out = new visq_state(visq::parse_state_spec(spec));
    return VISQ_OK;
  });
}

visq_status visq_state_load(const char* path, visq_state** out) {
  if (auto s = require(path && out, "path and out must be non-NULL")) return s;
  return guarded([&] {
    *out = new visq_state(visq::load_state(path));
    return VISQ_OK;
  });
}

visq_status visq_state_save(const visq_state* state, const char* path) {
  if (auto s = require(state && path, "state and path must be non-NULL"))
    return s;
  return guarded([&] {
    visq::save_state(state->any, path);
    return VISQ_OK;
  });
}

visq_status visq_state_to_json(const visq_state* state, char* buf, size_t cap,
                               size_t* needed) {
  if (auto s = require(state != nullptr, "state must be non-NULL")) return s;
  return guarded(
      [&] { return write_text(visq::state_to_json(state->any), buf, cap,
                              needed); });
}

visq_status visq_state_from_dense(int dim_a, int dim_b, const double* re,
                                  const double* im, visq_state** out) {
  if (auto s = require(re && im && out, "re, im and out must be non-NULL"))
    return s;
  return guarded([&] {
    if (dim_a < 1 || dim_b < 1)
      throw visq::DimensionError("dims must be positive");
    const int d = dim_a * dim_b;
    visq::Matrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m(r, c) = visq::cxd(re[r * d + c], im[r * d + c]);
    *out = new visq_state(visq::BipartiteState(
        visq::Dims{dim_a, dim_b}, visq::DensityMatrix::validated(m)));
    return VISQ_OK;
  });
}

void visq_state_free(visq_state* state) { delete state; }

visq_status visq_state_dims(const visq_state* state, int* dim_a, int* dim_b) {
  if (auto s = require(state && dim_a && dim_b, "arguments must be non-NULL"))
    return s;
  *dim_a = state->rho.dims().a;
  *dim_b = state->rho.dims().b;
  return VISQ_OK;
}

int visq_state_is_pure(const visq_state* state) {
  return state && std::holds_alternative<visq::PureState>(state->any) ? 1 : 0;
}

visq_status visq_state_get_matrix(const visq_state* state, double* re,
                                  double* im) {
  if (auto s = require(state && re && im, "arguments must be non-NULL"))
    return s;
  const visq::Matrix& m = state->rho.matrix();
  const int d = static_cast<int>(m.rows());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      re[r * d + c] = m(r, c).real();
      im[r * d + c] = m(r, c).imag();
    }
  return VISQ_OK;
}

visq_status visq_state_purity(const visq_state* state, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::purity(state->rho.rho());
    return VISQ_OK;
  });
}

visq_status visq_state_reduce(const visq_state* state, int keep_a,
                              visq_state** out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto keep = keep_a ? visq::Subsystem::A : visq::Subsystem::B;
    visq::DensityMatrix reduced = visq::partial_trace(state->rho, keep);
    const int d = reduced.dim();
    const visq::Dims dims = keep_a ? visq::Dims{d, 1} : visq::Dims{1, d};
    *out = new visq_state(visq::BipartiteState(dims, std::move(reduced)));
    return VISQ_OK;
  });
}

visq_status visq_validate_file(const char* path, char* report, size_t cap,
                               size_t* needed, int* valid) {
  if (auto s = require(path != nullptr, "path must be non-NULL")) return s;
  return guarded([&] {
    const auto issues = visq::validate_state_file(path);
    if (valid) *valid = issues.empty() ? 1 : 0;
    return write_text(issues_report(issues), report, cap, needed);
  });
}

/* ------------------------------------------------------------------ */

visq_status visq_unitary_parse_spec(const char* spec, visq_unitary** out) {
  if (auto s = require(spec && out, "spec and out must be non-NULL")) return s;
  return guarded([&] {
    *out = new visq_unitary{visq::parse_unitary_spec(spec)};
    return VISQ_OK;
  });
}

visq_status visq_unitary_load(const char* path, visq_unitary** out) {
  if (auto s = require(path && out, "path and out must be non-NULL")) return s;
  return guarded([&] {
    *out = new visq_unitary{visq::load_unitary(path)};
    return VISQ_OK;
  });
}

visq_status visq_unitary_identity(int dim, visq_unitary** out) {
  if (auto s = require(out != nullptr, "out must be non-NULL")) return s;
  return guarded([&] {
    if (dim < 1) throw visq::DimensionError("dimension must be positive");
    *out = new visq_unitary{
        visq::UnitaryMatrix::trusted(visq::Matrix::Identity(dim, dim))};
    return VISQ_OK;
  });
}

visq_status visq_unitary_haar(int dim, uint64_t seed, uint64_t index,
                              visq_unitary** out) {
  if (auto s = require(out != nullptr, "out must be non-NULL")) return s;
  return guarded([&] {
    *out = new visq_unitary{visq::HaarSampler(dim, seed).sample(index)};
    return VISQ_OK;
  });
}

visq_status visq_unitary_from_dense(int dim, const double* re,
                                    const double* im, visq_unitary** out) {
  if (auto s = require(re && im && out, "re, im and out must be non-NULL"))
    return s;
  return guarded([&] {
    if (dim < 1) throw visq::DimensionError("dimension must be positive");
    visq::Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        m(r, c) = visq::cxd(re[r * dim + c], im[r * dim + c]);
    *out = new visq_unitary{visq::UnitaryMatrix::checked(std::move(m))};
    return VISQ_OK;
  });
}

visq_status visq_unitary_get_matrix(const visq_unitary* u, double* re,
                                    double* im) {
  if (auto s = require(u && re && im, "arguments must be non-NULL")) return s;
  const visq::Matrix& m = u->u.matrix();
  const int d = static_cast<int>(m.rows());
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      re[r * d + c] = m(r, c).real();
      im[r * d + c] = m(r, c).imag();
    }
  return VISQ_OK;
}

int visq_unitary_dim(const visq_unitary* u) { return u ? u->u.dim() : 0; }

void visq_unitary_free(visq_unitary* u) { delete u; }

/* ------------------------------------------------------------------ */

visq_status visq_dephase(const visq_state* state, const visq_unitary* basis_a,
                         const visq_unitary* basis_b, visq_state** out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    *out = new visq_state(visq::dephase_full(
        state->rho, basis_or_computational(basis_a, dims.a),
        basis_or_computational(basis_b, dims.b)));
    return VISQ_OK;
  });
}

visq_status visq_dephase_one_sided(const visq_state* state,
                                   const visq_unitary* basis_a,
                                   visq_state** out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = new visq_state(visq::dephase_one_sided(
        state->rho, basis_or_computational(basis_a, state->rho.dims().a)));
    return VISQ_OK;
  });
}

visq_status visq_noisy_measure(const visq_state* state, double epsilon,
                               const visq_unitary* basis_a,
                               const visq_unitary* basis_b, visq_state** out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    *out = new visq_state(visq::noisy_measure(
        state->rho, epsilon, basis_or_computational(basis_a, dims.a),
        basis_or_computational(basis_b, dims.b)));
    return VISQ_OK;
  });
}

/* ------------------------------------------------------------------ */

visq_status visq_visibility(const visq_state* state, const visq_unitary* u,
                            double* out) {
  if (auto s = require(state && u && out, "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::visibility(state->rho.rho(), u->u);
    return VISQ_OK;
  });
}

visq_status visq_visibility_squared(const visq_state* state,
                                    const visq_unitary* u, double* out) {
  if (auto s = require(state && u && out, "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::visibility_squared(state->rho.rho(), u->u);
    return VISQ_OK;
  });
}

visq_status visq_relative_phase(const visq_state* state, const visq_unitary* u,
                                double* out) {
  if (auto s = require(state && u && out, "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::relative_phase(state->rho.rho(), u->u);
    return VISQ_OK;
  });
}

visq_status visq_q(const visq_state* state, const visq_unitary* basis_a,
                   const visq_unitary* basis_b, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    *out = visq::q_disturbance(state->rho,
                               basis_or_computational(basis_a, dims.a),
                               basis_or_computational(basis_b, dims.b));
    return VISQ_OK;
  });
}

visq_status visq_q_noisy(const visq_state* state, double epsilon,
                         const visq_unitary* basis_a,
                         const visq_unitary* basis_b, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    *out = visq::q_disturbance_noisy(state->rho, epsilon,
                                     basis_or_computational(basis_a, dims.a),
                                     basis_or_computational(basis_b, dims.b));
    return VISQ_OK;
  });
}

visq_status visq_q_one_sided(const visq_state* state,
                             const visq_unitary* basis_a, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::q_disturbance_one_sided(
        state->rho, basis_or_computational(basis_a, state->rho.dims().a));
    return VISQ_OK;
  });
}

visq_status visq_schmidt(const visq_state* state, double* coeffs, size_t cap,
                         size_t* count) {
  if (auto s = require(state && coeffs && count, "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    const auto spectrum = visq::schmidt(require_pure(state));
    *count = spectrum.coefficients.size();
    if (cap < spectrum.coefficients.size())
      return fail(VISQ_ERR_BUFFER_TOO_SMALL,
                  "coefficient buffer holds " + std::to_string(cap) +
                      ", need " + std::to_string(spectrum.coefficients.size()));
    for (std::size_t i = 0; i < spectrum.coefficients.size(); ++i)
      coeffs[i] = spectrum.coefficients[i];
    return VISQ_OK;
  });
}

visq_status visq_linear_entanglement(const visq_state* state, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::linear_entanglement(require_pure(state));
    return VISQ_OK;
  });
}

visq_status visq_concurrence(const visq_state* state, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::concurrence(require_pure(state));
    return VISQ_OK;
  });
}

visq_status visq_ef_bound(const visq_state* state, double* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    *out = visq::ef_visibility_bound(state->rho);
    return VISQ_OK;
  });
}

visq_status visq_complementarity_report(const visq_state* state,
                                        const visq_unitary* basis_a,
                                        visq_complementarity* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto report = visq::complementarity_report(
        state->rho, basis_or_computational(basis_a, state->rho.dims().a));
    out->ef_bound = report.ef_bound;
    out->q_one_sided = report.q_one_sided;
    out->purity_b = report.purity_b;
    out->lhs_q_squared = report.lhs_q_squared;
    out->lhs_q_linear = report.lhs_q_linear;
    out->slack = report.slack;
    return VISQ_OK;
  });
}

visq_status visq_purity_ratio(const visq_state* state, double* ratio,
                              int* within) {
  if (auto s = require(state && ratio && within, "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    const auto result = visq::purity_ratio_check(state->rho);
    *ratio = result.ratio;
    *within = result.within_bounds ? 1 : 0;
    return VISQ_OK;
  });
}

/* ------------------------------------------------------------------ */

void visq_set_max_threads(int n) { visq::set_max_threads(n); }

visq_status visq_avg_sq_visibility(const visq_state* state, uint64_t n,
                                   uint64_t seed, visq_estimate* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    to_c(visq::mc_avg_sq_visibility(state->rho.rho(), n, seed), out);
    return VISQ_OK;
  });
}

visq_status visq_avg_sq_visibility_local(const visq_state* state, uint64_t n,
                                         uint64_t seed, visq_estimate* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    to_c(visq::mc_avg_sq_visibility_local(state->rho, n, seed), out);
    return VISQ_OK;
  });
}

visq_status visq_theorem1(const visq_state* state, const visq_unitary* basis_a,
                          const visq_unitary* basis_b, uint64_t n,
                          uint64_t seed, int paired, double sigma,
                          visq_check* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    visq::TheoremOptions options{n, seed, sigma, paired != 0};
    to_c(visq::verify_theorem1(state->rho,
                               basis_or_computational(basis_a, dims.a),
                               basis_or_computational(basis_b, dims.b),
                               options),
         out);
    return VISQ_OK;
  });
}

visq_status visq_noisy_theorem(const visq_state* state, double epsilon,
                               const visq_unitary* basis_a,
                               const visq_unitary* basis_b, uint64_t n,
                               uint64_t seed, int paired, double sigma,
                               visq_check* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto dims = state->rho.dims();
    visq::TheoremOptions options{n, seed, sigma, paired != 0};
    to_c(visq::verify_noisy_theorem(state->rho, epsilon,
                                    basis_or_computational(basis_a, dims.a),
                                    basis_or_computational(basis_b, dims.b),
                                    options),
         out);
    return VISQ_OK;
  });
}

visq_status visq_entanglement_from_visibility(const visq_state* state,
                                              uint64_t n, uint64_t seed,
                                              double sigma,
                                              visq_check* linear_entropy,
                                              visq_check* concurrence) {
  if (auto s = require(state && linear_entropy && concurrence,
                       "arguments must be non-NULL"))
    return s;
  return guarded([&] {
    const auto result =
        visq::entanglement_from_visibility(require_pure(state), n, seed, sigma);
    to_c(result.linear_entropy, linear_entropy);
    to_c(result.concurrence, concurrence);
    return VISQ_OK;
  });
}

visq_status visq_verify_ef_bound(const visq_state* state, uint64_t n_decomps,
                                 uint64_t seed, visq_ef_report* out) {
  if (auto s = require(state && out, "state and out must be non-NULL"))
    return s;
  return guarded([&] {
    const auto report = visq::verify_ef_bound(state->rho, n_decomps, seed);
    out->bound = report.bound;
    out->best_average = report.best_average;
    out->worst_average = report.worst_average;
    out->n_decompositions = report.n_decompositions;
    out->all_within_bound = report.all_within_bound ? 1 : 0;
    return VISQ_OK;
  });
}

visq_status visq_verify_swap_moment(int dim, uint64_t n, uint64_t seed,
                                    visq_swap_report* out) {
  if (auto s = require(out != nullptr, "out must be non-NULL")) return s;
  return guarded([&] {
    const auto report = visq::verify_swap_moment(dim, n, seed);
    out->hs_deviation = report.hs_deviation;
    out->trace_mf = report.trace_mf;
    out->n_samples = report.n_samples;
    out->seed = report.seed;
    return VISQ_OK;
  });
}

visq_status visq_haar_phase_bias(int dim, uint64_t n, uint64_t seed,
                                 int rephased, double* mean_abs) {
  if (auto s = require(mean_abs != nullptr, "mean_abs must be non-NULL"))
    return s;
  return guarded([&] {
    if (dim < 1) throw visq::DimensionError("dimension must be positive");
    if (n < 1) throw std::invalid_argument("need at least one sample");
    visq::cxd acc = 0.0;
    for (uint64_t i = 0; i < n; ++i) {
      auto rng = visq::substream_rng(seed, visq::RngStream::kHaarSample, i);
      const visq::Matrix u = rephased ? visq::haar_unitary(dim, rng)
                                      : visq::qr_orthonormal_unphased(dim, rng);
      acc += u(0, 0);
    }
    *mean_abs = std::abs(acc / static_cast<double>(n));
    return VISQ_OK;
  });
}

} /* extern "C" */
