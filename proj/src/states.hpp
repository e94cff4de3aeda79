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

#ifndef VISQ_STATES_HPP
#define VISQ_STATES_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "linalg.hpp"

namespace visq {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit-norm state vector on H_A (x) H_B. Amplitude ordering is row-major:
/// amplitudes[i * d_B + j] multiplies |i>_A |j>_B.
class PureState {
 public:
  /// Throws ValidationError unless the Euclidean norm is 1 within `tol`.
  static PureState normalized(Dims dims, Vector amplitudes, double tol = 1e-10);
  static PureState trusted(Dims dims, Vector amplitudes);

  Dims dims() const { return dims_; }
  const Vector& amplitudes() const { return amps_; }

  /// |psi><psi| as a density matrix.
  DensityMatrix projector() const;
  BipartiteState to_bipartite() const;

 private:
  PureState(Dims dims, Vector amps) : dims_(dims), amps_(std::move(amps)) {}

  Dims dims_;
  Vector amps_;
};

/// Convex mixture {p_j, |Psi_j>} of pure states with identical dims.
struct PureDecomposition {
  std::vector<double> weights;
  std::vector<PureState> members;

  /// Throws ValidationError on negative/unnormalized weights or mixed dims.
  void check(double tol = 1e-10) const;

  /// Sum_j p_j |Psi_j><Psi_j|.
  BipartiteState reconstruct() const;
};

/// Bell states on (2, 2). Index convention:
/// 0 -> (|00>+|11>)/sqrt2, 1 -> (|00>-|11>)/sqrt2,
/// 2 -> (|01>+|10>)/sqrt2, 3 -> (|01>-|10>)/sqrt2.
PureState bell_state(int index);

/// p |Phi+><Phi+| + (1-p) I/4 on (2, 2).
BipartiteState werner(double p);

/// Tensor product of two normalized local vectors.
PureState product_state(const Vector& psi_a, const Vector& psi_b);

/// Sum_ij p_ij |ij><ij| from a d_A x d_B probability grid (diagonal in the
/// computational product basis; a fixed point of full dephasing).
BipartiteState classical_classical(const Eigen::MatrixXd& probabilities);

/// sum_i sqrt(lambda_i) |ii> on (k, k), k = lambdas.size(). The lambdas must
/// be a probability vector.
PureState schmidt_state(const std::vector<double>& lambdas);

/// Pure state from the unitarily invariant measure; deterministic per seed.
PureState random_pure(Dims dims, std::uint64_t seed);

/// Induced-measure density matrix of the requested rank: partial trace of a
/// random pure state on a dims.total() x rank ancilla space.
BipartiteState random_density(Dims dims, int rank, std::uint64_t seed);

using AnyState = std::variant<BipartiteState, PureState>;

/// The density-matrix view of either alternative.
BipartiteState to_bipartite(const AnyState& state);
Dims dims_of(const AnyState& state);

// On-disk format, shared with the CLI:
//   {"kind":"density"|"pure","dims":[dA,dB],"re":...,"im":...}
// where re/im are row-major nested arrays for density matrices and flat
// single rows for pure states. Numbers carry 17 significant digits so that
// load(save(s)) round-trips bit-for-bit.
std::string state_to_json(const AnyState& state);
AnyState state_from_json(const std::string& text);
AnyState load_state(const std::string& path);
void save_state(const AnyState& state, const std::string& path);

/// Parses a state file and reports invariant violations instead of throwing
/// on them. IO, JSON and dimension problems still throw; an empty result
/// means the file holds a valid state.
std::vector<ValidationIssue> validate_state_file(const std::string& path);

// Basis/unitary files: {"kind":"basis","dim":d,"re":[[...]],"im":[[...]]}
// with the measured orthonormal vectors as columns.
std::string unitary_to_json(const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const std::string& text);
UnitaryMatrix load_unitary(const std::string& path);

/// Builtin state grammar used by the CLI: "bell:0", "werner:0.5",
/// "cc-uniform:2,2", "random:2,3,rank=2,seed=11", "random-pure:2,3,seed=7",
/// "schmidt:0.8,0.2". Anything else is treated as a state-file path.
AnyState parse_state_spec(const std::string& spec);

/// Unitary grammar: "identity:d", "haar:d,seed=s[,index=i]", or a file path.
UnitaryMatrix parse_unitary_spec(const std::string& spec);

/// 17-significant-digit decimal form; the one formatter used for every
/// serialized number so JSON and CSV outputs agree digit-for-digit.
std::string format_double(double v);

}  // namespace visq

#endif  // VISQ_STATES_HPP
