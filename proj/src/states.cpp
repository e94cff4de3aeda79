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

#include "states.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "haar.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace visq {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError("trailing junk in number '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'");
  }
  if (used != s.size())
    throw ParseError("trailing junk in integer '" + s + "'");
  return v;
}

// "key=value" tail arguments of a builtin spec.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;

  bool take(const std::string& key, std::string* out) {
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      if (it->first == key) {
        *out = it->second;
        entries.erase(it);
        return true;
      }
    }
    return false;
  }
};

KeyValues parse_key_values(const std::vector<std::string>& parts,
                           std::size_t from) {
  KeyValues kv;
  for (std::size_t i = from; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value, got '" + parts[i] + "'");
    kv.entries.emplace_back(parts[i].substr(0, eq), parts[i].substr(eq + 1));
  }
  return kv;
}

void expect_consumed(const KeyValues& kv, const std::string& spec) {
  if (!kv.entries.empty())
    throw ParseError("unknown option '" + kv.entries.front().first +
                     "' in spec '" + spec + "'");
}

void append_number(std::string& out, double v) { out += format_double(v); }

void append_flat(std::string& out, const Vector& v, bool imag) {
  out += "[";
  for (long i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    append_number(out, imag ? v(i).imag() : v(i).real());
  }
  out += "]";
}

void append_rows(std::string& out, const Matrix& m, bool imag) {
  out += "[\n";
  for (long r = 0; r < m.rows(); ++r) {
    out += "    [";
    for (long c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ", ";
      append_number(out, imag ? m(r, c).imag() : m(r, c).real());
    }
    out += r + 1 < m.rows() ? "],\n" : "]\n";
  }
  out += "  ]";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Dims dims_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw ParseError("'dims' must be a [dA, dB] pair of integers");
  Dims dims{j[0].get<int>(), j[1].get<int>()};
  if (dims.a < 1 || dims.b < 1)
    throw ParseError("'dims' entries must be positive");
  return dims;
}

Matrix matrix_from_json(const json& jre, const json& jim, int dim) {
  if (!jre.is_array() || !jim.is_array() ||
      static_cast<int>(jre.size()) != dim ||
      static_cast<int>(jim.size()) != dim)
    throw DimensionError("re/im must hold " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& re_row = jre[r];
    const auto& im_row = jim[r];
    if (!re_row.is_array() || !im_row.is_array() ||
        static_cast<int>(re_row.size()) != dim ||
        static_cast<int>(im_row.size()) != dim)
      throw DimensionError("re/im rows must hold " + std::to_string(dim) +
                           " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = cxd(re_row[c].get<double>(), im_row[c].get<double>());
  }
  return m;
}

Vector vector_from_json(const json& jre, const json& jim, int dim) {
  if (!jre.is_array() || !jim.is_array() ||
      static_cast<int>(jre.size()) != dim ||
      static_cast<int>(jim.size()) != dim)
    throw DimensionError("re/im must hold " + std::to_string(dim) +
                         " amplitudes");
  Vector v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = cxd(jre[i].get<double>(), jim[i].get<double>());
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write failed on '" + path + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PureState PureState::normalized(Dims dims, Vector amplitudes, double tol) {
  if (dims.a < 1 || dims.b < 1)
    throw DimensionError("pure state dims must be positive");
  if (amplitudes.size() != dims.total())
    throw DimensionError("amplitude count " +
                         std::to_string(amplitudes.size()) +
                         " does not match dims");
  const double dev = std::abs(amplitudes.norm() - 1.0);
  if (dev > tol)
    throw ValidationError("pure state is not normalized: |norm - 1| = " +
                              std::to_string(dev),
                          {{"norm", dev}});
  return PureState(dims, std::move(amplitudes));
}

PureState PureState::trusted(Dims dims, Vector amplitudes) {
  return PureState(dims, std::move(amplitudes));
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::trusted(amps_ * amps_.adjoint());
}

BipartiteState PureState::to_bipartite() const {
  return BipartiteState(dims_, projector());
}

void PureDecomposition::check(double tol) const {
  if (weights.empty() || weights.size() != members.size())
    throw ValidationError("decomposition weights/members size mismatch",
                          {{"size", 0.0}});
  std::vector<ValidationIssue> issues;
  double sum = 0.0;
  double min_w = 0.0;
  for (double w : weights) {
    sum += w;
    min_w = std::min(min_w, w);
  }
  if (min_w < -tol) issues.push_back({"nonnegative", -min_w});
  if (std::abs(sum - 1.0) > tol) issues.push_back({"sum", std::abs(sum - 1.0)});
  if (!issues.empty())
    throw ValidationError("invalid decomposition weights", std::move(issues));
  const Dims dims = members.front().dims();
  for (const auto& psi : members)
    if (!(psi.dims() == dims))
      throw DimensionError("decomposition members have inconsistent dims");
}

BipartiteState PureDecomposition::reconstruct() const {
  check();
  const Dims dims = members.front().dims();
  Matrix acc = Matrix::Zero(dims.total(), dims.total());
  for (std::size_t j = 0; j < members.size(); ++j)
    acc += weights[j] * (members[j].amplitudes() *
                         members[j].amplitudes().adjoint());
  return BipartiteState(dims, DensityMatrix::trusted(std::move(acc)));
}

PureState bell_state(int index) {
  if (index < 0 || index > 3)
    throw std::invalid_argument("bell_state: index must be in 0..3");
  constexpr double kInvSqrt2 = 0.7071067811865475244;
  Vector amps = Vector::Zero(4);
  switch (index) {
    case 0:  // (|00> + |11>)/sqrt2
      amps(0) = kInvSqrt2;
      amps(3) = kInvSqrt2;
      break;
    case 1:  // (|00> - |11>)/sqrt2
      amps(0) = kInvSqrt2;
      amps(3) = -kInvSqrt2;
      break;
    case 2:  // (|01> + |10>)/sqrt2
      amps(1) = kInvSqrt2;
      amps(2) = kInvSqrt2;
      break;
    default:  // (|01> - |10>)/sqrt2
      amps(1) = kInvSqrt2;
      amps(2) = -kInvSqrt2;
      break;
  }
  return PureState::trusted(Dims{2, 2}, std::move(amps));
}

BipartiteState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("werner: p must be in [0, 1]");
  const Matrix bell = bell_state(0).projector().matrix();
  Matrix rho = p * bell + (1.0 - p) / 4.0 * Matrix::Identity(4, 4);
  return BipartiteState(Dims{2, 2}, DensityMatrix::trusted(std::move(rho)));
}

PureState product_state(const Vector& psi_a, const Vector& psi_b) {
  if (psi_a.size() < 1 || psi_b.size() < 1)
    throw DimensionError("product_state: empty factor");
  const double dev_a = std::abs(psi_a.norm() - 1.0);
  const double dev_b = std::abs(psi_b.norm() - 1.0);
  if (dev_a > 1e-10 || dev_b > 1e-10)
    throw ValidationError("product_state: factors must be normalized",
                          {{"norm", std::max(dev_a, dev_b)}});
  const int da = static_cast<int>(psi_a.size());
  const int db = static_cast<int>(psi_b.size());
  Vector amps(da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) amps(i * db + j) = psi_a(i) * psi_b(j);
  return PureState::trusted(Dims{da, db}, std::move(amps));
}

BipartiteState classical_classical(const Eigen::MatrixXd& probabilities) {
  const int da = static_cast<int>(probabilities.rows());
  const int db = static_cast<int>(probabilities.cols());
  if (da < 1 || db < 1)
    throw DimensionError("classical_classical: empty probability grid");
  const double min_p = probabilities.minCoeff();
  if (min_p < 0.0)
    throw ValidationError("classical_classical: negative probability",
                          {{"nonnegative", -min_p}});
  const double sum_dev = std::abs(probabilities.sum() - 1.0);
  if (sum_dev > 1e-10)
    throw ValidationError("classical_classical: probabilities must sum to 1",
                          {{"sum", sum_dev}});
  Matrix rho = Matrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      rho(i * db + j, i * db + j) = probabilities(i, j);
  return BipartiteState(Dims{da, db}, DensityMatrix::trusted(std::move(rho)));
}

PureState schmidt_state(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("schmidt_state: no weights");
  double sum = 0.0;
  for (double l : lambdas) {
    if (l < 0.0)
      throw ValidationError("schmidt_state: negative weight",
                            {{"nonnegative", -l}});
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("schmidt_state: weights must sum to 1",
                          {{"sum", std::abs(sum - 1.0)}});
  const int k = static_cast<int>(lambdas.size());
  Vector amps = Vector::Zero(k * k);
  for (int i = 0; i < k; ++i) amps(i * k + i) = std::sqrt(lambdas[i]);
  return PureState::trusted(Dims{k, k}, std::move(amps));
}

PureState random_pure(Dims dims, std::uint64_t seed) {
  auto rng = substream_rng(seed, RngStream::kStateConstruction, 0);
  Vector v = complex_gaussian(dims.total(), rng);
  v /= v.norm();
  return PureState::trusted(dims, std::move(v));
}

BipartiteState random_density(Dims dims, int rank, std::uint64_t seed) {
  if (rank < 1) throw std::invalid_argument("random_density: rank must be >= 1");
  auto rng = substream_rng(seed, RngStream::kStateConstruction, 1);
  Vector v = complex_gaussian(dims.total() * rank, rng);
  v /= v.norm();
  const PureState enlarged =
      PureState::trusted(Dims{dims.total(), rank}, std::move(v));
  DensityMatrix rho = partial_trace(enlarged.to_bipartite(), Subsystem::A);
  return BipartiteState(dims, std::move(rho));
}

BipartiteState to_bipartite(const AnyState& state) {
  if (const auto* pure = std::get_if<PureState>(&state))
    return pure->to_bipartite();
  return std::get<BipartiteState>(state);
}

Dims dims_of(const AnyState& state) {
  if (const auto* pure = std::get_if<PureState>(&state)) return pure->dims();
  return std::get<BipartiteState>(state).dims();
}

std::string state_to_json(const AnyState& state) {
  const Dims dims = dims_of(state);
  std::string out = "{\n  \"kind\": \"";
  out += std::holds_alternative<PureState>(state) ? "pure" : "density";
  out += "\",\n  \"dims\": [" + std::to_string(dims.a) + ", " +
         std::to_string(dims.b) + "],\n";
  if (const auto* pure = std::get_if<PureState>(&state)) {
    out += "  \"re\": ";
    append_flat(out, pure->amplitudes(), false);
    out += ",\n  \"im\": ";
    append_flat(out, pure->amplitudes(), true);
  } else {
    const Matrix& m = std::get<BipartiteState>(state).matrix();
    out += "  \"re\": ";
    append_rows(out, m, false);
    out += ",\n  \"im\": ";
    append_rows(out, m, true);
  }
  out += "\n}\n";
  return out;
}

AnyState state_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("state file must be an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (!j.contains("dims") || !j.contains("re") || !j.contains("im"))
    throw ParseError("state file requires 'dims', 're' and 'im' fields");
  const Dims dims = dims_from_json(j.at("dims"));
  try {
    if (kind == "pure") {
      Vector amps = vector_from_json(j.at("re"), j.at("im"), dims.total());
      return PureState::normalized(dims, std::move(amps));
    }
    if (kind == "density") {
      Matrix m = matrix_from_json(j.at("re"), j.at("im"), dims.total());
      return BipartiteState(dims, DensityMatrix::validated(std::move(m)));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state file: ") + e.what());
  }
  throw ParseError("unknown state kind '" + kind + "'");
}

AnyState load_state(const std::string& path) {
  return state_from_json(read_file(path));
}

std::vector<ValidationIssue> validate_state_file(const std::string& path) {
  const json j = parse_json(read_file(path));
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("state file must be an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (!j.contains("dims") || !j.contains("re") || !j.contains("im"))
    throw ParseError("state file requires 'dims', 're' and 'im' fields");
  const Dims dims = dims_from_json(j.at("dims"));
  try {
    if (kind == "pure") {
      const Vector amps =
          vector_from_json(j.at("re"), j.at("im"), dims.total());
      const double dev = std::abs(amps.norm() - 1.0);
      if (dev > 1e-10) return {{"norm", dev}};
      return {};
    }
    if (kind == "density") {
      const Matrix m = matrix_from_json(j.at("re"), j.at("im"), dims.total());
      return validate_density(m);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state file: ") + e.what());
  }
  throw ParseError("unknown state kind '" + kind + "'");
}

void save_state(const AnyState& state, const std::string& path) {
  write_file(path, state_to_json(state));
}

std::string unitary_to_json(const UnitaryMatrix& u) {
  std::string out = "{\n  \"kind\": \"basis\",\n  \"dim\": " +
                    std::to_string(u.dim()) + ",\n  \"re\": ";
  append_rows(out, u.matrix(), false);
  out += ",\n  \"im\": ";
  append_rows(out, u.matrix(), true);
  out += "\n}\n";
  return out;
}

UnitaryMatrix unitary_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("basis file must be an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "basis" && kind != "unitary")
    throw ParseError("expected kind 'basis', got '" + kind + "'");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    throw ParseError("basis file requires an integer 'dim' field");
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw ParseError("'dim' must be positive");
  try {
    Matrix m = matrix_from_json(j.at("re"), j.at("im"), dim);
    return UnitaryMatrix::checked(std::move(m));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed basis file: ") + e.what());
  }
}

UnitaryMatrix load_unitary(const std::string& path) {
  return unitary_from_json(read_file(path));
}

AnyState parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_params = colon != std::string::npos;
  const std::string params = has_params ? spec.substr(colon + 1) : "";

  if (head == "bell") {
    return bell_state(static_cast<int>(parse_long(params)));
  }
  if (head == "werner") {
    return werner(parse_double(params));
  }
  if (head == "cc-uniform") {
    const auto parts = split(params, ',');
    if (parts.size() != 2) throw ParseError("cc-uniform expects dA,dB");
    const int da = static_cast<int>(parse_long(parts[0]));
    const int db = static_cast<int>(parse_long(parts[1]));
    if (da < 1 || db < 1) throw ParseError("cc-uniform dims must be positive");
    Eigen::MatrixXd grid =
        Eigen::MatrixXd::Constant(da, db, 1.0 / (da * db));
    return classical_classical(grid);
  }
  if (head == "random" || head == "random-pure") {
    const auto parts = split(params, ',');
    if (parts.size() < 2)
      throw ParseError(head + " expects dA,dB[,key=value...]");
    const int da = static_cast<int>(parse_long(parts[0]));
    const int db = static_cast<int>(parse_long(parts[1]));
    if (da < 1 || db < 1) throw ParseError(head + " dims must be positive");
    auto kv = parse_key_values(parts, 2);
    std::string value;
    std::uint64_t seed = 0;
    if (kv.take("seed", &value))
      seed = static_cast<std::uint64_t>(parse_long(value));
    if (head == "random-pure") {
      expect_consumed(kv, spec);
      return random_pure(Dims{da, db}, seed);
    }
    int rank = da * db;
    if (kv.take("rank", &value)) rank = static_cast<int>(parse_long(value));
    expect_consumed(kv, spec);
    return random_density(Dims{da, db}, rank, seed);
  }
  if (head == "schmidt") {
    const auto parts = split(params, ',');
    std::vector<double> lambdas;
    lambdas.reserve(parts.size());
    for (const auto& p : parts) lambdas.push_back(parse_double(p));
    return schmidt_state(lambdas);
  }

  // Not a builtin: treat the whole spec as a state-file path.
  return load_state(spec);
}

UnitaryMatrix parse_unitary_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_params = colon != std::string::npos;
  const std::string params = has_params ? spec.substr(colon + 1) : "";

  if (head == "identity") {
    const int d = static_cast<int>(parse_long(params));
    if (d < 1) throw ParseError("identity dimension must be positive");
    return UnitaryMatrix::trusted(Matrix::Identity(d, d));
  }
  if (head == "haar") {
    const auto parts = split(params, ',');
    if (parts.empty()) throw ParseError("haar expects d[,seed=s][,index=i]");
    const int d = static_cast<int>(parse_long(parts[0]));
    if (d < 1) throw ParseError("haar dimension must be positive");
    auto kv = parse_key_values(parts, 1);
    std::string value;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    if (kv.take("seed", &value))
      seed = static_cast<std::uint64_t>(parse_long(value));
    if (kv.take("index", &value))
      index = static_cast<std::uint64_t>(parse_long(value));
    expect_consumed(kv, spec);
    return HaarSampler(d, seed).sample(index);
  }

  return load_unitary(spec);
}

}  // namespace visq
