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

// Command-line frontend for the visq shared library. Every command prints a
// report carrying the full input configuration (state spec, seed, sample
// count), so re-running the embedded spec reproduces the report
// byte-for-byte. Exit codes: 0 success, 1 a verification check failed,
// 2 input or validation error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "visq.h"

namespace {

struct CliError {
  std::string message;
  std::string status;
};

void check(visq_status status) {
  if (status != VISQ_OK)
    throw CliError{visq_last_error(), visq_status_name(status)};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

// Ordered key/value report. Numbers are serialized once (17 significant
// digits) so JSON and CSV renderings agree digit-for-digit.
class Report {
 public:
  void str(const std::string& key, const std::string& v) {
    fields_.push_back({key, "\"" + json_escape(v) + "\"", csv_escape(v)});
  }
  void num(const std::string& key, double v) {
    std::string t = fmt17(v);
    fields_.push_back({key, t, t});
  }
  void uinteger(const std::string& key, uint64_t v) {
    std::string t = std::to_string(v);
    fields_.push_back({key, t, t});
  }
  void boolean(const std::string& key, bool v) {
    std::string t = v ? "true" : "false";
    fields_.push_back({key, t, t});
  }

  std::string json(int indent = 0) const {
    const std::string pad(indent + 2, ' ');
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += pad + "\"" + fields_[i].key + "\": " + fields_[i].json;
      out += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
    return out;
  }

  std::string csv_header() const {
    std::string out;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i > 0) out += ",";
      out += csv_escape(fields_[i].key);
    }
    return out;
  }

  std::string csv_row() const {
    std::string out;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (i > 0) out += ",";
      out += fields_[i].csv;
    }
    return out;
  }

 private:
  struct Field {
    std::string key;
    std::string json;
    std::string csv;
  };
  std::vector<Field> fields_;
};

void print_report(const Report& report, const std::string& output) {
  if (output == "csv")
    std::cout << report.csv_header() << "\n" << report.csv_row() << "\n";
  else
    std::cout << report.json() << "\n";
}

void print_table(const Report& meta, const std::vector<Report>& rows,
                 const std::string& output) {
  if (output == "csv") {
    if (!rows.empty()) std::cout << rows.front().csv_header() << "\n";
    for (const auto& row : rows) std::cout << row.csv_row() << "\n";
    return;
  }
  std::string out = meta.json();
  out.erase(out.rfind('\n'));  // reopen the object to append "rows"
  out += ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "    " + rows[i].json(4);
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  out += "  ]\n}";
  std::cout << out << "\n";
}

using StatePtr = std::unique_ptr<visq_state, decltype(&visq_state_free)>;
using UnitaryPtr = std::unique_ptr<visq_unitary, decltype(&visq_unitary_free)>;

StatePtr make_state(const std::string& spec) {
  visq_state* raw = nullptr;
  check(visq_state_parse_spec(spec.c_str(), &raw));
  return StatePtr(raw, &visq_state_free);
}

// "computational" maps to a null handle; the library then uses the
// computational basis of the matching subsystem.
UnitaryPtr make_basis(const std::string& spec) {
  if (spec == "computational") return UnitaryPtr(nullptr, &visq_unitary_free);
  visq_unitary* raw = nullptr;
  check(visq_unitary_parse_spec(spec.c_str(), &raw));
  return UnitaryPtr(raw, &visq_unitary_free);
}

UnitaryPtr make_unitary(const std::string& spec) {
  visq_unitary* raw = nullptr;
  check(visq_unitary_parse_spec(spec.c_str(), &raw));
  return UnitaryPtr(raw, &visq_unitary_free);
}

std::string state_json(const visq_state* state) {
  size_t needed = 0;
  visq_status status = visq_state_to_json(state, nullptr, 0, &needed);
  if (status != VISQ_ERR_BUFFER_TOO_SMALL) check(status);
  std::string text(needed, '\0');
  check(visq_state_to_json(state, text.data(), text.size(), &needed));
  text.resize(needed - 1);  // drop the NUL
  return text;
}

std::vector<double> parse_grid(const std::string& grid) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= grid.size()) {
    const auto pos = grid.find(',', start);
    const std::string token = grid.substr(
        start, pos == std::string::npos ? std::string::npos : pos - start);
    if (token.empty())
      throw CliError{"empty entry in grid '" + grid + "'", "parse error"};
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw CliError{"bad grid value '" + token + "'", "parse error"};
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return values;
}

std::string substitute(const std::string& tmpl, const std::string& value) {
  const auto pos = tmpl.find("{}");
  if (pos == std::string::npos) return tmpl;
  std::string out = tmpl;
  out.replace(pos, 2, value);
  return out;
}

void add_estimate(Report& report, const visq_estimate& est) {
  report.num("estimate", est.mean);
  report.num("std_error", est.std_error);
  if (est.has_exact) report.num("exact", est.exact_value);
}

void add_check(Report& report, const visq_check& c) {
  report.num("estimate", c.estimate.mean);
  report.num("std_error", c.estimate.std_error);
  report.num("predicted", c.predicted);
  report.num("sigma_distance", c.sigma_distance);
  report.boolean("pass", c.pass != 0);
}

struct Options {
  std::string state;
  std::string basis_a = "computational";
  std::string basis_b = "computational";
  std::string unitary;
  std::string output = "json";
  std::string out_path;
  std::string sweep_command;
  std::string grid;
  double epsilon = 0.0;
  double sigma = 4.0;
  double tol = 0.05;
  uint64_t samples = 50000;
  uint64_t seed = 0;
  uint64_t decomps = 0;
  int dim = 2;
  int threads = 0;
  bool paired = true;
  bool one_sided = false;
};

void base_meta(Report& report, const std::string& command,
               const Options& opt) {
  report.str("command", command);
  if (!opt.state.empty()) report.str("state", opt.state);
}

void mc_meta(Report& report, const Options& opt) {
  report.uinteger("samples", opt.samples);
  report.uinteger("seed", opt.seed);
  report.num("sigma", opt.sigma);
}

int run_validate(const Options& opt) {
  size_t needed = 0;
  int valid = 0;
  visq_status status =
      visq_validate_file(opt.state.c_str(), nullptr, 0, &needed, &valid);
  if (status != VISQ_ERR_BUFFER_TOO_SMALL) check(status);
  std::string text(needed, '\0');
  check(visq_validate_file(opt.state.c_str(), text.data(), text.size(),
                           &needed, &valid));
  text.resize(needed - 1);
  std::cout << text;
  return valid ? 0 : 2;
}

int run_visibility(const Options& opt, bool phase) {
  auto state = make_state(opt.state);
  auto u = make_unitary(opt.unitary);
  Report report;
  base_meta(report, phase ? "phase" : "visibility", opt);
  report.str("unitary", opt.unitary);
  if (phase) {
    double value = 0.0;
    check(visq_relative_phase(state.get(), u.get(), &value));
    report.num("phase", value);
  } else {
    double v = 0.0;
    double v2 = 0.0;
    check(visq_visibility(state.get(), u.get(), &v));
    check(visq_visibility_squared(state.get(), u.get(), &v2));
    report.num("visibility", v);
    report.num("visibility_squared", v2);
  }
  print_report(report, opt.output);
  return 0;
}

int run_q(const Options& opt) {
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  auto bb = make_basis(opt.basis_b);
  double q = 0.0;
  check(visq_q(state.get(), ba.get(), bb.get(), &q));
  Report report;
  base_meta(report, "q", opt);
  report.str("basis_a", opt.basis_a);
  report.str("basis_b", opt.basis_b);
  report.num("q", q);
  report.num("q_squared", q * q);
  print_report(report, opt.output);
  return 0;
}

int run_q_noisy(const Options& opt) {
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  auto bb = make_basis(opt.basis_b);
  double q = 0.0;
  double q_noisy = 0.0;
  check(visq_q(state.get(), ba.get(), bb.get(), &q));
  check(visq_q_noisy(state.get(), opt.epsilon, ba.get(), bb.get(), &q_noisy));
  Report report;
  base_meta(report, "q-noisy", opt);
  report.str("basis_a", opt.basis_a);
  report.str("basis_b", opt.basis_b);
  report.num("epsilon", opt.epsilon);
  report.num("q", q);
  report.num("q_noisy", q_noisy);
  report.num("epsilon_times_q", opt.epsilon * q);
  print_report(report, opt.output);
  return 0;
}

int run_dephase(const Options& opt) {
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  visq_state* raw = nullptr;
  if (opt.one_sided) {
    check(visq_dephase_one_sided(state.get(), ba.get(), &raw));
  } else {
    auto bb = make_basis(opt.basis_b);
    check(visq_dephase(state.get(), ba.get(), bb.get(), &raw));
  }
  StatePtr dephased(raw, &visq_state_free);
  if (!opt.out_path.empty()) {
    check(visq_state_save(dephased.get(), opt.out_path.c_str()));
  } else {
    std::cout << state_json(dephased.get());
  }
  return 0;
}

int run_schmidt(const Options& opt) {
  auto state = make_state(opt.state);
  double coeffs[64];
  size_t count = 0;
  check(visq_schmidt(state.get(), coeffs, 64, &count));
  Report report;
  base_meta(report, "schmidt", opt);
  for (size_t i = 0; i < count; ++i)
    report.num("coeff_" + std::to_string(i), coeffs[i]);
  print_report(report, opt.output);
  return 0;
}

int run_entanglement(const Options& opt, bool use_concurrence) {
  auto state = make_state(opt.state);
  double value = 0.0;
  check(use_concurrence ? visq_concurrence(state.get(), &value)
                        : visq_linear_entanglement(state.get(), &value));
  Report report;
  base_meta(report, use_concurrence ? "concurrence" : "entanglement", opt);
  report.num(use_concurrence ? "concurrence" : "linear_entanglement", value);
  print_report(report, opt.output);
  return 0;
}

int run_ef_bound(const Options& opt) {
  visq_set_max_threads(opt.threads);
  auto state = make_state(opt.state);
  double bound = 0.0;
  check(visq_ef_bound(state.get(), &bound));
  Report report;
  base_meta(report, "ef-bound", opt);
  report.num("bound", bound);
  bool pass = true;
  if (opt.decomps > 0) {
    visq_ef_report ef;
    check(visq_verify_ef_bound(state.get(), opt.decomps, opt.seed, &ef));
    report.uinteger("decompositions", ef.n_decompositions);
    report.uinteger("seed", opt.seed);
    report.num("best_average", ef.best_average);
    report.num("worst_average", ef.worst_average);
    report.boolean("all_within_bound", ef.all_within_bound != 0);
    pass = ef.all_within_bound != 0;
  }
  print_report(report, opt.output);
  return pass ? 0 : 1;
}

int run_complementarity(const Options& opt) {
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  visq_complementarity c;
  check(visq_complementarity_report(state.get(), ba.get(), &c));
  Report report;
  base_meta(report, "complementarity", opt);
  report.str("basis_a", opt.basis_a);
  report.num("ef_bound", c.ef_bound);
  report.num("q_one_sided", c.q_one_sided);
  report.num("purity_b", c.purity_b);
  report.num("lhs_q_squared", c.lhs_q_squared);
  report.num("lhs_q_linear", c.lhs_q_linear);
  report.num("slack", c.slack);
  const bool pass = c.lhs_q_squared <= 1.0 + 1e-10;
  report.boolean("pass", pass);
  print_report(report, opt.output);
  return pass ? 0 : 1;
}

int run_purity_ratio(const Options& opt) {
  auto state = make_state(opt.state);
  double ratio = 0.0;
  int within = 0;
  check(visq_purity_ratio(state.get(), &ratio, &within));
  Report report;
  base_meta(report, "purity-ratio", opt);
  report.num("ratio", ratio);
  report.boolean("within_bounds", within != 0);
  print_report(report, opt.output);
  return within ? 0 : 1;
}

int run_avg_visibility(const Options& opt, bool local) {
  visq_set_max_threads(opt.threads);
  auto state = make_state(opt.state);
  visq_estimate est;
  check(local ? visq_avg_sq_visibility_local(state.get(), opt.samples,
                                             opt.seed, &est)
              : visq_avg_sq_visibility(state.get(), opt.samples, opt.seed,
                                       &est));
  Report report;
  base_meta(report, local ? "avg-visibility-local" : "avg-visibility", opt);
  mc_meta(report, opt);
  add_estimate(report, est);
  const double dist =
      est.std_error == 0.0
          ? (est.mean == est.exact_value ? 0.0 : HUGE_VAL)
          : std::abs(est.mean - est.exact_value) / est.std_error;
  report.num("sigma_distance", dist);
  const bool pass = dist <= opt.sigma;
  report.boolean("pass", pass);
  print_report(report, opt.output);
  return pass ? 0 : 1;
}

int run_theorem1(const Options& opt) {
  visq_set_max_threads(opt.threads);
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  auto bb = make_basis(opt.basis_b);
  visq_check c;
  check(visq_theorem1(state.get(), ba.get(), bb.get(), opt.samples, opt.seed,
                      opt.paired ? 1 : 0, opt.sigma, &c));
  Report report;
  base_meta(report, "theorem1", opt);
  report.str("basis_a", opt.basis_a);
  report.str("basis_b", opt.basis_b);
  mc_meta(report, opt);
  report.boolean("paired", opt.paired);
  add_check(report, c);
  print_report(report, opt.output);
  return c.pass ? 0 : 1;
}

int run_noisy_theorem(const Options& opt) {
  visq_set_max_threads(opt.threads);
  auto state = make_state(opt.state);
  auto ba = make_basis(opt.basis_a);
  auto bb = make_basis(opt.basis_b);
  visq_check c;
  check(visq_noisy_theorem(state.get(), opt.epsilon, ba.get(), bb.get(),
                           opt.samples, opt.seed, opt.paired ? 1 : 0,
                           opt.sigma, &c));
  Report report;
  base_meta(report, "noisy-theorem", opt);
  report.str("basis_a", opt.basis_a);
  report.str("basis_b", opt.basis_b);
  report.num("epsilon", opt.epsilon);
  mc_meta(report, opt);
  report.boolean("paired", opt.paired);
  add_check(report, c);
  print_report(report, opt.output);
  return c.pass ? 0 : 1;
}

int run_entanglement_from_visibility(const Options& opt) {
  visq_set_max_threads(opt.threads);
  auto state = make_state(opt.state);
  visq_check e;
  visq_check c;
  check(visq_entanglement_from_visibility(state.get(), opt.samples, opt.seed,
                                          opt.sigma, &e, &c));
  Report report;
  base_meta(report, "entanglement-from-visibility", opt);
  mc_meta(report, opt);
  report.num("e_estimate", e.estimate.mean);
  report.num("e_std_error", e.estimate.std_error);
  report.num("e_predicted", e.predicted);
  report.num("e_sigma_distance", e.sigma_distance);
  report.boolean("e_pass", e.pass != 0);
  report.num("c_estimate", c.estimate.mean);
  report.num("c_std_error", c.estimate.std_error);
  report.num("c_predicted", c.predicted);
  report.num("c_sigma_distance", c.sigma_distance);
  report.boolean("c_pass", c.pass != 0);
  const bool pass = e.pass != 0 && c.pass != 0;
  report.boolean("pass", pass);
  print_report(report, opt.output);
  return pass ? 0 : 1;
}

int run_verify_swap(const Options& opt) {
  visq_set_max_threads(opt.threads);
  visq_swap_report swap;
  check(visq_verify_swap_moment(opt.dim, opt.samples, opt.seed, &swap));
  Report report;
  report.str("command", "verify-swap");
  report.uinteger("dim", static_cast<uint64_t>(opt.dim));
  report.uinteger("samples", opt.samples);
  report.uinteger("seed", opt.seed);
  report.num("hs_deviation", swap.hs_deviation);
  report.num("trace_mf", swap.trace_mf);
  report.num("tol", opt.tol);
  const bool pass = swap.hs_deviation <= opt.tol;
  report.boolean("pass", pass);
  print_report(report, opt.output);
  return pass ? 0 : 1;
}

int run_sweep(const Options& opt) {
  visq_set_max_threads(opt.threads);
  const std::vector<double> grid = parse_grid(opt.grid);
  if (grid.empty()) throw CliError{"sweep grid is empty", "invalid argument"};

  Report meta;
  meta.str("command", "sweep");
  meta.str("sweep_command", opt.sweep_command);
  meta.str("state", opt.state);
  meta.str("grid", opt.grid);

  std::vector<Report> rows;
  bool all_pass = true;

  if (opt.sweep_command == "noisy-theorem") {
    auto state = make_state(opt.state);
    auto ba = make_basis(opt.basis_a);
    auto bb = make_basis(opt.basis_b);
    meta.uinteger("samples", opt.samples);
    meta.uinteger("seed", opt.seed);
    meta.num("sigma", opt.sigma);
    double q = 0.0;
    check(visq_q(state.get(), ba.get(), bb.get(), &q));
    for (double eps : grid) {
      visq_check c;
      check(visq_noisy_theorem(state.get(), eps, ba.get(), bb.get(),
                               opt.samples, opt.seed, opt.paired ? 1 : 0,
                               opt.sigma, &c));
      double q_noisy = 0.0;
      check(visq_q_noisy(state.get(), eps, ba.get(), bb.get(), &q_noisy));
      Report row;
      row.num("epsilon", eps);
      add_check(row, c);
      row.num("q_noisy", q_noisy);
      row.num("epsilon_times_q", eps * q);
      rows.push_back(std::move(row));
      all_pass = all_pass && c.pass != 0;
    }
  } else if (opt.sweep_command == "q") {
    auto ba = make_basis(opt.basis_a);
    auto bb = make_basis(opt.basis_b);
    for (double value : grid) {
      const std::string spec = substitute(opt.state, fmt17(value));
      auto state = make_state(spec);
      double q = 0.0;
      check(visq_q(state.get(), ba.get(), bb.get(), &q));
      Report row;
      row.num("param", value);
      row.str("state", spec);
      row.num("q", q);
      rows.push_back(std::move(row));
    }
  } else {
    throw CliError{"sweep --command must be 'noisy-theorem' or 'q'",
                   "invalid argument"};
  }

  print_table(meta, rows, opt.output);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "visq: interference visibility, measurement disturbance and "
      "entanglement measures for bipartite quantum states"};
  app.require_subcommand(1);

  Options opt;
  int exit_code = 0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", opt.threads,
                    "Worker-thread cap for sampling loops (0 = auto); does "
                    "not affect results");
  };
  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", opt.state,
                    "State: builtin spec (bell:0, werner:0.5, cc-uniform:2,2, "
                    "random:2,3,rank=2,seed=11, random-pure:2,2,seed=7, "
                    "schmidt:0.8,0.2) or a state-file path")
        ->required();
  };
  auto add_bases = [&](CLI::App* sub) {
    sub->add_option("--basis-a", opt.basis_a,
                    "A-side basis: 'computational' or a basis-file path");
    sub->add_option("--basis-b", opt.basis_b,
                    "B-side basis: 'computational' or a basis-file path");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", opt.samples, "Monte Carlo sample count")
        ->check(CLI::Range(uint64_t{2}, std::numeric_limits<uint64_t>::max()));
    sub->add_option("--seed", opt.seed, "Base seed; all randomness flows "
                                        "from this one value");
    sub->add_option("--sigma", opt.sigma, "Pass threshold in standard errors")
        ->check(CLI::PositiveNumber);
  };
  auto add_paired = [&](CLI::App* sub) {
    sub->add_flag("--paired,!--unpaired", opt.paired,
                  "Evaluate both terms at the same draw (default) or "
                  "independently");
  };

  auto* validate =
      app.add_subcommand("validate", "Validate a state file and print the "
                                     "violation report");
  add_state(validate);
  add_output(validate);
  validate->callback([&] { exit_code = run_validate(opt); });

  auto* visibility =
      app.add_subcommand("visibility", "|Tr(rho U)| for a given unitary");
  add_state(visibility);
  add_output(visibility);
  visibility
      ->add_option("--unitary", opt.unitary,
                   "Unitary: identity:d, haar:d[,seed=s][,index=i], or a "
                   "basis-file path")
      ->required();
  visibility->callback([&] { exit_code = run_visibility(opt, false); });

  auto* phase =
      app.add_subcommand("phase", "Relative phase Arg Tr(rho U)");
  add_state(phase);
  add_output(phase);
  phase
      ->add_option("--unitary", opt.unitary,
                   "Unitary: identity:d, haar:d[,seed=s][,index=i], or a "
                   "basis-file path")
      ->required();
  phase->callback([&] { exit_code = run_visibility(opt, true); });

  auto* q = app.add_subcommand(
      "q", "Measurement disturbance ||rho - Phi(rho)||_HS");
  add_state(q);
  add_bases(q);
  add_output(q);
  q->callback([&] { exit_code = run_q(opt); });

  auto* q_noisy = app.add_subcommand(
      "q-noisy", "Noisy-measurement disturbance ||rho - Phi_eps(rho)||_HS");
  add_state(q_noisy);
  add_bases(q_noisy);
  add_output(q_noisy);
  q_noisy->add_option("--epsilon", opt.epsilon, "Measurement probability")
      ->required();
  q_noisy->callback([&] { exit_code = run_q_noisy(opt); });

  auto* dephase = app.add_subcommand(
      "dephase", "Apply the measurement channel; prints the state JSON");
  add_state(dephase);
  add_bases(dephase);
  dephase->add_flag("--one-sided", opt.one_sided,
                    "Measure subsystem A only");
  dephase->add_option("--out", opt.out_path,
                      "Write the state file here instead of stdout");
  dephase->callback([&] { exit_code = run_dephase(opt); });

  auto* schmidt =
      app.add_subcommand("schmidt", "Schmidt coefficients of a pure state");
  add_state(schmidt);
  add_output(schmidt);
  schmidt->callback([&] { exit_code = run_schmidt(opt); });

  auto* entanglement = app.add_subcommand(
      "entanglement", "Linear-entropy entanglement of a pure state");
  add_state(entanglement);
  add_output(entanglement);
  entanglement->callback([&] { exit_code = run_entanglement(opt, false); });

  auto* concurrence =
      app.add_subcommand("concurrence", "Concurrence of a pure state");
  add_state(concurrence);
  add_output(concurrence);
  concurrence->callback([&] { exit_code = run_entanglement(opt, true); });

  auto* ef_bound = app.add_subcommand(
      "ef-bound", "Upper bound 1 - Tr(rho_A^2) on the linear entanglement "
                  "of formation; --decomps sweeps random decompositions "
                  "against it");
  add_state(ef_bound);
  add_output(ef_bound);
  ef_bound->add_option("--decomps", opt.decomps,
                       "Number of random decompositions to sweep");
  ef_bound->add_option("--seed", opt.seed, "Decomposition seed");
  ef_bound->callback([&] { exit_code = run_ef_bound(opt); });

  auto* complementarity = app.add_subcommand(
      "complementarity",
      "Entanglement / one-sided disturbance / subsystem-purity trade-off");
  add_state(complementarity);
  add_output(complementarity);
  complementarity->add_option("--basis-a", opt.basis_a,
                              "A-side basis: 'computational' or a file path");
  complementarity->callback([&] { exit_code = run_complementarity(opt); });

  auto* purity_ratio = app.add_subcommand(
      "purity-ratio", "Global/local purity ratio and its [1/d_B, d_B] check");
  add_state(purity_ratio);
  add_output(purity_ratio);
  purity_ratio->callback([&] { exit_code = run_purity_ratio(opt); });

  auto* avg_vis = app.add_subcommand(
      "avg-visibility",
      "MC average of |Tr(rho U)|^2 against the exact Tr(rho^2)/d");
  add_state(avg_vis);
  add_mc(avg_vis);
  add_output(avg_vis);
  avg_vis->callback([&] { exit_code = run_avg_visibility(opt, false); });

  auto* avg_vis_local = app.add_subcommand(
      "avg-visibility-local",
      "MC average of |Tr(rho (U x V))|^2 against Tr(rho^2)/(dA dB)");
  add_state(avg_vis_local);
  add_mc(avg_vis_local);
  add_output(avg_vis_local);
  avg_vis_local->callback([&] { exit_code = run_avg_visibility(opt, true); });

  auto* theorem1 = app.add_subcommand(
      "theorem1", "Average squared-visibility drop under full measurement "
                  "against Q^2/(dA dB)");
  add_state(theorem1);
  add_bases(theorem1);
  add_mc(theorem1);
  add_paired(theorem1);
  add_output(theorem1);
  theorem1->callback([&] { exit_code = run_theorem1(opt); });

  auto* noisy_theorem = app.add_subcommand(
      "noisy-theorem", "Noisy-measurement variant: predicted "
                       "eps(2-eps) Q^2/(dA dB)");
  add_state(noisy_theorem);
  add_bases(noisy_theorem);
  add_mc(noisy_theorem);
  add_paired(noisy_theorem);
  add_output(noisy_theorem);
  noisy_theorem
      ->add_option("--epsilon", opt.epsilon, "Measurement probability")
      ->required();
  noisy_theorem->callback([&] { exit_code = run_noisy_theorem(opt); });

  auto* efv = app.add_subcommand(
      "entanglement-from-visibility",
      "E and C of a pure state from the average local visibility");
  add_state(efv);
  add_mc(efv);
  add_output(efv);
  efv->callback([&] { exit_code = run_entanglement_from_visibility(opt); });

  auto* verify_swap = app.add_subcommand(
      "verify-swap", "Deviation of mean(U x U^dag) from F/d");
  verify_swap->add_option("--dim", opt.dim, "Unitary dimension")->required();
  verify_swap->add_option("--samples", opt.samples, "Sample count");
  verify_swap->add_option("--seed", opt.seed, "Base seed");
  verify_swap->add_option("--tol", opt.tol,
                          "Pass threshold on the HS deviation");
  add_output(verify_swap);
  verify_swap->callback([&] { exit_code = run_verify_swap(opt); });

  auto* sweep = app.add_subcommand(
      "sweep", "Run a command over a parameter grid; one row per point");
  sweep
      ->add_option("--command", opt.sweep_command,
                   "noisy-theorem (grid = epsilon values) or q (grid values "
                   "substituted into '{}' in --state)")
      ->required();
  add_state(sweep);
  add_bases(sweep);
  add_mc(sweep);
  add_paired(sweep);
  add_output(sweep);
  sweep->add_option("--grid", opt.grid, "Comma-separated grid values")
      ->required();
  sweep->callback([&] { exit_code = run_sweep(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::cerr << "{\"error\": \"" << json_escape(e.message)
              << "\", \"status\": \"" << json_escape(e.status) << "\"}\n";
    return 2;
  }
  return exit_code;
}
