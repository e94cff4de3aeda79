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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "proc.hpp"

using nlohmann::json;

namespace {

const std::string kCli = VISQ_CLI_PATH;

proc::CommandResult run_cli(const std::string& args,
                            bool merge_stderr = false) {
  return proc::run(kCli + " " + args, merge_stderr);
}

json parse_output(const std::string& text) {
  return json::parse(text);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  // fields in this suite never contain escaped commas
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("--help exits 0; bad invocations exit 2") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("frobnicate", true).exit_code == 2);
  CHECK(run_cli("q", true).exit_code == 2);              // missing --state
  CHECK(run_cli("q --state nope:1", true).exit_code == 2);
  CHECK(run_cli("q-noisy --state bell:0 --epsilon 1.5", true).exit_code == 2);
}

TEST_CASE("q on the Werner fixture") {
  const auto result = run_cli("q --state werner:0.5");
  REQUIRE(result.exit_code == 0);
  const json report = parse_output(result.output);
  CHECK(report.at("command") == "q");
  CHECK(report.at("state") == "werner:0.5");
  CHECK(std::abs(report.at("q").get<double>() - std::sqrt(0.125)) <= 1e-12);
}

TEST_CASE("theorem1 passes on Bell and is exact on classical states") {
  const auto bell =
      run_cli("theorem1 --state bell:0 --samples 20000 --seed 7");
  REQUIRE(bell.exit_code == 0);
  const json report = parse_output(bell.output);
  CHECK(std::abs(report.at("predicted").get<double>() - 0.125) <= 1e-12);
  CHECK(report.at("pass") == true);
  CHECK(report.at("samples") == 20000);
  CHECK(report.at("seed") == 7);

  const auto classical =
      run_cli("theorem1 --state cc-uniform:2,2 --samples 2000 --seed 5");
  REQUIRE(classical.exit_code == 0);
  const json creport = parse_output(classical.output);
  CHECK(creport.at("predicted").get<double>() == 0.0);
  CHECK(creport.at("estimate").get<double>() == 0.0);
  CHECK(creport.at("pass") == true);
}

TEST_CASE("unpaired sampling widens the interval but still passes") {
  const auto paired =
      run_cli("theorem1 --state bell:0 --samples 20000 --seed 9");
  const auto unpaired =
      run_cli("theorem1 --state bell:0 --samples 20000 --seed 9 --unpaired");
  REQUIRE(paired.exit_code == 0);
  REQUIRE(unpaired.exit_code == 0);
  const json tight = parse_output(paired.output);
  const json loose = parse_output(unpaired.output);
  CHECK(tight.at("paired") == true);
  CHECK(loose.at("paired") == false);
  CHECK(tight.at("std_error").get<double>() <
        loose.at("std_error").get<double>());
  CHECK(loose.at("pass") == true);
}

TEST_CASE("single-command CSV carries the same numbers as JSON") {
  const auto as_json = run_cli("q --state werner:0.5");
  const auto as_csv = run_cli("q --state werner:0.5 --output csv");
  REQUIRE(as_json.exit_code == 0);
  REQUIRE(as_csv.exit_code == 0);
  const json report = parse_output(as_json.output);
  const auto table = parse_csv(as_csv.output);
  REQUIRE(table.size() == 2);
  for (std::size_t col = 0; col < table[0].size(); ++col) {
    if (table[0][col] != "q" && table[0][col] != "q_squared") continue;
    CHECK(std::stod(table[1][col]) ==
          report.at(table[0][col]).get<double>());
  }
}

TEST_CASE("reports are byte-for-byte reproducible") {
  const std::string cmd =
      "theorem1 --state werner:0.5 --samples 5000 --seed 11";
  const auto first = run_cli(cmd);
  const auto second = run_cli(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);

  // the worker-count knob must not change the numbers
  const auto threaded = run_cli(cmd + " --threads 4");
  CHECK(first.output == threaded.output);
}

TEST_CASE("validate: clean and violating files") {
  TempFile good("test_cli_good.json");
  {
    const auto dephase = run_cli("dephase --state bell:0 --out " + good.path);
    REQUIRE(dephase.exit_code == 0);
  }
  const auto ok = run_cli("validate --state " + good.path);
  CHECK(ok.exit_code == 0);
  CHECK(parse_output(ok.output).at("valid") == true);

  TempFile bad("test_cli_bad.json");
  {
    std::ofstream out(bad.path);
    out << R"({"kind":"density","dims":[1,2],
               "re":[[0.7,0],[0,0.2]],"im":[[0,0],[0,0]]})";
  }
  const auto violated = run_cli("validate --state " + bad.path);
  CHECK(violated.exit_code == 2);
  const json report = parse_output(violated.output);
  CHECK(report.at("valid") == false);
  CHECK(report.at("violations").at(0).at("invariant") == "trace");

  const auto missing = run_cli("validate --state missing.json", true);
  CHECK(missing.exit_code == 2);
}

TEST_CASE("dephase emits a loadable diagonal state") {
  const auto result = run_cli("dephase --state bell:0");
  REQUIRE(result.exit_code == 0);
  const json state = parse_output(result.output);
  CHECK(state.at("kind") == "density");
  const auto& re = state.at("re");
  CHECK(std::abs(re.at(0).at(0).get<double>() - 0.5) <= 1e-12);
  CHECK(re.at(0).at(3).get<double>() == 0.0);
}

TEST_CASE("schmidt / entanglement / concurrence fixtures") {
  const auto schmidt = run_cli("schmidt --state schmidt:0.8,0.2");
  REQUIRE(schmidt.exit_code == 0);
  const json sreport = parse_output(schmidt.output);
  CHECK(std::abs(sreport.at("coeff_0").get<double>() - 0.8) <= 1e-12);
  CHECK(std::abs(sreport.at("coeff_1").get<double>() - 0.2) <= 1e-12);

  const auto ent = run_cli("entanglement --state schmidt:0.8,0.2");
  REQUIRE(ent.exit_code == 0);
  CHECK(std::abs(parse_output(ent.output).at("linear_entanglement")
                     .get<double>() -
                 0.32) <= 1e-12);

  const auto conc = run_cli("concurrence --state bell:0");
  REQUIRE(conc.exit_code == 0);
  CHECK(std::abs(parse_output(conc.output).at("concurrence").get<double>() -
                 1.0) <= 1e-12);

  // pure-state command on a mixed state is an input error
  CHECK(run_cli("schmidt --state werner:0.5", true).exit_code == 2);
}

TEST_CASE("phase: defined and undefined cases") {
  const auto ok = run_cli("phase --state bell:0 --unitary identity:4");
  REQUIRE(ok.exit_code == 0);
  CHECK(std::abs(parse_output(ok.output).at("phase").get<double>()) <= 1e-12);

  TempFile sz("test_cli_sz.json");
  {
    std::ofstream out(sz.path);
    out << R"({"kind":"basis","dim":2,"re":[[1,0],[0,-1]],)"
        << R"("im":[[0,0],[0,0]]})";
  }
  const auto undefined = run_cli(
      "phase --state cc-uniform:1,2 --unitary " + sz.path, true);
  CHECK(undefined.exit_code == 2);
}

TEST_CASE("verify-swap within tolerance") {
  const auto result =
      run_cli("verify-swap --dim 2 --samples 20000 --seed 3");
  REQUIRE(result.exit_code == 0);
  const json report = parse_output(result.output);
  CHECK(report.at("hs_deviation").get<double>() <= 0.05);
  CHECK(std::abs(report.at("trace_mf").get<double>() - 2.0) <= 1e-9);
  CHECK(report.at("pass") == true);
}

TEST_CASE("sweep over epsilon: predictions, identity and CSV/JSON parity") {
  const std::string args =
      "sweep --command noisy-theorem --state bell:0 --grid 0,0.5,1 "
      "--samples 10000 --seed 13";
  const auto as_json = run_cli(args);
  REQUIRE(as_json.exit_code == 0);
  const json report = parse_output(as_json.output);
  const auto& rows = report.at("rows");
  REQUIRE(rows.size() == 3);
  const double grid[3] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    const double eps = grid[i];
    CHECK(std::abs(rows.at(i).at("predicted").get<double>() -
                   eps * (2 - eps) * 0.125) <= 1e-12);
    CHECK(rows.at(i).at("pass") == true);
    CHECK(std::abs(rows.at(i).at("q_noisy").get<double>() -
                   rows.at(i).at("epsilon_times_q").get<double>()) <= 1e-12);
  }

  const auto as_csv = run_cli(args + " --output csv");
  REQUIRE(as_csv.exit_code == 0);
  const auto table = parse_csv(as_csv.output);
  REQUIRE(table.size() == 4);  // header + 3 rows
  const auto& header = table[0];
  for (int i = 0; i < 3; ++i) {
    const auto& cells = table[i + 1];
    REQUIRE(cells.size() == header.size());
    for (std::size_t col = 0; col < header.size(); ++col) {
      if (header[col] == "pass") continue;
      // identical numeric values in both formats
      const double csv_value = std::stod(cells[col]);
      const double json_value = rows.at(i).at(header[col]).get<double>();
      CHECK(csv_value == json_value);
    }
  }
}

TEST_CASE("sweep over the Werner family") {
  const auto result = run_cli(
      "sweep --command q --state werner:{} --grid 0,0.5,1 --output csv");
  REQUIRE(result.exit_code == 0);
  const auto table = parse_csv(result.output);
  REQUIRE(table.size() == 4);
  // q column: param, state, q
  CHECK(std::stod(table[1][2]) == 0.0);
  CHECK(std::abs(std::stod(table[2][2]) - std::sqrt(0.125)) <= 1e-12);
  CHECK(std::abs(std::stod(table[3][2]) - std::sqrt(0.5)) <= 1e-12);
}

TEST_CASE("sweep rejects an empty grid") {
  CHECK(run_cli("sweep --command q --state werner:{} --grid ''", true)
            .exit_code == 2);
  CHECK(run_cli("sweep --command bogus --state bell:0 --grid 1", true)
            .exit_code == 2);
}

TEST_CASE("avg-visibility report and gate") {
  const auto result = run_cli(
      "avg-visibility --state werner:0.5 --samples 20000 --seed 17");
  REQUIRE(result.exit_code == 0);
  const json report = parse_output(result.output);
  CHECK(std::abs(report.at("exact").get<double>() - 0.109375) <= 1e-15);
  CHECK(report.at("pass") == true);
}

TEST_CASE("complementarity and purity-ratio commands") {
  const auto comp = run_cli("complementarity --state bell:0");
  REQUIRE(comp.exit_code == 0);
  const json report = parse_output(comp.output);
  CHECK(std::abs(report.at("lhs_q_squared").get<double>() - 0.875) <= 1e-12);
  CHECK(report.at("pass") == true);

  const auto ratio = run_cli("purity-ratio --state bell:0");
  REQUIRE(ratio.exit_code == 0);
  CHECK(std::abs(parse_output(ratio.output).at("ratio").get<double>() - 2.0) <=
        1e-12);
}

TEST_CASE("ef-bound with a decomposition sweep") {
  const auto result =
      run_cli("ef-bound --state werner:0.5 --decomps 20 --seed 19");
  REQUIRE(result.exit_code == 0);
  const json report = parse_output(result.output);
  CHECK(std::abs(report.at("bound").get<double>() - 0.5) <= 1e-12);
  CHECK(report.at("all_within_bound") == true);
  CHECK(report.at("best_average").get<double>() <=
        report.at("worst_average").get<double>());
}

TEST_CASE("entanglement-from-visibility command") {
  const auto result = run_cli(
      "entanglement-from-visibility --state bell:0 --samples 20000 --seed 23");
  REQUIRE(result.exit_code == 0);
  const json report = parse_output(result.output);
  CHECK(std::abs(report.at("e_predicted").get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(report.at("c_predicted").get<double>() - 1.0) <= 1e-12);
  CHECK(report.at("pass") == true);
}
