// Copyright 2026 The mmwcov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "mmwcov/error.hpp"
#include "mmwcov/runner.hpp"
#include "mmwcov/scenario.hpp"

using namespace mmwcov;

namespace {

std::string header(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::size_t rows(const std::string& csv) {
  std::size_t n = 0;
  for (char c : csv) n += c == '\n';
  return n - 1;
}

}  // namespace

TEST_CASE("coverage job columns") {
  const Scenario s = parse_scenario("thresholds.grid = -10:40:10 dB");
  const RunOutput out = run_scenario(s);
  CHECK(header(out.csv) == "threshold_db,threshold,p_cov_analytic");
  CHECK(rows(out.csv) == 6);
  const RunOutput mc = run_scenario(parse_scenario("thresholds.grid = -10:40:10 dB\nmc.trials = 300"));
  CHECK(header(mc.csv) == "threshold_db,threshold,p_cov_analytic,p_cov_mc,mc_stderr");
}

TEST_CASE("validate job reports the largest gap") {
  const RunOutput out = run_scenario(parse_scenario("job = validate\nthresholds.grid = 0:40:20 dB\nmc.trials = 2000"));
  bool found = false;
  for (const auto& [k, v] : out.metrics) {
    if (k == "max_abs_gap") {
      found = true;
      CHECK(v >= 0.0);
      CHECK(v < 0.06);
    }
  }
  CHECK(found);
}

TEST_CASE("other jobs") {
  const std::string dense_ant =
      "antenna.tx.main = 10 dB\nantenna.tx.beamwidth = 30 deg\nantenna.rx.beamwidth = 30 deg\n";
  CHECK(header(run_scenario(parse_scenario("job = assoc")).csv) == "quantity,analytic,mc,mc_stderr");
  CHECK(header(run_scenario(parse_scenario(dense_ant + "job = dense\ndense.rho = 4\nthresholds.grid = 0:20:10 dB")).csv) ==
        "rho,threshold_db,threshold,p_cov_dense,p_cov_alpha2");
  CHECK(header(run_scenario(parse_scenario(dense_ant + "job = dense\ndense.alpha = 3\nthresholds.grid = 0:20:10 dB\nmc.trials = 200")).csv) ==
        "rho,threshold_db,threshold,p_cov_dense,p_cov_mc,mc_stderr");
  const RunOutput rate = run_scenario(parse_scenario(dense_ant + "job = rate\nrate.model = dense\ndense.rho = 4, 16"));
  CHECK(header(rate.csv) == "rho,spectral_efficiency,rate_bps");
  CHECK(rows(rate.csv) == 2);
  const RunOutput sweep = run_scenario(parse_scenario(dense_ant + "job = sweep\nsweep.grid = 1, 4, 16\nsweep.threshold = 20 dB"));
  CHECK(header(sweep.csv) == "rho,p_cov_dense");
  CHECK(header(run_scenario(parse_scenario("job = sweep\nsweep.var = cell_radius\nsweep.grid = 100, 200")).csv) ==
        "cell_radius_m,p_cov_analytic,a_los");
  const RunOutput dom = run_scenario(parse_scenario(
      "job = dominance\nantenna.tx.main = 20 dB\ndominance.b.antenna.tx.main = 10 dB\ndominance.b.antenna.tx.side = -30 dB\n"
      "antenna.tx.side = -10 dB\nthresholds.grid = 0:20:10 dB\nmc.trials = 1000"));
  CHECK(header(dom.csv) == "threshold_db,threshold,p_a,p_b,diff,diff_stderr");
  REQUIRE(dom.notes.size() == 1);
  CHECK(dom.notes[0].second == "a_dominates");
}

TEST_CASE("CSV bytes do not depend on threads or repetition") {
  const std::string text = "thresholds.grid = -10:40:5 dB\nmc.trials = 3000\nmc.seed = 42\nnetwork.cell_radius = 200";
  Scenario a = parse_scenario(text);
  const std::string first = run_scenario(a).csv;
  CHECK(run_scenario(a).csv == first);
  a.mc.threads = 5;
  CHECK(run_scenario(a).csv == first);
  a.mc.seed = 43;
  CHECK(run_scenario(a).csv != first);
}

TEST_CASE("manifest") {
  const Scenario s = parse_scenario("job = assoc\nmc.seed = 9\nnetwork.cell_radius = 77 m");
  const RunOutput out = run_scenario(s);
  const auto j = nlohmann::json::parse(render_manifest(s, out));
  CHECK(j["job"] == "assoc");
  CHECK(j["seed"] == 9);
  CHECK(j["version"] == std::string(kVersion));
  CHECK(j["wall_seconds"].get<double>() >= 0.0);
  CHECK(j["summary"].contains("a_los"));
  CHECK(parse_scenario(j["scenario"].get<std::string>()) == s);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ParseError({"line 1: x"})) == 1);
  CHECK(exit_code_for(UsageError("x")) == 1);
  CHECK(exit_code_for(DomainError("x")) == 1);
  CHECK(exit_code_for(ResourceError("x")) == 1);
  CHECK(exit_code_for(ConvergenceError("x", 0.0, 1.0)) == 2);
  CHECK(exit_code_for(DivergenceError("x")) == 2);
  CHECK(exit_code_for(InfiniteMeanCount("x")) == 2);
}
