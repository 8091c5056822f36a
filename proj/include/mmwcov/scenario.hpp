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

#pragma once

// Scenario files: a flat `section.key = value` format with unit suffixes.
// See docs/scenario-format.md for the grammar and the key list.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmwcov/model.hpp"
#include "mmwcov/montecarlo.hpp"

namespace mmwcov {

enum class Job { coverage, rate, assoc, dense, sweep, dominance, validate };

std::string_view job_name(Job j) noexcept;

enum class SweepVar { rho, cell_radius };

struct Scenario {
  Job job = Job::coverage;
  NetworkConfig network = NetworkConfig::reference();
  // Inputs kept for the record; their effect is already folded into `network`.
  double carrier_hz = 28e9;
  double tx_power_dbm = 30.0;
  double noise_figure_db = 10.0;

  std::vector<double> thresholds;  // linear
  McSettings mc{0, 0.0, 1, false, 1};

  std::vector<double> rho;  // dense, rate and sweep jobs
  int dense_terms = 5;
  double dense_alpha = 0.0;  // 0: use the LOS path-loss exponent
  double dense_mu = 0.0;     // 0: default constant

  SweepVar sweep_var = SweepVar::rho;
  std::vector<double> sweep_grid;
  double sweep_threshold = 100.0;

  bool rate_dense = false;  // rate job: dense formula over `rho` instead of the general model

  SectoredAntenna dominance_b_tx;
  SectoredAntenna dominance_b_rx;

  std::string csv_path;
  std::string manifest_path;

  bool operator==(const Scenario&) const = default;
};

/// All problems found while parsing, one per line, each with its line number.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses scenario text. `overrides` are extra `key=value` assignments applied
/// after the text (later assignments win). Throws ParseError.
Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides = {});

/// Canonical text: every key, linear units, 17 significant digits.
/// parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace mmwcov
