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

// Executes a parsed scenario and renders its CSV and JSON manifest.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmwcov/scenario.hpp"

namespace mmwcov {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunOutput {
  std::string csv;
  std::vector<std::pair<std::string, double>> metrics;  // job summary, e.g. max_abs_gap
  std::vector<std::pair<std::string, std::string>> notes;
  double wall_seconds = 0.0;
};

RunOutput run_scenario(const Scenario& scenario);

std::string render_manifest(const Scenario& scenario, const RunOutput& out);

// 0 ok, 1 usage/parse/domain/resource, 2 numerical failure.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace mmwcov
