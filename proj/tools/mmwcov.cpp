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

// mmwcov: run coverage scenarios from the command line.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mmwcov/error.hpp"
#include "mmwcov/runner.hpp"
#include "mmwcov/scenario.hpp"
#include "mmwcov/simd/kernels.hpp"

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mmwcov::UsageError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mmwcov::ResourceError("cannot write '" + path + "'");
  out << text;
  if (!out) throw mmwcov::ResourceError("write to '" + path + "' failed");
}

mmwcov::simd::Isa parse_isa(const std::string& name) {
  if (name == "scalar") return mmwcov::simd::Isa::scalar;
  if (name == "avx2") return mmwcov::simd::Isa::avx2;
  throw mmwcov::UsageError("unknown ISA '" + name + "' (scalar, avx2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave cellular SINR and rate coverage: analytic and Monte-Carlo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mmwcov::kVersion));

  std::string file;
  std::vector<std::string> sets;
  std::string csv_path;
  std::string manifest_path;
  unsigned threads = 0;
  std::string isa;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run a scenario and write its CSV and manifest");
  run->add_option("scenario", file, "scenario file ('-' for stdin)")->required();
  run->add_option("--set", sets, "override a key, e.g. --set mc.trials=1000");
  run->add_option("--csv", csv_path, "CSV output path ('-' for stdout); overrides output.csv");
  run->add_option("--manifest", manifest_path, "JSON manifest path; overrides output.manifest");
  run->add_option("--threads", threads, "Monte-Carlo worker threads; overrides mc.threads");
  run->add_option("--isa", isa, "force kernel ISA (scalar, avx2)");
  run->add_flag("-q,--quiet", quiet, "no summary on stderr");

  auto* check = app.add_subcommand("check", "validate a scenario and print its canonical form");
  check->add_option("scenario", file, "scenario file ('-' for stdin)")->required();
  check->add_option("--set", sets, "override a key");

  auto* isa_cmd = app.add_subcommand("isa", "print the supported and active kernel ISAs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (isa_cmd->parsed()) {
      for (auto i : {mmwcov::simd::Isa::scalar, mmwcov::simd::Isa::avx2}) {
        std::cout << mmwcov::simd::isa_name(i) << (mmwcov::simd::isa_supported(i) ? " supported" : " unsupported")
                  << (i == mmwcov::simd::active_isa() ? " (active)" : "") << "\n";
      }
      return 0;
    }
    mmwcov::Scenario sc = mmwcov::parse_scenario(read_file(file), sets);
    if (check->parsed()) {
      std::cout << mmwcov::serialize_scenario(sc);
      return 0;
    }
    if (!isa.empty()) mmwcov::simd::set_active_isa(parse_isa(isa));
    if (threads > 0) sc.mc.threads = threads;
    if (!csv_path.empty()) sc.csv_path = csv_path;
    if (!manifest_path.empty()) sc.manifest_path = manifest_path;

    const mmwcov::RunOutput out = mmwcov::run_scenario(sc);
    write_file(sc.csv_path.empty() ? "-" : sc.csv_path, out.csv);
    if (!sc.manifest_path.empty()) write_file(sc.manifest_path, mmwcov::render_manifest(sc, out));
    if (!quiet) {
      std::cerr << "mmwcov: " << mmwcov::job_name(sc.job) << " done in " << out.wall_seconds << " s";
      for (const auto& [k, v] : out.metrics) std::cerr << ", " << k << "=" << v;
      for (const auto& [k, v] : out.notes) std::cerr << ", " << k << "=" << v;
      std::cerr << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "mmwcov: error: " << e.what() << "\n";
    return mmwcov::exit_code_for(e);
  }
}
