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

#include "mmwcov/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mmwcov/analytic.hpp"
#include "mmwcov/error.hpp"
#include "mmwcov/montecarlo.hpp"
#include "mmwcov/simd/kernels.hpp"

namespace mmwcov {
namespace {

#if defined(__clang__)
constexpr const char* kCompiler = "clang " __clang_version__;
#elif defined(__GNUC__)
constexpr const char* kCompiler = "gcc " __VERSION__;
#else
constexpr const char* kCompiler = "unknown";
#endif

constexpr std::uint64_t kValidateTrials = 10000;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) { row_strings(header); }

  void header_extend(std::initializer_list<std::string_view> more) {
    // Only valid before any data row.
    text_.pop_back();
    for (auto h : more) text_ += "," + std::string(h);
    text_ += "\n";
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((text_ += (first ? "" : ","), text_ += cell(cells), first = false), ...);
    text_ += "\n";
  }

  void row_vec(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
  }

  std::string take() { return std::move(text_); }

 private:
  void row_strings(std::initializer_list<std::string_view> cells) {
    bool first = true;
    for (auto c : cells) {
      text_ += (first ? "" : ",") + std::string(c);
      first = false;
    }
    text_ += "\n";
  }
  static std::string cell(double v) { return num(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }

  std::string text_;
};

McSettings mc_settings(const Scenario& s, std::uint64_t fallback_trials) {
  McSettings m = s.mc;
  if (m.n_trials == 0) m.n_trials = fallback_trials;
  return m;
}

double dense_alpha(const Scenario& s) {
  return s.dense_alpha > 0.0 ? s.dense_alpha : s.network.pathloss.alpha_los;
}

std::vector<double> rho_values(const Scenario& s) {
  if (!s.rho.empty()) return s.rho;
  return {mean_los_count(s.network.los, s.network.bs_density)};
}

// Network whose dense-mode simulation has mean LOS count rho.
NetworkConfig dense_network(const Scenario& s, double rho) {
  NetworkConfig c = s.network;
  c.pathloss.alpha_los = dense_alpha(s);
  const double r = dense_ball_radius(c);
  c.bs_density = rho / (std::numbers::pi * r * r);
  return c;
}

McSettings dense_mc(const Scenario& s) {
  McSettings m = s.mc;
  m.dense_mode = true;
  return m;
}

void run_coverage(const Scenario& s, RunOutput& out, bool validate) {
  const GeneralNetwork net(s.network);
  const bool with_mc = validate || s.mc.n_trials > 0;
  Csv csv{"threshold_db", "threshold", "p_cov_analytic"};
  McCoverage mc;
  if (with_mc) {
    csv.header_extend({"p_cov_mc", "mc_stderr"});
    mc = empirical_coverage(s.network, mc_settings(s, kValidateTrials), s.thresholds);
  }
  double max_gap = 0.0;
  double at = s.thresholds.front();
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    const double t = s.thresholds[i];
    const double p = net.coverage(t);
    if (with_mc) {
      const double gap = std::abs(p - mc.curve.probabilities[i]);
      if (gap > max_gap) {
        max_gap = gap;
        at = t;
      }
      csv.row(linear_to_db(t), t, p, mc.curve.probabilities[i], mc.curve.std_error[i]);
    } else {
      csv.row(linear_to_db(t), t, p);
    }
  }
  out.csv = csv.take();
  out.metrics.emplace_back("a_los", net.assoc().a_los);
  if (with_mc) {
    out.metrics.emplace_back("max_abs_gap", max_gap);
    out.metrics.emplace_back("max_abs_gap_threshold_db", linear_to_db(at));
    out.metrics.emplace_back("mc_trials", static_cast<double>(mc_settings(s, kValidateTrials).n_trials));
  }
}

void run_rate(const Scenario& s, RunOutput& out) {
  const NetworkConfig& n = s.network;
  const bool with_mc = s.mc.n_trials > 0;
  Csv csv{"rho", "spectral_efficiency", "rate_bps"};
  if (with_mc) csv.header_extend({"se_mc", "se_mc_stderr"});
  if (s.rate_dense) {
    const DirectivityPmf pmf = directivity_pmf(n.tx_antenna, n.rx_antenna);
    const double alpha = dense_alpha(s);
    for (double rho : rho_values(s)) {
      const double se = avg_rate(
          [&](double t) { return coverage_dense_point(rho, pmf, alpha, s.dense_terms, t); }, 1.0, n.sinr_cap);
      if (with_mc) {
        const McCoverage mc = empirical_coverage(dense_network(s, rho), dense_mc(s), s.thresholds);
        csv.row(rho, se, se * n.bandwidth, mc.mean_spectral_efficiency, mc.spectral_efficiency_se);
      } else {
        csv.row(rho, se, se * n.bandwidth);
      }
    }
  } else {
    const double rho = mean_los_count(n.los, n.bs_density);
    const double rate = avg_rate(n);
    if (with_mc) {
      const McCoverage mc = empirical_coverage(n, s.mc, s.thresholds);
      csv.row(rho, rate / n.bandwidth, rate, mc.mean_spectral_efficiency, mc.spectral_efficiency_se);
    } else {
      csv.row(rho, rate / n.bandwidth, rate);
    }
  }
  out.csv = csv.take();
}

void run_assoc(const Scenario& s, RunOutput& out) {
  const NetworkConfig& n = s.network;
  const AssocReport a = assoc_probabilities(n);
  const double rho = mean_los_count(n.los, n.bs_density);
  Csv csv{"quantity", "analytic", "mc", "mc_stderr"};
  if (s.mc.n_trials > 0) {
    const AssocEstimate e = empirical_association(n, s.mc);
    const double trials = static_cast<double>(e.n_trials);
    auto se = [trials](double p) { return std::sqrt(p * (1.0 - p) / trials); };
    csv.row("a_los", a.a_los, e.report.a_los, e.a_los_se);
    csv.row("a_nlos", a.a_nlos, e.report.a_nlos, se(e.report.a_nlos));
    csv.row("b_los", a.b_los, e.report.b_los, se(e.report.b_los));
    csv.row("b_nlos", a.b_nlos, e.report.b_nlos, se(e.report.b_nlos));
    csv.row("mean_los_count", rho, e.mean_los_count, e.mean_los_count_se);
    out.metrics.emplace_back("a_los_gap_in_se", std::abs(a.a_los - e.report.a_los) / e.a_los_se);
  } else {
    csv.row("a_los", a.a_los, "", "");
    csv.row("a_nlos", a.a_nlos, "", "");
    csv.row("b_los", a.b_los, "", "");
    csv.row("b_nlos", a.b_nlos, "", "");
    csv.row("mean_los_count", rho, "", "");
  }
  csv.row("ball_radius_mean", equivalent_ball_radius_mean(n.los), "", "");
  csv.row("ball_radius_assoc", equivalent_ball_radius_assoc(n), "", "");
  out.csv = csv.take();
  out.metrics.emplace_back("a_los", a.a_los);
}

void run_dense(const Scenario& s, RunOutput& out) {
  const NetworkConfig& n = s.network;
  const DirectivityPmf pmf = directivity_pmf(n.tx_antenna, n.rx_antenna);
  const double alpha = dense_alpha(s);
  const bool closed_form = alpha == 2.0;
  const bool with_mc = s.mc.n_trials > 0;
  const double mu = s.dense_mu > 0.0 ? s.dense_mu : kDefaultMu;
  Csv csv{"rho", "threshold_db", "threshold", "p_cov_dense"};
  if (closed_form) csv.header_extend({"p_cov_alpha2"});
  if (with_mc) csv.header_extend({"p_cov_mc", "mc_stderr"});
  for (double rho : rho_values(s)) {
    const CoverageCurve d = coverage_dense(rho, pmf, alpha, s.dense_terms, s.thresholds);
    CoverageCurve a2;
    if (closed_form) a2 = coverage_dense_alpha2(rho, pmf, s.dense_terms, s.thresholds, mu);
    McCoverage mc;
    if (with_mc) mc = empirical_coverage(dense_network(s, rho), dense_mc(s), s.thresholds);
    for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
      const double t = s.thresholds[i];
      std::vector<std::string> cells{num(rho), num(linear_to_db(t)), num(t), num(d.probabilities[i])};
      if (closed_form) cells.push_back(num(a2.probabilities[i]));
      if (with_mc) {
        cells.push_back(num(mc.curve.probabilities[i]));
        cells.push_back(num(mc.curve.std_error[i]));
      }
      csv.row_vec(cells);
    }
  }
  out.csv = csv.take();
}

void run_sweep(const Scenario& s, RunOutput& out) {
  const bool with_mc = s.mc.n_trials > 0;
  const double t = s.sweep_threshold;
  const std::vector<double> one{t};
  double best_x = 0.0;
  double best_p = -1.0;
  if (s.sweep_var == SweepVar::rho) {
    const NetworkConfig& n = s.network;
    const DirectivityPmf pmf = directivity_pmf(n.tx_antenna, n.rx_antenna);
    const double alpha = dense_alpha(s);
    Csv csv{"rho", "p_cov_dense"};
    if (with_mc) csv.header_extend({"p_cov_mc", "mc_stderr"});
    for (double rho : s.sweep_grid) {
      const double p = coverage_dense_point(rho, pmf, alpha, s.dense_terms, t);
      if (p > best_p) {
        best_p = p;
        best_x = rho;
      }
      if (with_mc) {
        const McCoverage mc = empirical_coverage(dense_network(s, rho), dense_mc(s), one);
        csv.row(rho, p, mc.curve.probabilities[0], mc.curve.std_error[0]);
      } else {
        csv.row(rho, p);
      }
    }
    out.csv = csv.take();
    out.metrics.emplace_back("argmax_rho", best_x);
  } else {
    Csv csv{"cell_radius_m", "p_cov_analytic", "a_los"};
    if (with_mc) csv.header_extend({"p_cov_mc", "mc_stderr"});
    for (double rc : s.sweep_grid) {
      NetworkConfig n = s.network;
      n.bs_density = density_from_cell_radius(rc);
      const GeneralNetwork g(n);
      const double p = g.coverage(t);
      if (p > best_p) {
        best_p = p;
        best_x = rc;
      }
      if (with_mc) {
        const McCoverage mc = empirical_coverage(n, s.mc, one);
        csv.row(rc, p, g.assoc().a_los, mc.curve.probabilities[0], mc.curve.std_error[0]);
      } else {
        csv.row(rc, p, g.assoc().a_los);
      }
    }
    out.csv = csv.take();
    out.metrics.emplace_back("argmax_cell_radius_m", best_x);
  }
  out.metrics.emplace_back("max_p_cov", best_p);
}

void run_dominance(const Scenario& s, RunOutput& out) {
  NetworkConfig b = s.network;
  b.tx_antenna = s.dominance_b_tx;
  b.rx_antenna = s.dominance_b_rx;
  const McSettings m = mc_settings(s, kValidateTrials);
  const DominanceResult r = dominance_check(s.network, b, m, s.thresholds);
  Csv csv{"threshold_db", "threshold", "p_a", "p_b", "diff", "diff_stderr"};
  for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
    const double t = s.thresholds[i];
    csv.row(linear_to_db(t), t, r.a.probabilities[i], r.b.probabilities[i], r.difference[i], r.difference_se[i]);
  }
  out.csv = csv.take();
  out.notes.emplace_back("verdict", std::string(verdict_name(r.verdict)));
  out.metrics.emplace_back("trials", static_cast<double>(r.n_trials));
  out.metrics.emplace_back("trials_a_not_worse", static_cast<double>(r.trials_a_not_worse));
}

}  // namespace

RunOutput run_scenario(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  switch (scenario.job) {
    case Job::coverage: run_coverage(scenario, out, false); break;
    case Job::validate: run_coverage(scenario, out, true); break;
    case Job::rate: run_rate(scenario, out); break;
    case Job::assoc: run_assoc(scenario, out); break;
    case Job::dense: run_dense(scenario, out); break;
    case Job::sweep: run_sweep(scenario, out); break;
    case Job::dominance: run_dominance(scenario, out); break;
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string render_manifest(const Scenario& scenario, const RunOutput& out) {
  nlohmann::ordered_json j;
  j["tool"] = "mmwcov";
  j["version"] = kVersion;
  j["job"] = job_name(scenario.job);
  j["scenario"] = serialize_scenario(scenario);
  j["seed"] = scenario.mc.seed;
  j["mc_trials"] = scenario.mc.n_trials;
  j["threads"] = scenario.mc.threads;
  j["isa"] = simd::isa_name(simd::active_isa());
  j["compiler"] = kCompiler;
  j["wall_seconds"] = out.wall_seconds;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : out.metrics) summary[k] = v;
  for (const auto& [k, v] : out.notes) summary[k] = v;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const NumericalError*>(&e)) return 2;
  return 1;
}

}  // namespace mmwcov
