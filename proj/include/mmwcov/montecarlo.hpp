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

// Monte-Carlo simulation of the network model: the independent oracle for
// every analytical result.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mmwcov/analytic.hpp"
#include "mmwcov/model.hpp"
#include "mmwcov/numerics.hpp"

namespace mmwcov {

struct McSettings {
  std::uint64_t n_trials = 10000;
  /// Simulation disk radius in m; 0 selects default_window_radius().
  double window_radius = 0.0;
  std::uint64_t seed = 1;
  /// LOS ball only, no fading, no noise. A non-ball LOS law is replaced by
  /// the ball with the same mean LOS count.
  bool dense_mode = false;
  /// Worker threads; 0 uses the hardware concurrency. Results do not depend on it.
  unsigned threads = 1;

  bool operator==(const McSettings&) const = default;
};

/// max(10/beta, 5 R_B, 2000 m) in full mode, R_B in dense mode.
double default_window_radius(const NetworkConfig& config, bool dense_mode);

/// The ball used by dense mode for this config.
double dense_ball_radius(const NetworkConfig& config);

/// One sampled base-station field as seen from the user at the origin.
/// Interferer directivity is a function of the two lobe uniforms: the tx
/// (rx) main lobe is hit when lobe_t < theta_t / 2 pi (lobe_r < theta_r / 2 pi).
struct NetworkRealization {
  std::vector<double> radius;  // ascending
  std::vector<double> angle;
  std::vector<std::uint8_t> is_los;
  std::vector<double> fading;
  std::vector<double> lobe_t;
  std::vector<double> lobe_r;
  std::vector<double> directivity;  // for the sampling config's antennas
  double window_radius = 0.0;
  RandomStream stream;
  bool dense = false;

  std::size_t size() const noexcept { return radius.size(); }
};

NetworkRealization sample_realization(const NetworkConfig& config, const McSettings& settings,
                                      std::uint64_t trial_index);

/// SINR of an empty realization. Lies below every positive threshold.
inline constexpr double kNoCoverage = 0.0;

/// SINR at the origin with the strongest-path-gain base station serving.
/// Directivity is re-derived from the lobe uniforms with `config`'s antennas,
/// so one realization can be evaluated under several antenna settings.
/// Returns +infinity when there is neither noise nor interference.
double sinr_sample(const NetworkRealization& real, const NetworkConfig& config);

/// Index of the serving base station, or size() when empty.
std::size_t serving_index(const NetworkRealization& real, const NetworkConfig& config);

struct McCoverage {
  CoverageCurve curve;                // provenance monte_carlo, with std_error
  double mean_spectral_efficiency = 0.0;  // E[log2(1 + min(SINR, T_max))]
  double spectral_efficiency_se = 0.0;
  std::vector<double> samples;        // per-trial SINR when requested
};

McCoverage empirical_coverage(const NetworkConfig& config, const McSettings& settings,
                              std::span<const double> thresholds, bool keep_samples = false);

struct AssocEstimate {
  AssocReport report;  // frequencies: a_* serving tier, b_* tier non-empty
  double no_bs = 0.0;
  double a_los_se = 0.0;
  double mean_los_count = 0.0;
  double mean_los_count_se = 0.0;
  std::uint64_t n_trials = 0;
  std::vector<double> nearest_los;   // per trial with at least one LOS BS
  std::vector<double> nearest_nlos;  // per trial with at least one NLOS BS
  std::vector<double> serving_los;   // per trial served by LOS
  std::vector<double> serving_nlos;  // per trial served by NLOS
};

AssocEstimate empirical_association(const NetworkConfig& config, const McSettings& settings,
                                    bool keep_distances = false);

enum class Verdict { a_dominates, b_dominates, crossing, indistinguishable };

std::string_view verdict_name(Verdict v) noexcept;

struct DominanceResult {
  Verdict verdict = Verdict::indistinguishable;
  CoverageCurve a;
  CoverageCurve b;
  std::vector<double> difference;     // P_a - P_b per threshold
  std::vector<double> difference_se;  // paired standard error
  std::uint64_t n_trials = 0;
  /// Trials with SINR_a >= SINR_b (1 - 1e-12).
  std::uint64_t trials_a_not_worse = 0;
};

/// Coupled comparison: both configs are evaluated on the same realizations.
/// The configs may differ only in their antennas (UsageError otherwise).
DominanceResult dominance_check(const NetworkConfig& a, const NetworkConfig& b, const McSettings& settings,
                                std::span<const double> thresholds);

}  // namespace mmwcov
