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

// Analytical coverage, association and rate for the general blockage model
// and for the dense LOS-ball approximation.

#include <cmath>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "mmwcov/model.hpp"
#include "mmwcov/numerics.hpp"

namespace mmwcov {

enum class Provenance { analytic_general, analytic_dense, monte_carlo };

std::string_view provenance_name(Provenance p) noexcept;

/// Coverage P(SINR > T) sampled at increasing thresholds (linear scale).
struct CoverageCurve {
  std::vector<double> thresholds;
  std::vector<double> probabilities;
  std::vector<double> std_error;  // Monte-Carlo only, else empty
  Provenance provenance = Provenance::analytic_general;

  /// Piecewise linear in ln T between samples, held constant outside.
  /// Exact sample value when T equals a threshold.
  double at(double threshold) const;
  /// Throws DomainError when the curve invariants do not hold.
  void validate() const;
};

struct AssocReport {
  double a_los = 0.0;
  double a_nlos = 0.0;
  double b_los = 0.0;
  double b_nlos = 0.0;
};

/// Evaluator for one network configuration. Construction validates the
/// config and caches derived constants; all methods are const and thread-safe.
class GeneralNetwork {
 public:
  explicit GeneralNetwork(NetworkConfig config, QuadratureSettings outer = default_outer());

  const NetworkConfig& config() const noexcept { return cfg_; }

  /// Probability that at least one base station of the tier exists.
  double tier_exists(Tier t) const;
  /// Density of the distance to the nearest base station of the tier.
  double nearest_pdf(Tier t, double x) const;
  /// Density of the serving distance given association with the tier.
  double serving_pdf(Tier t, double x) const;
  /// Distance in the other tier with the same path loss as x in tier t.
  double equal_loss_distance(Tier t, double x) const;

  const AssocReport& assoc() const noexcept { return assoc_; }
  /// P(SINR > T | serving tier t).
  double coverage_given(Tier t, double threshold) const;
  double coverage(double threshold) const;

  static QuadratureSettings default_outer();
  static QuadratureSettings default_inner();

 private:
  AssocReport compute_assoc() const;
  double coverage_mass(Tier t, double threshold) const;
  double tier_moment(Tier t, double x) const;
  double assoc_density(Tier t, double x) const;
  std::vector<double> outer_breakpoints(Tier t) const;
  double outer_scale() const;
  double interference_exponent(Tier serving, Tier interferer, int n, double threshold, double x) const;

  NetworkConfig cfg_;
  QuadratureSettings outer_;
  QuadratureSettings inner_;
  DirectivityPmf pmf_;
  double two_pi_lambda_;
  double gain_;  // M_r M_t
  AssocReport assoc_;
};

double nearest_pdf(const NetworkConfig& config, Tier tier, double x);
double serving_pdf(const NetworkConfig& config, Tier tier, double x);
AssocReport assoc_probabilities(const NetworkConfig& config);
CoverageCurve coverage_general(const NetworkConfig& config, std::span<const double> thresholds);

/// Ball radius preserving the LOS association probability of `config`.
double equivalent_ball_radius_assoc(const NetworkConfig& config);

/// Dense LOS-ball approximation of the SIR coverage, with n_terms gamma
/// terms in the serving-link bound.
double coverage_dense_point(double rho, const DirectivityPmf& pmf, double alpha_los, int n_terms,
                            double threshold);
CoverageCurve coverage_dense(double rho, const DirectivityPmf& pmf, double alpha_los, int n_terms,
                             std::span<const double> thresholds);

inline const double kDefaultMu = std::exp(kEulerGamma);

/// Closed form of the dense approximation at alpha = 2 using the
/// logarithmic bound on E1 with constant mu.
double coverage_dense_alpha2_point(double rho, const DirectivityPmf& pmf, int n_terms, double threshold,
                                   double mu = kDefaultMu);
CoverageCurve coverage_dense_alpha2(double rho, const DirectivityPmf& pmf, int n_terms,
                                    std::span<const double> thresholds, double mu = kDefaultMu);

/// Limit of the dense SIR coverage as rho grows: 0 for alpha <= 2, else
/// alpha T^(-2/alpha) / (2 pi sin(2 pi / alpha)) clamped to [0, 1]. T > 1.
double asymptotic_lower_bound(double alpha_los, double threshold);

/// Mean rate (bit/s) for a coverage function P_c(T) of linear threshold:
/// W / ln 2 * integral over [0, T_max] of P_c(T) / (1 + T).
double avg_rate(const std::function<double(double)>& coverage, double bandwidth, double sinr_cap);
double avg_rate(const CoverageCurve& curve, double bandwidth, double sinr_cap);
double avg_rate(const NetworkConfig& config);

/// P(rate > gamma) = P_c(2^(gamma/W) - 1), for 0 < gamma < W log2(1 + T_max).
double rate_coverage(const CoverageCurve& curve, double gamma, double bandwidth, double sinr_cap);
double rate_coverage(const NetworkConfig& config, double gamma);

/// Threshold of a rate: 2^(gamma/W) - 1.
double rate_to_threshold(double gamma, double bandwidth);
/// Rate of a threshold: W log2(1 + T).
double threshold_to_rate(double threshold, double bandwidth);

/// lo, lo+step, ..., hi (dB), converted to linear.
std::vector<double> db_grid(double lo_db, double hi_db, double step_db);

}  // namespace mmwcov
