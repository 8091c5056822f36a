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

// Physical model: LOS probability laws, sectored antennas, path loss,
// interferer directivity distribution and equivalent LOS balls.

#include <array>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmwcov/error.hpp"

namespace mmwcov {

enum class Tier { los, nlos };

std::string_view tier_name(Tier t) noexcept;

struct ExponentialLos {
  double beta;  // 1/m
  bool operator==(const ExponentialLos&) const = default;
};

struct BallLos {
  double radius;  // m
  bool operator==(const BallLos&) const = default;
};

/// Piecewise-linear p(r) through the samples; the end values are held outside
/// the table.
struct TabulatedLos {
  std::vector<double> radius;
  std::vector<double> prob;
  bool operator==(const TabulatedLos&) const = default;
};

/// Probability p(r) that a link of length r is unobstructed.
class LosModel {
 public:
  using Variant = std::variant<ExponentialLos, BallLos, TabulatedLos>;

  static LosModel exponential(double beta);
  static LosModel ball(double radius);
  static LosModel tabulated(std::vector<std::pair<double, double>> samples);

  const Variant& kind() const noexcept { return v_; }

  /// p(r). Throws DomainError for r < 0 or NaN.
  double probability(double r) const;
  void probability(std::span<const double> r, std::span<double> out) const;

  /// Integral of p(t) t over [0, x].
  double los_moment(double x) const;
  /// Integral of (1 - p(t)) t over [0, x].
  double nlos_moment(double x) const;
  /// los_moment(inf); +inf when p does not decay to zero.
  double los_moment_total() const;

  /// Radii where p has a kink or jump.
  std::vector<double> breakpoints() const;
  /// Smallest r with p = 0 on [r, inf), or +inf.
  double support_end() const;
  /// Largest r with p = 1 on [0, r], or 0.
  double full_los_end() const;

  bool operator==(const LosModel&) const = default;

 private:
  explicit LosModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Gain M inside the main lobe |phi| <= theta/2 (boundary included), m elsewhere.
struct SectoredAntenna {
  double main_gain = 1.0;
  double side_gain = 1.0;
  double beamwidth = 2.0 * 3.14159265358979323846;  // rad

  double front_back_ratio() const { return main_gain / side_gain; }
  /// phi is wrapped into (-pi, pi] first.
  double gain(double phi) const;
  void validate(const std::string& who, std::vector<std::string>& problems) const;
  bool operator==(const SectoredAntenna&) const = default;
};

struct PathLossParams {
  double alpha_los = 2.0;
  double alpha_nlos = 4.0;
  double intercept_los = 1.0;
  double intercept_nlos = 1.0;

  double alpha(Tier t) const { return t == Tier::los ? alpha_los : alpha_nlos; }
  double intercept(Tier t) const { return t == Tier::los ? intercept_los : intercept_nlos; }
  bool operator==(const PathLossParams&) const = default;
};

struct FadingParams {
  int n_los = 1;
  int n_nlos = 1;

  int shape(Tier t) const { return t == Tier::los ? n_los : n_nlos; }
  bool operator==(const FadingParams&) const = default;
};

struct NetworkConfig {
  double bs_density = 1.0 / (3.14159265358979323846 * 100.0 * 100.0);  // 1/m^2, already thinned
  double blockage_fraction = 0.0;
  LosModel los = LosModel::exponential(1.0 / 141.4);
  PathLossParams pathloss;
  FadingParams fading;
  SectoredAntenna tx_antenna;
  SectoredAntenna rx_antenna;
  double tx_power = 1.0;    // W
  double noise_norm = 0.0;  // noise power / tx power
  double bandwidth = 100e6; // Hz
  double sinr_cap = 63.0;

  /// Throws DomainError listing every violated invariant.
  void validate() const;

  /// 28 GHz, 100 MHz, alpha 2/4, Nakagami 3/2, exponential LOS with 1/beta =
  /// 141.4 m, r_c = 100 m, tx G(20 dB, -10 dB, 30 deg), rx G(10 dB, -10 dB,
  /// 90 deg), free-space intercepts, P_t = 30 dBm, 10 dB noise figure.
  static NetworkConfig reference();
  bool operator==(const NetworkConfig&) const = default;
};

/// Interferer directivity D = a[k] with probability b[k]; e[k] = a[k] / m_t.
struct DirectivityPmf {
  std::array<double, 4> a{};
  std::array<double, 4> b{};
  std::array<double, 4> e{};
};

DirectivityPmf directivity_pmf(const SectoredAntenna& tx, const SectoredAntenna& rx);

/// C r^-alpha of the given tier. Throws DomainError for r <= 0.
double path_loss(const PathLossParams& pl, double r, bool is_los);

/// Mean number of LOS base stations, 2 pi lambda * integral of p(t) t.
/// Throws InfiniteMeanCount when that integral diverges.
double mean_los_count(const LosModel& los, double density);

/// Ball radius with the same mean LOS count.
double equivalent_ball_radius_mean(const LosModel& los);

/// Ball radius with LOS association probability a_los at the given density:
/// sqrt(-ln(1 - a_los) / (pi lambda)).
double equivalent_ball_radius_from_assoc(double a_los, double density);

/// sqrt(1 / (pi lambda)).
double avg_cell_radius(double density);
double density_from_cell_radius(double r_c);

/// (c / (4 pi f))^2: free-space gain at 1 m.
double free_space_intercept(double carrier_hz);

/// kT B F / P_t with kT = -174 dBm/Hz.
double thermal_noise_norm(double bandwidth_hz, double noise_figure_db, double tx_power_dbm);

double db_to_linear(double db);
double linear_to_db(double lin);

}  // namespace mmwcov
