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

#include "mmwcov/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mmwcov/simd/kernels.hpp"

namespace mmwcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1 - e^-y (1 + y), the scaled LOS moment of the exponential law.
double exp_moment(double y) {
  if (y < 0.5) {
    double term = -y;  // (-y)^1 / 1!
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      term *= -y / k;
      sum += (k - 1) * term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return -std::expm1(-y) - y * std::exp(-y);
}

// y^2/2 - exp_moment(y), the scaled NLOS moment.
double exp_moment_complement(double y) {
  if (y < 0.5) {
    double term = y * y / 2.0;  // y^2 / 2!
    double sum = 0.0;
    for (int k = 3; k < 40; ++k) {
      term *= -y / k;
      sum -= (k - 1) * term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 0.5 * y * y - exp_moment(y);
}

// Integral of (c0 + c1 t) t over [u, v].
double linear_moment(double c0, double c1, double u, double v) {
  return c0 * (v * v - u * u) / 2.0 + c1 * (v * v * v - u * u * u) / 3.0;
}

double tab_moment(const TabulatedLos& tab, double x, bool los) {
  const auto& r = tab.radius;
  const auto& p = tab.prob;
  auto q = [los](double v) { return los ? v : 1.0 - v; };
  double sum = 0.0;
  const double head = std::min(x, r.front());
  if (head > 0.0) sum += linear_moment(q(p.front()), 0.0, 0.0, head);
  for (std::size_t i = 0; i + 1 < r.size() && r[i] < x; ++i) {
    const double u = r[i];
    const double v = std::min(x, r[i + 1]);
    const double slope = (p[i + 1] - p[i]) / (r[i + 1] - r[i]);
    const double c1 = los ? slope : -slope;
    const double c0 = q(p[i]) - c1 * r[i];
    sum += linear_moment(c0, c1, u, v);
  }
  if (x > r.back()) sum += linear_moment(q(p.back()), 0.0, r.back(), x);
  return sum;
}

void check_radius(double r) {
  if (!(r >= 0.0)) throw DomainError("LOS probability: distance must be >= 0");
}

}  // namespace

std::string_view tier_name(Tier t) noexcept { return t == Tier::los ? "LOS" : "NLOS"; }

LosModel LosModel::exponential(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("exponential LOS law: beta must be > 0");
  return LosModel(ExponentialLos{beta});
}

LosModel LosModel::ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball LOS law: radius must be > 0");
  return LosModel(BallLos{radius});
}

LosModel LosModel::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw DomainError("tabulated LOS law: needs at least one sample");
  TabulatedLos tab;
  std::ostringstream bad;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [r, p] = samples[i];
    if (!(r >= 0.0) || !std::isfinite(r)) bad << " radius[" << i << "] must be finite and >= 0;";
    if (!(p >= 0.0 && p <= 1.0)) bad << " prob[" << i << "] must lie in [0, 1];";
    if (i > 0 && !(r > samples[i - 1].first)) bad << " radii must be strictly increasing at " << i << ";";
    if (i > 0 && p > samples[i - 1].second) bad << " prob must be non-increasing at " << i << ";";
    tab.radius.push_back(r);
    tab.prob.push_back(p);
  }
  if (!bad.str().empty()) throw DomainError("tabulated LOS law:" + bad.str());
  return LosModel(std::move(tab));
}

double LosModel::probability(double r) const {
  check_radius(r);
  if (const auto* e = std::get_if<ExponentialLos>(&v_)) return std::exp(-e->beta * r);
  if (const auto* b = std::get_if<BallLos>(&v_)) return r < b->radius ? 1.0 : 0.0;
  const auto& tab = std::get<TabulatedLos>(v_);
  const auto& rs = tab.radius;
  if (r <= rs.front()) return tab.prob.front();
  if (r >= rs.back()) return tab.prob.back();
  const auto it = std::upper_bound(rs.begin(), rs.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - rs.begin()) - 1;
  const double w = (r - rs[i]) / (rs[i + 1] - rs[i]);
  return tab.prob[i] + w * (tab.prob[i + 1] - tab.prob[i]);
}

void LosModel::probability(std::span<const double> r, std::span<double> out) const {
  if (const auto* e = std::get_if<ExponentialLos>(&v_)) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      check_radius(r[i]);
      out[i] = -e->beta * r[i];
    }
    simd::exp(out.first(r.size()), out);
    return;
  }
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = probability(r[i]);
}

double LosModel::los_moment(double x) const {
  check_radius(x);
  if (const auto* e = std::get_if<ExponentialLos>(&v_)) {
    if (x == kInf) return 1.0 / (e->beta * e->beta);
    return exp_moment(e->beta * x) / (e->beta * e->beta);
  }
  if (const auto* b = std::get_if<BallLos>(&v_)) {
    const double m = std::min(x, b->radius);
    return m * m / 2.0;
  }
  const auto& tab = std::get<TabulatedLos>(v_);
  if (x == kInf) return tab.prob.back() > 0.0 ? kInf : tab_moment(tab, tab.radius.back(), true);
  return tab_moment(tab, x, true);
}

double LosModel::nlos_moment(double x) const {
  check_radius(x);
  if (const auto* tab = std::get_if<TabulatedLos>(&v_); tab && x == kInf) {
    return tab->prob.back() < 1.0 ? kInf : tab_moment(*tab, tab->radius.back(), false);
  }
  if (x == kInf) return kInf;
  if (const auto* e = std::get_if<ExponentialLos>(&v_)) {
    return exp_moment_complement(e->beta * x) / (e->beta * e->beta);
  }
  if (const auto* b = std::get_if<BallLos>(&v_)) {
    return x <= b->radius ? 0.0 : (x - b->radius) * (x + b->radius) / 2.0;
  }
  return tab_moment(std::get<TabulatedLos>(v_), x, false);
}

double LosModel::los_moment_total() const { return los_moment(kInf); }

std::vector<double> LosModel::breakpoints() const {
  if (std::holds_alternative<ExponentialLos>(v_)) return {};
  if (const auto* b = std::get_if<BallLos>(&v_)) return {b->radius};
  std::vector<double> out;
  for (double r : std::get<TabulatedLos>(v_).radius) {
    if (r > 0.0) out.push_back(r);
  }
  return out;
}

double LosModel::support_end() const {
  if (std::holds_alternative<ExponentialLos>(v_)) return kInf;
  if (const auto* b = std::get_if<BallLos>(&v_)) return b->radius;
  const auto& tab = std::get<TabulatedLos>(v_);
  if (tab.prob.back() > 0.0) return kInf;
  for (std::size_t i = 0; i < tab.prob.size(); ++i) {
    if (tab.prob[i] == 0.0) return i == 0 ? 0.0 : tab.radius[i];
  }
  return kInf;
}

double LosModel::full_los_end() const {
  if (std::holds_alternative<ExponentialLos>(v_)) return 0.0;
  if (const auto* b = std::get_if<BallLos>(&v_)) return b->radius;
  const auto& tab = std::get<TabulatedLos>(v_);
  if (tab.prob.front() < 1.0) return 0.0;
  if (tab.prob.back() == 1.0) return kInf;
  double end = tab.radius.front();
  for (std::size_t i = 0; i < tab.prob.size() && tab.prob[i] == 1.0; ++i) end = tab.radius[i];
  return end;
}

double SectoredAntenna::gain(double phi) const {
  double w = std::remainder(phi, kTwoPi);
  if (w == -std::numbers::pi) w = std::numbers::pi;
  return std::abs(w) <= beamwidth / 2.0 ? main_gain : side_gain;
}

void SectoredAntenna::validate(const std::string& who, std::vector<std::string>& problems) const {
  if (!(side_gain > 0.0) || !std::isfinite(side_gain)) problems.push_back(who + ": side-lobe gain must be > 0");
  if (!(main_gain >= side_gain) || !std::isfinite(main_gain)) {
    problems.push_back(who + ": main-lobe gain must be >= side-lobe gain");
  }
  if (!(beamwidth > 0.0 && beamwidth <= kTwoPi)) problems.push_back(who + ": beamwidth must lie in (0, 2 pi]");
}

void NetworkConfig::validate() const {
  std::vector<std::string> problems;
  if (!(bs_density > 0.0) || !std::isfinite(bs_density)) problems.push_back("density must be > 0");
  if (!(blockage_fraction >= 0.0 && blockage_fraction < 1.0)) {
    problems.push_back("blockage fraction must lie in [0, 1)");
  }
  const auto& pl = pathloss;
  if (!(pl.alpha_los > 0.0) || !std::isfinite(pl.alpha_los)) problems.push_back("LOS path-loss exponent must be > 0");
  if (!(pl.alpha_nlos > 0.0) || !std::isfinite(pl.alpha_nlos)) problems.push_back("NLOS path-loss exponent must be > 0");
  if (!(pl.intercept_los > 0.0) || !std::isfinite(pl.intercept_los)) problems.push_back("LOS intercept must be > 0");
  if (!(pl.intercept_nlos > 0.0) || !std::isfinite(pl.intercept_nlos)) problems.push_back("NLOS intercept must be > 0");
  if (fading.n_los < 1) problems.push_back("LOS Nakagami parameter must be a positive integer");
  if (fading.n_nlos < 1) problems.push_back("NLOS Nakagami parameter must be a positive integer");
  tx_antenna.validate("tx antenna", problems);
  rx_antenna.validate("rx antenna", problems);
  if (!(tx_power > 0.0) || !std::isfinite(tx_power)) problems.push_back("transmit power must be > 0");
  if (!(noise_norm >= 0.0) || !std::isfinite(noise_norm)) problems.push_back("normalized noise must be >= 0");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) problems.push_back("bandwidth must be > 0");
  if (!(sinr_cap > 0.0) || !std::isfinite(sinr_cap)) problems.push_back("SINR cap must be > 0");
  if (problems.empty()) return;
  std::string msg = "invalid network config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw DomainError(msg);
}

NetworkConfig NetworkConfig::reference() {
  NetworkConfig c;
  c.bs_density = density_from_cell_radius(100.0);
  c.los = LosModel::exponential(1.0 / 141.4);
  const double g = free_space_intercept(28e9);
  c.pathloss = PathLossParams{2.0, 4.0, g, g};
  c.fading = FadingParams{3, 2};
  c.tx_antenna = SectoredAntenna{db_to_linear(20.0), db_to_linear(-10.0), 30.0 * std::numbers::pi / 180.0};
  c.rx_antenna = SectoredAntenna{db_to_linear(10.0), db_to_linear(-10.0), 90.0 * std::numbers::pi / 180.0};
  c.tx_power = 1.0;
  c.bandwidth = 100e6;
  c.noise_norm = thermal_noise_norm(c.bandwidth, 10.0, 30.0);
  c.sinr_cap = 63.0;
  return c;
}

DirectivityPmf directivity_pmf(const SectoredAntenna& tx, const SectoredAntenna& rx) {
  const double ct = tx.beamwidth / kTwoPi;
  const double cr = rx.beamwidth / kTwoPi;
  DirectivityPmf pmf;
  pmf.a = {rx.main_gain * tx.main_gain, rx.main_gain * tx.side_gain, rx.side_gain * tx.main_gain,
           rx.side_gain * tx.side_gain};
  pmf.b = {cr * ct, cr * (1.0 - ct), (1.0 - cr) * ct, (1.0 - cr) * (1.0 - ct)};
  for (int k = 0; k < 4; ++k) pmf.e[k] = pmf.a[k] / tx.side_gain;
  return pmf;
}

double path_loss(const PathLossParams& pl, double r, bool is_los) {
  if (!(r > 0.0)) throw DomainError("path_loss: distance must be > 0");
  return is_los ? pl.intercept_los * std::pow(r, -pl.alpha_los) : pl.intercept_nlos * std::pow(r, -pl.alpha_nlos);
}

double mean_los_count(const LosModel& los, double density) {
  if (!(density > 0.0)) throw DomainError("mean_los_count: density must be > 0");
  if (const auto* b = std::get_if<BallLos>(&los.kind())) return std::numbers::pi * density * b->radius * b->radius;
  const double m = los.los_moment_total();
  if (!std::isfinite(m)) {
    throw InfiniteMeanCount(
        "infinite mean LOS count: p(r) does not decay to zero; fit the ball by LOS association "
        "probability instead");
  }
  return kTwoPi * density * m;
}

double equivalent_ball_radius_mean(const LosModel& los) {
  if (const auto* b = std::get_if<BallLos>(&los.kind())) return b->radius;
  if (const auto* e = std::get_if<ExponentialLos>(&los.kind())) return std::numbers::sqrt2 / e->beta;
  const double m = los.los_moment_total();
  if (!std::isfinite(m)) {
    throw InfiniteMeanCount(
        "equivalent ball by mean count is undefined: p(r) does not decay to zero; fit the ball by "
        "LOS association probability instead");
  }
  return std::sqrt(2.0 * m);
}

double equivalent_ball_radius_from_assoc(double a_los, double density) {
  if (!(density > 0.0)) throw DomainError("equivalent ball: density must be > 0");
  if (!(a_los >= 0.0 && a_los <= 1.0)) throw DomainError("equivalent ball: LOS association must lie in [0, 1]");
  if (a_los == 1.0) throw DomainError("equivalent ball: LOS association of 1 implies an infinite radius");
  return std::sqrt(-std::log1p(-a_los) / (std::numbers::pi * density));
}

double avg_cell_radius(double density) {
  if (!(density > 0.0)) throw DomainError("avg_cell_radius: density must be > 0");
  return std::sqrt(1.0 / (std::numbers::pi * density));
}

double density_from_cell_radius(double r_c) {
  if (!(r_c > 0.0)) throw DomainError("cell radius must be > 0");
  return 1.0 / (std::numbers::pi * r_c * r_c);
}

double free_space_intercept(double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw DomainError("carrier frequency must be > 0");
  constexpr double kLight = 299792458.0;
  const double g = kLight / (4.0 * std::numbers::pi * carrier_hz);
  return g * g;
}

double thermal_noise_norm(double bandwidth_hz, double noise_figure_db, double tx_power_dbm) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
  const double noise_dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return db_to_linear(noise_dbm - tx_power_dbm);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace mmwcov
