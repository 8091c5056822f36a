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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "mmwcov/analytic.hpp"
#include "mmwcov/simd/kernels.hpp"
#include "summation.hpp"

namespace mmwcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Tier other(Tier t) { return t == Tier::los ? Tier::nlos : Tier::los; }

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::string describe(Tier serving, int n, double threshold) {
  std::ostringstream s;
  s << tier_name(serving) << "-serving coverage term n=" << n << " at T=" << threshold << " ("
    << linear_to_db(threshold) << " dB)";
  return s.str();
}

}  // namespace

QuadratureSettings GeneralNetwork::default_outer() {
  QuadratureSettings s;
  s.rel_tol = 1e-9;
  s.abs_tol = 1e-12;
  return s;
}

QuadratureSettings GeneralNetwork::default_inner() {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  s.abs_tol = 1e-13;
  s.max_subdivisions = 2000;
  return s;
}

GeneralNetwork::GeneralNetwork(NetworkConfig config, QuadratureSettings outer)
    : cfg_(std::move(config)), outer_(outer), inner_(default_inner()) {
  cfg_.validate();
  pmf_ = directivity_pmf(cfg_.tx_antenna, cfg_.rx_antenna);
  two_pi_lambda_ = 2.0 * std::numbers::pi * cfg_.bs_density;
  gain_ = cfg_.rx_antenna.main_gain * cfg_.tx_antenna.main_gain;
  assoc_ = compute_assoc();
}

double GeneralNetwork::tier_moment(Tier t, double x) const {
  return t == Tier::los ? cfg_.los.los_moment(x) : cfg_.los.nlos_moment(x);
}

double GeneralNetwork::tier_exists(Tier t) const {
  const double m = tier_moment(t, kInf);
  return std::isinf(m) ? 1.0 : -std::expm1(-two_pi_lambda_ * m);
}

double GeneralNetwork::equal_loss_distance(Tier t, double x) const {
  const auto& pl = cfg_.pathloss;
  if (t == Tier::los) {
    return std::pow(pl.intercept_nlos / pl.intercept_los, 1.0 / pl.alpha_nlos) *
           std::pow(x, pl.alpha_los / pl.alpha_nlos);
  }
  return std::pow(pl.intercept_los / pl.intercept_nlos, 1.0 / pl.alpha_los) *
         std::pow(x, pl.alpha_nlos / pl.alpha_los);
}

double GeneralNetwork::nearest_pdf(Tier t, double x) const {
  if (!(x >= 0.0)) throw DomainError("nearest_pdf: distance must be >= 0");
  const double b = tier_exists(t);
  if (b == 0.0) throw DomainError(std::string("nearest_pdf: the ") + std::string(tier_name(t)) + " tier is empty");
  if (x == 0.0 || std::isinf(x)) return 0.0;
  const double p = cfg_.los.probability(x);
  const double q = t == Tier::los ? p : 1.0 - p;
  if (q == 0.0) return 0.0;
  return two_pi_lambda_ * x * q * std::exp(-two_pi_lambda_ * tier_moment(t, x)) / b;
}

double GeneralNetwork::assoc_density(Tier t, double x) const {
  if (x <= 0.0 || std::isinf(x)) return 0.0;
  const double p = cfg_.los.probability(x);
  const double q = t == Tier::los ? p : 1.0 - p;
  if (q == 0.0) return 0.0;
  const double m = tier_moment(t, x) + tier_moment(other(t), equal_loss_distance(t, x));
  return two_pi_lambda_ * x * q * std::exp(-two_pi_lambda_ * m);
}

std::vector<double> GeneralNetwork::outer_breakpoints(Tier t) const {
  std::vector<double> bp;
  for (double r : cfg_.los.breakpoints()) {
    bp.push_back(r);
    bp.push_back(equal_loss_distance(other(t), r));
  }
  return bp;
}

double GeneralNetwork::outer_scale() const { return avg_cell_radius(cfg_.bs_density); }

AssocReport GeneralNetwork::compute_assoc() const {
  AssocReport rep;
  const auto bp_l = outer_breakpoints(Tier::los);
  const auto bp_n = outer_breakpoints(Tier::nlos);
  auto density = [this](Tier t) {
    return [this, t](std::span<const double> x, std::span<double> out) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = assoc_density(t, x[i]);
    };
  };
  rep.a_los = integrate(density(Tier::los), 0.0, kInf, outer_, bp_l, outer_scale()).value;
  rep.a_nlos = integrate(density(Tier::nlos), 0.0, kInf, outer_, bp_n, outer_scale()).value;
  rep.b_los = tier_exists(Tier::los);
  rep.b_nlos = tier_exists(Tier::nlos);
  return rep;
}

double GeneralNetwork::serving_pdf(Tier t, double x) const {
  if (!(x >= 0.0)) throw DomainError("serving_pdf: distance must be >= 0");
  const double a = t == Tier::los ? assoc_.a_los : assoc_.a_nlos;
  if (a == 0.0) throw DomainError(std::string("serving_pdf: the ") + std::string(tier_name(t)) + " tier never serves");
  return assoc_density(t, x) / a;
}

// 2 pi lambda sum_k b_k integral of F(N_i, s_k t^-alpha_i) q_i(t) t dt over the
// interferer region of tier i when the serving base station of tier s is at x.
double GeneralNetwork::interference_exponent(Tier s, Tier i, int n, double threshold, double x) const {
  const auto& pl = cfg_.pathloss;
  const double eta_s = eta(cfg_.fading.shape(s));
  const int n_i = cfg_.fading.shape(i);
  const double base = n * eta_s * threshold * (pl.intercept(i) / pl.intercept(s)) *
                      std::pow(x, pl.alpha(s)) / n_i;

  simd::InterferenceLaw law;
  law.alpha = pl.alpha(i);
  law.shape = n_i;
  for (int k = 0; k < 4; ++k) {
    law.weight[k] = pmf_.b[k];
    law.scale[k] = base * pmf_.a[k] / gain_;
  }

  double lo = i == s ? x : equal_loss_distance(s, x);
  double hi = kInf;
  if (i == Tier::los) {
    hi = cfg_.los.support_end();
  } else {
    lo = std::max(lo, cfg_.los.full_los_end());
  }
  if (!(lo < hi)) return 0.0;

  if (std::isinf(hi) && law.alpha <= 2.0) {
    // q_i(t) does not vanish at infinity here unless it is the LOS tier of a
    // decaying law; then the integral converges for any exponent.
    const bool decays = i == Tier::los && cfg_.los.los_moment_total() < kInf;
    if (!decays) {
      throw DivergenceError("aggregate " + std::string(tier_name(i)) +
                            " interference is infinite: path-loss exponent <= 2 over an unbounded region");
    }
  }

  const LosModel& los = cfg_.los;
  auto integrand = [&law, &los, i](std::span<const double> t, std::span<double> out) {
    thread_local std::vector<double> p;
    p.resize(t.size());
    simd::nakagami_interference(t, law, out);
    los.probability(t, p);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double q = i == Tier::los ? p[j] : 1.0 - p[j];
      out[j] *= q * t[j];
    }
  };
  const auto bp = los.breakpoints();
  return two_pi_lambda_ * integrate(integrand, lo, hi, inner_, bp, std::max(lo, 1.0)).value;
}

double GeneralNetwork::coverage_mass(Tier t, double threshold) const {
  const double a = t == Tier::los ? assoc_.a_los : assoc_.a_nlos;
  if (a == 0.0) return 0.0;
  if (!(threshold > 0.0)) throw DomainError("coverage: threshold must be > 0");
  const auto& pl = cfg_.pathloss;
  const int shape = cfg_.fading.shape(t);
  const double eta_t = eta(shape);
  const double noise_coef = eta_t * threshold * cfg_.noise_norm / (pl.intercept(t) * gain_);

  auto integrand = [&](std::span<const double> xs, std::span<double> out) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      const double d = assoc_density(t, x);
      if (d == 0.0) {
        out[j] = 0.0;
        continue;
      }
      const double xa = std::pow(x, pl.alpha(t));
      NeumaierSum sum;
      for (int n = 1; n <= shape; ++n) {
        double expo = n * noise_coef * xa;
        try {
          expo += interference_exponent(t, Tier::los, n, threshold, x);
          expo += interference_exponent(t, Tier::nlos, n, threshold, x);
        } catch (const ConvergenceError& e) {
          throw ConvergenceError(describe(t, n, threshold) + ": " + e.what(), e.partial(), e.error_estimate());
        } catch (const DivergenceError& e) {
          throw DivergenceError(describe(t, n, threshold) + ": " + e.what());
        }
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        sum.add(sign * binomial(shape, n) * std::exp(-expo));
      }
      out[j] = sum.value() * d;
    }
  };
  return integrate(integrand, 0.0, kInf, outer_, outer_breakpoints(t), outer_scale()).value;
}

double GeneralNetwork::coverage_given(Tier t, double threshold) const {
  const double a = t == Tier::los ? assoc_.a_los : assoc_.a_nlos;
  if (a == 0.0) throw DomainError(std::string("coverage: the ") + std::string(tier_name(t)) + " tier never serves");
  return std::clamp(coverage_mass(t, threshold) / a, 0.0, 1.0);
}

double GeneralNetwork::coverage(double threshold) const {
  return std::clamp(coverage_mass(Tier::los, threshold) + coverage_mass(Tier::nlos, threshold), 0.0, 1.0);
}

double nearest_pdf(const NetworkConfig& config, Tier tier, double x) {
  return GeneralNetwork(config).nearest_pdf(tier, x);
}

double serving_pdf(const NetworkConfig& config, Tier tier, double x) {
  return GeneralNetwork(config).serving_pdf(tier, x);
}

AssocReport assoc_probabilities(const NetworkConfig& config) { return GeneralNetwork(config).assoc(); }

CoverageCurve coverage_general(const NetworkConfig& config, std::span<const double> thresholds) {
  const GeneralNetwork net(config);
  CoverageCurve curve;
  curve.provenance = Provenance::analytic_general;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) curve.probabilities.push_back(net.coverage(t));
  curve.validate();
  return curve;
}

double equivalent_ball_radius_assoc(const NetworkConfig& config) {
  return equivalent_ball_radius_from_assoc(assoc_probabilities(config).a_los, config.bs_density);
}

}  // namespace mmwcov
