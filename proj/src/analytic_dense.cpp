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
#include <numbers>

#include "mmwcov/analytic.hpp"
#include "summation.hpp"

namespace mmwcov {
namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

QuadratureSettings dense_settings() {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  s.abs_tol = 1e-13;
  return s;
}

void check_dense(double rho, const DirectivityPmf& pmf, double alpha, int n_terms, double threshold) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("dense coverage: rho must be >= 0");
  if (!(alpha > 0.0)) throw DomainError("dense coverage: path-loss exponent must be > 0");
  if (n_terms < 1) throw DomainError("dense coverage: term count must be >= 1");
  if (!(threshold > 0.0)) throw DomainError("dense coverage: threshold must be > 0");
  if (!(pmf.a[0] > 0.0)) throw DomainError("dense coverage: directivity PMF has no main-lobe gain");
}

// rho * sum_l (-1)^(l+1) C(N, l) * integral over [0, 1] of exp(expo(l, t)).
template <typename Exponent>
double alternating_integral(double rho, int n_terms, Exponent expo) {
  NeumaierSum sum;
  for (int l = 1; l <= n_terms; ++l) {
    auto f = [&](std::span<const double> t, std::span<double> out) {
      for (std::size_t j = 0; j < t.size(); ++j) out[j] = std::exp(expo(l, t[j]));
    };
    const double v = integrate(f, 0.0, 1.0, dense_settings()).value;
    sum.add((l % 2 == 1 ? 1.0 : -1.0) * binomial(n_terms, l) * v);
  }
  return std::clamp(rho * sum.value(), 0.0, 1.0);
}

}  // namespace

double coverage_dense_point(double rho, const DirectivityPmf& pmf, double alpha, int n_terms,
                            double threshold) {
  check_dense(rho, pmf, alpha, n_terms, threshold);
  if (rho == 0.0) return 0.0;
  const double eta_n = eta(n_terms);
  const double s = -2.0 / alpha;
  auto expo = [&](int l, double t) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (pmf.b[k] == 0.0) continue;
      const double c = l * eta_n * threshold * pmf.a[k] / pmf.a[0];
      const double lo = c * std::pow(t, alpha / 2.0);
      double term;
      if (lo < 1e-200) {
        term = alpha / 2.0;  // t c^(2/alpha) Gamma(s; c t^(alpha/2), c) -> alpha/2 as t -> 0
      } else {
        term = t * std::pow(c, 2.0 / alpha) * incomplete_gamma(s, lo, c);
      }
      acc += pmf.b[k] * term;
    }
    return (2.0 / alpha) * rho * acc - rho;
  };
  return alternating_integral(rho, n_terms, expo);
}

CoverageCurve coverage_dense(double rho, const DirectivityPmf& pmf, double alpha, int n_terms,
                             std::span<const double> thresholds) {
  CoverageCurve curve;
  curve.provenance = Provenance::analytic_dense;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) curve.probabilities.push_back(coverage_dense_point(rho, pmf, alpha, n_terms, t));
  curve.validate();
  return curve;
}

double coverage_dense_alpha2_point(double rho, const DirectivityPmf& pmf, int n_terms, double threshold,
                                   double mu) {
  check_dense(rho, pmf, 2.0, n_terms, threshold);
  if (!(mu > 0.0)) throw DomainError("dense coverage: mu must be > 0");
  if (rho == 0.0) return 0.0;
  const double eta_n = eta(n_terms);
  auto expo = [&](int l, double t) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (pmf.b[k] == 0.0) continue;
      const double c = l * eta_n * threshold * pmf.a[k] / pmf.a[0];
      const double ratio = std::log(-std::expm1(-mu * c * t)) - std::log(-std::expm1(-mu * c));
      acc += pmf.b[k] * (std::exp(-c * t) - t * std::exp(-c) + c * t * ratio);
    }
    return rho * acc - rho;
  };
  return alternating_integral(rho, n_terms, expo);
}

CoverageCurve coverage_dense_alpha2(double rho, const DirectivityPmf& pmf, int n_terms,
                                    std::span<const double> thresholds, double mu) {
  CoverageCurve curve;
  curve.provenance = Provenance::analytic_dense;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) curve.probabilities.push_back(coverage_dense_alpha2_point(rho, pmf, n_terms, t, mu));
  curve.validate();
  return curve;
}

double asymptotic_lower_bound(double alpha, double threshold) {
  if (!(threshold > 1.0)) throw DomainError("asymptotic bound: threshold must be > 1");
  if (!(alpha > 0.0)) throw DomainError("asymptotic bound: path-loss exponent must be > 0");
  if (alpha <= 2.0) return 0.0;
  const double v = alpha * std::pow(threshold, -2.0 / alpha) / (2.0 * std::numbers::pi * std::sin(2.0 * std::numbers::pi / alpha));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace mmwcov
