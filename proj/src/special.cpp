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

#include <cmath>
#include <limits>
#include <vector>

#include "mmwcov/numerics.hpp"
#include "mmwcov/simd/kernels.hpp"

namespace mmwcov {
namespace {

// -log(1 - e^-y) without cancellation at either end.
double neg_log1m_exp(double y) {
  return y < std::log(2.0) ? -std::log(-std::expm1(-y)) : -std::log1p(-std::exp(-y));
}

QuadratureSettings gamma_settings() {
  QuadratureSettings s;
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-300;
  return s;
}

}  // namespace

double incomplete_gamma(double s, double a, double b) {
  if (std::isnan(s) || std::isnan(a) || std::isnan(b)) throw DomainError("incomplete_gamma: NaN argument");
  if (a < 0.0) throw DomainError("incomplete_gamma: lower limit must be >= 0");
  if (a > b) throw DomainError("incomplete_gamma: lower limit exceeds upper limit");
  if (a == b) return 0.0;
  if (a == 0.0 && s <= 0.0) {
    throw DivergenceError("incomplete_gamma: integral from 0 diverges for order <= 0");
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (a == 0.0 && b == inf) return std::tgamma(s);

  // With x = e^u the integrand becomes exp(s u - e^u): smooth, no endpoint
  // singularity, and doubly-exponential decay on the right.
  thread_local std::vector<double> scratch;
  auto kernel = [s](bool flip) {
    return [s, flip](std::span<const double> u, std::span<double> out) {
      scratch.resize(u.size());
      std::span<double> eu(scratch.data(), u.size());
      if (flip) {
        for (std::size_t i = 0; i < u.size(); ++i) eu[i] = -u[i];
        simd::exp(eu, eu);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = -s * u[i] - eu[i];
      } else {
        simd::exp(u, eu);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i] - eu[i];
      }
      simd::exp(out, out);
    };
  };
  const QuadratureSettings settings = gamma_settings();
  if (a == 0.0) {
    // Mirror u -> -u so the unbounded side is on the right.
    return integrate(kernel(true), -std::log(b), inf, settings, {}, 1.0 / s).value;
  }
  const double lo = std::log(a);
  if (b == inf) {
    const double peak = s > 0.0 ? std::log(s) : lo;
    const double bp[] = {peak};
    return integrate(kernel(false), lo, inf, settings, bp, 1.0).value;
  }
  const double hi = std::log(b);
  const double bp[] = {s > 0.0 ? std::log(s) : lo};
  return integrate(kernel(false), lo, hi, settings, bp).value;
}

double eta(int n) {
  if (n < 1) throw DomainError("eta: shape must be a positive integer");
  return n * std::exp(-std::lgamma(n + 1.0) / n);
}

double gamma_tail_bound(int n, double gamma) {
  if (n < 1) throw DomainError("gamma_tail_bound: shape must be a positive integer");
  if (!(gamma >= 0.0)) throw DomainError("gamma_tail_bound: threshold must be >= 0");
  return std::pow(-std::expm1(-eta(n) * gamma), n);
}

ExpintBounds expint_bounds(double x) {
  if (!(x > 0.0)) throw DomainError("expint_bounds: argument must be > 0");
  return ExpintBounds{neg_log1m_exp(std::exp(kEulerGamma) * x), neg_log1m_exp(x)};
}

}  // namespace mmwcov
