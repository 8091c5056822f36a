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

// Quadrature, special functions and seeded random sampling.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "mmwcov/error.hpp"

namespace mmwcov {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int max_subdivisions = 4000;
  /// Non-finite tail values closer than this to the mapped infinity count as zero.
  double tail_cutoff_eps = 1e-12;
};

using ScalarFn = std::function<double(double)>;
/// Evaluates f at every abscissa of `t` into `out` (same length). Used so an
/// integrand can vectorize across the 15 nodes of a quadrature panel.
using BatchFn = std::function<void(std::span<const double> t, std::span<double> out)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. `b` may be
/// +infinity, in which case the tail beyond the last breakpoint is mapped to
/// [0, 1) by t = c + scale * u / (1 - u). Interior breakpoints seed the
/// initial partition and should mark kinks or support ends of f.
/// Throws ConvergenceError (with the partial estimate) or DivergenceError.
QuadResult integrate(const BatchFn& f, double a, double b, const QuadratureSettings& settings = {},
                     std::span<const double> breakpoints = {}, double scale = 1.0);

double integrate_finite(const ScalarFn& f, double a, double b,
                        const QuadratureSettings& settings = {});
double integrate_semi_infinite(const ScalarFn& f, double a, const QuadratureSettings& settings = {},
                               double scale = 1.0);

/// Gamma(s; a, b) = integral of x^(s-1) e^-x over [a, b]. Any real s when a > 0;
/// b may be +infinity. a = 0 requires s > 0.
double incomplete_gamma(double s, double a, double b);

/// N (N!)^(-1/N).
double eta(int n);

/// (1 - e^(-eta(N) gamma))^N, the approximation of P(g < gamma) for
/// g ~ Gamma(N, 1/N). Exact for N = 1; below the true CDF for N > 1.
double gamma_tail_bound(int n, double gamma);

struct ExpintBounds {
  double lower;
  double upper;
};

inline constexpr double kEulerGamma = 0.5772;

/// Bracket of E1(x) = integral of e^-t / t over [x, inf).
ExpintBounds expint_bounds(double x);

/// Identity of an independent random substream. Same (seed, stream_id) gives
/// the same sequence on every platform.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t substream = 0;  // independent sequences within one trial
};

/// Generator bound to one RandomStream. Distributions are implemented here
/// rather than through <random> distributions, whose output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(RandomStream stream);

  std::uint64_t bits() { return engine_(); }
  /// Uniform on (0, 1], 53-bit resolution.
  double uniform() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
  /// Uniform on [0, 1).
  double uniform0() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double exponential();

 private:
  std::mt19937_64 engine_;
};

/// Draw from Gamma(N, 1/N): mean 1, shape N.
double sample_gamma_normalized(int n, Rng& rng);

struct PolarPoints {
  std::vector<double> radius;  // ascending
  std::vector<double> angle;   // [0, 2 pi)
};

inline constexpr double kMaxExpectedPoints = 1e8;

/// Homogeneous PPP of intensity `density` on the disk of radius `radius`
/// centred at the origin. Radii come out sorted.
PolarPoints sample_ppp_disk(double density, double radius, Rng& rng);

}  // namespace mmwcov
