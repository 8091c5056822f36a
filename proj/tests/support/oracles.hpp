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

// Reference computations the library code does not use.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// E1(x) by its power series for x <= 2, by the Lentz continued fraction above.
inline double expint_e1(double x) {
  if (x <= 2.0) {
    constexpr double kEuler = 0.57721566490153286061;
    long double sum = 0.0L;
    long double term = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= -static_cast<long double>(x) / k;
      const long double add = term / k;
      sum += add;
      if (std::fabs(static_cast<double>(add)) < 1e-20) break;
    }
    return static_cast<double>(-kEuler - std::log(static_cast<long double>(x)) - sum);
  }
  double b = x + 1.0;
  double c = 1.0 / 1e-300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

// Composite Simpson rule on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Romberg table built from trapezoid sums.
inline double richardson_trapezoid(const std::function<double(double)>& f, double a, double b, int levels = 12) {
  std::vector<std::vector<double>> r(levels, std::vector<double>(levels, 0.0));
  double h = b - a;
  r[0][0] = 0.5 * h * (f(a) + f(b));
  for (int i = 1; i < levels; ++i) {
    h *= 0.5;
    double s = 0.0;
    const long n = 1L << (i - 1);
    for (long k = 1; k <= n; ++k) s += f(a + (2 * k - 1) * h);
    r[i][0] = 0.5 * r[i - 1][0] + h * s;
    double p = 4.0;
    for (int j = 1; j <= i; ++j, p *= 4.0) r[i][j] = r[i][j - 1] + (r[i][j - 1] - r[i - 1][j - 1]) / (p - 1.0);
  }
  return r[levels - 1][levels - 1];
}

// One-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

// Tabulated CDF of a density on [0, hi] by cumulative Simpson panels, read by linear interpolation.
class NumericCdf {
 public:
  NumericCdf(const std::function<double(double)>& pdf, double hi, int panels = 20000) : hi_(hi) {
    const double h = hi / panels;
    x_.push_back(0.0);
    c_.push_back(0.0);
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double a = i * h;
      acc += h / 6.0 * (pdf(a) + 4.0 * pdf(a + 0.5 * h) + pdf(a + h));
      x_.push_back(a + h);
      c_.push_back(acc);
    }
  }
  double total() const { return c_.back(); }
  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= hi_) return c_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return c_[i - 1] + w * (c_[i] - c_[i - 1]);
  }

 private:
  double hi_;
  std::vector<double> x_;
  std::vector<double> c_;
};

}  // namespace oracle
