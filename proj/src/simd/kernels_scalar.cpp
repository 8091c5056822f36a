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

#include "simd/kernels_internal.hpp"
#include "simd/vecmath.hpp"

namespace mmwcov::simd::scalar {

void exp(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = lane::exp(x[i]);
}

void log(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = lane::log(x[i]);
}

void path_gain(std::span<const double> radius, std::span<const std::uint8_t> los,
               const PathGainLaw& law, std::span<double> out) {
  for (std::size_t i = 0; i < radius.size(); ++i) out[i] = lane::path_gain(radius[i], los[i], law);
}

// Four interleaved accumulators reproduce the AVX2 lane order exactly.
double triple_dot(std::span<const double> x, std::span<const double> y,
                  std::span<const double> z) {
  const std::size_t n = x.size();
  const std::size_t n4 = n - n % 4;
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n4; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) acc[j] = std::fma(x[i + j] * y[i + j], z[i + j], acc[j]);
  }
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (std::size_t i = n4; i < n; ++i) s = std::fma(x[i] * y[i], z[i], s);
  return s;
}

void nakagami_interference(std::span<const double> t, const InterferenceLaw& law,
                           std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = lane::nakagami_interference(t[i], law);
}

const KernelTable& table() {
  static const KernelTable t{Isa::scalar, &exp, &log, &path_gain, &triple_dot,
                             &nakagami_interference};
  return t;
}

}  // namespace mmwcov::simd::scalar
