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
#include <numbers>

#include "mmwcov/numerics.hpp"

namespace mmwcov {

Rng::Rng(RandomStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream.seed), static_cast<std::uint32_t>(stream.seed >> 32),
                    static_cast<std::uint32_t>(stream.stream_id),
                    static_cast<std::uint32_t>(stream.stream_id >> 32),
                    static_cast<std::uint32_t>(stream.substream),
                    static_cast<std::uint32_t>(stream.substream >> 32)};
  engine_.seed(seq);
}

double Rng::exponential() { return -std::log(uniform()); }

double sample_gamma_normalized(int n, Rng& rng) {
  if (n < 1) throw DomainError("sample_gamma_normalized: shape must be a positive integer");
  // Sum of n unit exponentials. Products of up to 16 uniforms stay above
  // 2^-848, so one log per block is exact enough and cannot underflow.
  double sum = 0.0;
  int left = n;
  while (left > 0) {
    const int block = left < 16 ? left : 16;
    double prod = 1.0;
    for (int i = 0; i < block; ++i) prod *= rng.uniform();
    sum -= std::log(prod);
    left -= block;
  }
  return sum / n;
}

PolarPoints sample_ppp_disk(double density, double radius, Rng& rng) {
  if (!(density > 0.0) || !std::isfinite(density)) throw DomainError("sample_ppp_disk: density must be > 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sample_ppp_disk: radius must be > 0");
  const double mean = density * std::numbers::pi * radius * radius;
  if (mean > kMaxExpectedPoints) {
    throw ResourceError("sample_ppp_disk: expected point count exceeds 1e8");
  }
  // Arrival times of a unit-rate process in "area" units map to sorted radii.
  PolarPoints pts;
  const double area_scale = 1.0 / (density * std::numbers::pi);
  double cum = 0.0;
  for (;;) {
    cum += rng.exponential();
    const double r = std::sqrt(cum * area_scale);
    if (r > radius) break;
    pts.radius.push_back(r);
    pts.angle.push_back(2.0 * std::numbers::pi * rng.uniform0());
  }
  return pts;
}

}  // namespace mmwcov
