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

// Scalar lane model shared by the reference kernels and the tail loops of the
// SIMD kernels. Any change here must be mirrored in kernels_avx2.cpp.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "mmwcov/simd/kernels.hpp"

namespace mmwcov::simd::lane {

inline constexpr double kExpMax = 709.782712893384;
inline constexpr double kExpMin = -745.1332191019412;
inline constexpr double kInvLn2 = 1.44269504088896338700e+00;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kMinNormal = 2.2250738585072014e-308;
inline constexpr double kTwo52 = 4503599627370496.0;
inline constexpr double kTwo54 = 18014398509481984.0;

// Taylor coefficients 1/k!, k = 0..13. |r| <= ln2/2 keeps truncation below 1e-17.
inline constexpr double kExpPoly[14] = {
    1.0,
    1.0,
    0.5,
    1.66666666666666666667e-01,
    4.16666666666666666667e-02,
    8.33333333333333333333e-03,
    1.38888888888888888889e-03,
    1.98412698412698412698e-04,
    2.48015873015873015873e-05,
    2.75573192239858906526e-06,
    2.75573192239858906526e-07,
    2.50521083854417187751e-08,
    2.08767569878680989792e-09,
    1.60590438368216145994e-10,
};

// fdlibm log1p-style minimax coefficients on [sqrt(1/2)-1, sqrt(2)-1].
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ull;

inline double pow2i(double k) {
  const auto e = static_cast<std::int64_t>(k) + 1023;
  return std::bit_cast<double>(static_cast<std::uint64_t>(e) << 52);
}

inline double exp(double x) {
  if (std::isnan(x)) return x;
  if (x > kExpMax) return std::numeric_limits<double>::infinity();
  if (x < kExpMin) return 0.0;
  const double n = std::nearbyint(x * kInvLn2);
  double r = std::fma(-n, kLn2Hi, x);
  r = std::fma(-n, kLn2Lo, r);
  double p = kExpPoly[13];
  for (int k = 12; k >= 0; --k) p = std::fma(p, r, kExpPoly[k]);
  const double n1 = std::floor(n * 0.5);
  const double n2 = n - n1;
  return p * pow2i(n1) * pow2i(n2);
}

inline double log(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == std::numeric_limits<double>::infinity()) return x;
  double bias = 0.0;
  if (x < kMinNormal) {
    x *= kTwo54;
    bias = 54.0;
  }
  const auto bits = std::bit_cast<std::uint64_t>(x);
  double e = std::bit_cast<double>((bits >> 52) | std::bit_cast<std::uint64_t>(kTwo52)) - kTwo52;
  e = e - 1023.0 - bias;
  double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
  if (m > kSqrt2) {
    m = m * 0.5;
    e = e + 1.0;
  }
  const double f = m - 1.0;
  const double hfsq = 0.5 * f * f;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
  const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
  const double rr = t2 + t1;
  return e * kLn2Hi - ((hfsq - (s * (hfsq + rr) + e * kLn2Lo)) - f);
}

inline double path_gain(double radius, std::uint8_t los, const PathGainLaw& law) {
  const double lc = los ? law.log_intercept_los : law.log_intercept_nlos;
  const double a = los ? law.alpha_los : law.alpha_nlos;
  return exp(std::fma(-a, log(radius), lc));
}

// 1 - (1+y)^-N evaluated as y * sum_{j=1..N} (1+y)^-j, which has no cancellation for small y.
inline double nakagami_f(double y, int shape) {
  const double r = 1.0 / (1.0 + y);
  double pw = r;
  double sum = r;
  for (int j = 2; j <= shape; ++j) {
    pw = pw * r;
    sum = sum + pw;
  }
  return y * sum;
}

inline double nakagami_interference(double t, const InterferenceLaw& law) {
  const double tp = exp(-law.alpha * log(t));
  double out = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (law.weight[k] == 0.0) continue;
    const double y = law.scale[k] * tp;
    out = std::fma(law.weight[k], nakagami_f(y, law.shape), out);
  }
  return out;
}

}  // namespace mmwcov::simd::lane
