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

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstring>

#include "simd/kernels_internal.hpp"
#include "simd/vecmath.hpp"

namespace mmwcov::simd::avx2 {
namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d splat_bits(std::uint64_t b) {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(static_cast<long long>(b)));
}

// 2^k for integral k in [-1022, 1023] held as double.
inline __m256d pow2i(__m256d k) {
  const __m256d magic = splat(lane::kTwo52 + lane::kTwo52 * 0.5);
  const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, magic)),
                                      _mm256_castpd_si256(magic));
  const __m256i e = _mm256_add_epi64(ki, _mm256_set1_epi64x(1023));
  return _mm256_castsi256_pd(_mm256_slli_epi64(e, 52));
}

__m256d exp_v(__m256d x) {
  const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d hi_mask = _mm256_cmp_pd(x, splat(lane::kExpMax), _CMP_GT_OQ);
  const __m256d lo_mask = _mm256_cmp_pd(x, splat(lane::kExpMin), _CMP_LT_OQ);
  const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, splat(lane::kExpMin)), splat(lane::kExpMax));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, splat(lane::kInvLn2)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, splat(lane::kLn2Hi), xc);
  r = _mm256_fnmadd_pd(n, splat(lane::kLn2Lo), r);
  __m256d p = splat(lane::kExpPoly[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, splat(lane::kExpPoly[k]));
  const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, splat(0.5)));
  const __m256d n2 = _mm256_sub_pd(n, n1);
  __m256d res = _mm256_mul_pd(_mm256_mul_pd(p, pow2i(n1)), pow2i(n2));

  res = _mm256_blendv_pd(res, splat(std::numeric_limits<double>::infinity()), hi_mask);
  res = _mm256_blendv_pd(res, _mm256_setzero_pd(), lo_mask);
  return _mm256_blendv_pd(res, x, nan_mask);
}

__m256d log_v(__m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d inf = splat(std::numeric_limits<double>::infinity());
  const __m256d nan_mask = _mm256_or_pd(_mm256_cmp_pd(x, x, _CMP_UNORD_Q),
                                        _mm256_cmp_pd(x, zero, _CMP_LT_OQ));
  const __m256d zero_mask = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
  const __m256d inf_mask = _mm256_cmp_pd(x, inf, _CMP_EQ_OQ);

  const __m256d sub_mask = _mm256_cmp_pd(x, splat(lane::kMinNormal), _CMP_LT_OQ);
  const __m256d xs = _mm256_blendv_pd(x, _mm256_mul_pd(x, splat(lane::kTwo54)), sub_mask);
  const __m256d bias = _mm256_and_pd(sub_mask, splat(54.0));

  const __m256i bits = _mm256_castpd_si256(xs);
  const __m256d two52 = splat(lane::kTwo52);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(_mm256_srli_epi64(bits, 52), _mm256_castpd_si256(two52))),
      two52);
  e = _mm256_sub_pd(_mm256_sub_pd(e, splat(1023.0)), bias);
  __m256d m = _mm256_or_pd(_mm256_and_pd(xs, splat_bits(lane::kMantissaMask)),
                           splat_bits(lane::kOneBits));
  const __m256d big = _mm256_cmp_pd(m, splat(lane::kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

  const __m256d f = _mm256_sub_pd(m, splat(1.0));
  const __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(splat(0.5), f), f);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(splat(2.0), f));
  const __m256d z = _mm256_mul_pd(s, s);
  const __m256d w = _mm256_mul_pd(z, z);
  const __m256d t1 = _mm256_mul_pd(
      w, _mm256_add_pd(splat(lane::kLg2),
                       _mm256_mul_pd(w, _mm256_add_pd(splat(lane::kLg4),
                                                      _mm256_mul_pd(w, splat(lane::kLg6))))));
  const __m256d t2 = _mm256_mul_pd(
      z, _mm256_add_pd(
             splat(lane::kLg1),
             _mm256_mul_pd(
                 w, _mm256_add_pd(splat(lane::kLg3),
                                  _mm256_mul_pd(w, _mm256_add_pd(splat(lane::kLg5),
                                                                 _mm256_mul_pd(w, splat(lane::kLg7))))))));
  const __m256d rr = _mm256_add_pd(t2, t1);
  const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, rr)),
                                      _mm256_mul_pd(e, splat(lane::kLn2Lo)));
  __m256d res = _mm256_sub_pd(_mm256_mul_pd(e, splat(lane::kLn2Hi)),
                              _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));

  res = _mm256_blendv_pd(res, inf, inf_mask);
  res = _mm256_blendv_pd(res, splat(-std::numeric_limits<double>::infinity()), zero_mask);
  return _mm256_blendv_pd(res, splat(std::numeric_limits<double>::quiet_NaN()), nan_mask);
}

__m256d los_mask(const std::uint8_t* p) {
  std::int32_t packed;
  std::memcpy(&packed, p, sizeof(packed));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
}

void exp_kernel(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(&out[i], exp_v(_mm256_loadu_pd(&x[i])));
  for (; i < n; ++i) out[i] = lane::exp(x[i]);
}

void log_kernel(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(&out[i], log_v(_mm256_loadu_pd(&x[i])));
  for (; i < n; ++i) out[i] = lane::log(x[i]);
}

void path_gain_kernel(std::span<const double> radius, std::span<const std::uint8_t> los,
                      const PathGainLaw& law, std::span<double> out) {
  const std::size_t n = radius.size();
  const __m256d lc_los = splat(law.log_intercept_los);
  const __m256d lc_nlos = splat(law.log_intercept_nlos);
  const __m256d a_los = splat(law.alpha_los);
  const __m256d a_nlos = splat(law.alpha_nlos);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = los_mask(&los[i]);
    const __m256d lc = _mm256_blendv_pd(lc_nlos, lc_los, mask);
    const __m256d a = _mm256_blendv_pd(a_nlos, a_los, mask);
    const __m256d v = _mm256_fnmadd_pd(a, log_v(_mm256_loadu_pd(&radius[i])), lc);
    _mm256_storeu_pd(&out[i], exp_v(v));
  }
  for (; i < n; ++i) out[i] = lane::path_gain(radius[i], los[i], law);
}

double triple_dot_kernel(std::span<const double> x, std::span<const double> y,
                         std::span<const double> z) {
  const std::size_t n = x.size();
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i]));
    acc = _mm256_fmadd_pd(xy, _mm256_loadu_pd(&z[i]), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t i = n4; i < n; ++i) s = std::fma(x[i] * y[i], z[i], s);
  return s;
}

void nakagami_interference_kernel(std::span<const double> t, const InterferenceLaw& law,
                                  std::span<double> out) {
  const std::size_t n = t.size();
  const __m256d one = splat(1.0);
  const __m256d neg_alpha = splat(-law.alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d tp = exp_v(_mm256_mul_pd(neg_alpha, log_v(_mm256_loadu_pd(&t[i]))));
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < 4; ++k) {
      if (law.weight[k] == 0.0) continue;
      const __m256d y = _mm256_mul_pd(splat(law.scale[k]), tp);
      const __m256d r = _mm256_div_pd(one, _mm256_add_pd(one, y));
      __m256d pw = r;
      __m256d sum = r;
      for (int j = 2; j <= law.shape; ++j) {
        pw = _mm256_mul_pd(pw, r);
        sum = _mm256_add_pd(sum, pw);
      }
      acc = _mm256_fmadd_pd(splat(law.weight[k]), _mm256_mul_pd(y, sum), acc);
    }
    _mm256_storeu_pd(&out[i], acc);
  }
  for (; i < n; ++i) out[i] = lane::nakagami_interference(t[i], law);
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::avx2, &exp_kernel, &log_kernel, &path_gain_kernel,
                             &triple_dot_kernel, &nakagami_interference_kernel};
  return t;
}

}  // namespace mmwcov::simd::avx2
