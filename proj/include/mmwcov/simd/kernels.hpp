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

// Batched arithmetic kernels used by the quadrature integrands and the
// Monte-Carlo inner loop.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// implementation. The two are bit-identical: the scalar code performs the same
// operation sequence as each SIMD lane (same polynomial, same fused
// multiply-adds, same four-lane reduction order), so the ISA chosen at runtime
// never changes a result. Tests assert this with memcmp.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mmwcov::simd {

enum class Isa { scalar, avx2 };

/// Per-tier power law in log form: gain = exp(log_intercept - alpha * ln r).
struct PathGainLaw {
  double log_intercept_los = 0.0;
  double alpha_los = 2.0;
  double log_intercept_nlos = 0.0;
  double alpha_nlos = 4.0;
};

/// Sum over four directivity classes of weight[k] * F(shape, scale[k] * t^-alpha),
/// where F(N, y) = 1 - (1 + y)^-N. Classes with zero weight are skipped.
struct InterferenceLaw {
  double alpha = 2.0;
  int shape = 1;
  std::array<double, 4> weight{};
  std::array<double, 4> scale{};
};

struct KernelTable {
  Isa isa;
  void (*exp)(std::span<const double> x, std::span<double> out);
  void (*log)(std::span<const double> x, std::span<double> out);
  void (*path_gain)(std::span<const double> radius, std::span<const std::uint8_t> los,
                    const PathGainLaw& law, std::span<double> out);
  double (*triple_dot)(std::span<const double> x, std::span<const double> y,
                       std::span<const double> z);
  void (*nakagami_interference)(std::span<const double> t, const InterferenceLaw& law,
                                std::span<double> out);
};

/// Table for a specific ISA. Throws std::invalid_argument if the ISA was not
/// compiled in or the CPU lacks it.
const KernelTable& kernels(Isa isa);

bool isa_supported(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// ISA used by the free functions below. Chosen once from CPU features; the
/// environment variable MMWCOV_ISA=scalar|avx2 overrides the choice.
Isa active_isa() noexcept;
void set_active_isa(Isa isa);

// Dispatching entry points. Output spans must be at least as long as the inputs.
void exp(std::span<const double> x, std::span<double> out);
void log(std::span<const double> x, std::span<double> out);
void path_gain(std::span<const double> radius, std::span<const std::uint8_t> los,
               const PathGainLaw& law, std::span<double> out);
double triple_dot(std::span<const double> x, std::span<const double> y,
                  std::span<const double> z);
void nakagami_interference(std::span<const double> t, const InterferenceLaw& law,
                           std::span<double> out);

}  // namespace mmwcov::simd
