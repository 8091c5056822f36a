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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "simd/kernels_internal.hpp"

namespace mmwcov::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(MMWCOV_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("MMWCOV_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && best == Isa::avx2) return Isa::avx2;
  }
  return best;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels(detect())};
  return slot;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
  }
#if defined(MMWCOV_HAVE_AVX2_TU)
  if (isa == Isa::avx2) return avx2::table();
#endif
  return scalar::table();
}

Isa active_isa() noexcept { return active().isa; }

void set_active_isa(Isa isa) { active_slot().store(&kernels(isa), std::memory_order_release); }

void exp(std::span<const double> x, std::span<double> out) { active().exp(x, out); }

void log(std::span<const double> x, std::span<double> out) { active().log(x, out); }

void path_gain(std::span<const double> radius, std::span<const std::uint8_t> los,
               const PathGainLaw& law, std::span<double> out) {
  active().path_gain(radius, los, law, out);
}

double triple_dot(std::span<const double> x, std::span<const double> y,
                  std::span<const double> z) {
  return active().triple_dot(x, y, z);
}

void nakagami_interference(std::span<const double> t, const InterferenceLaw& law,
                           std::span<double> out) {
  active().nakagami_interference(t, law, out);
}

}  // namespace mmwcov::simd
