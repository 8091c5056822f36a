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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "mmwcov/simd/kernels.hpp"

using namespace mmwcov::simd;

namespace {

bool have_avx2() { return isa_supported(Isa::avx2); }

std::vector<double> random_inputs(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(g);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("scalar exp and log are accurate to a few ulp") {
  const auto& k = kernels(Isa::scalar);
  const auto x = random_inputs(20001, -700.0, 700.0, 1);
  std::vector<double> y(x.size());
  k.exp(x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, rel_err(y[i], std::exp(x[i])));
  CHECK(worst < 5e-16);

  auto p = random_inputs(20001, -300.0, 300.0, 2);
  for (auto& v : p) v = std::exp(v);
  k.log(p, y);
  worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(y[i] - std::log(p[i])) / std::max(1.0, std::abs(std::log(p[i]))));
  CHECK(worst < 5e-16);
}

TEST_CASE("special values") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double sub = std::numeric_limits<double>::denorm_min() * 12345.0;
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_supported(isa)) continue;
    CAPTURE(isa_name(isa));
    const auto& k = kernels(isa);
    const std::vector<double> x{0.0, -0.0, inf, -inf, nan, 800.0, -800.0, 1.0};
    std::vector<double> y(x.size());
    k.exp(x, y);
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 1.0);
    CHECK(y[2] == inf);
    CHECK(y[3] == 0.0);
    CHECK(std::isnan(y[4]));
    CHECK(y[5] == inf);
    CHECK(y[6] == 0.0);
    CHECK(rel_err(y[7], std::exp(1.0)) < 3e-16);

    const std::vector<double> l{0.0, -1.0, inf, nan, sub, 1.0, 2.0, 0.5};
    k.log(l, y);
    CHECK(y[0] == -inf);
    CHECK(std::isnan(y[1]));
    CHECK(y[2] == inf);
    CHECK(std::isnan(y[3]));
    CHECK(rel_err(y[4], std::log(sub)) < 3e-16);
    CHECK(y[5] == 0.0);
    CHECK(rel_err(y[6], std::log(2.0)) < 3e-16);
    CHECK(rel_err(y[7], std::log(0.5)) < 3e-16);
  }
}

TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
  if (!have_avx2()) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const auto& s = kernels(Isa::scalar);
  const auto& v = kernels(Isa::avx2);

  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 100003u}) {
    CAPTURE(n);
    const auto x = random_inputs(n, -745.0, 709.0, 3);
    std::vector<double> a(n), b(n);
    s.exp(x, a);
    v.exp(x, b);
    CHECK(same_bits(a, b));

    auto p = random_inputs(n, -700.0, 700.0, 4);
    for (auto& e : p) e = std::exp(e);
    s.log(p, a);
    v.log(p, b);
    CHECK(same_bits(a, b));

    const auto r = random_inputs(n, 1.0, 5000.0, 5);
    std::vector<std::uint8_t> los(n);
    for (std::size_t i = 0; i < n; ++i) los[i] = static_cast<std::uint8_t>((i * 7) % 3 == 0);
    const PathGainLaw law{std::log(7.26e-7), 2.0, std::log(7.26e-7), 4.0};
    s.path_gain(r, los, law, a);
    v.path_gain(r, los, law, b);
    CHECK(same_bits(a, b));

    const auto y = random_inputs(n, -1.0, 1.0, 6);
    const auto z = random_inputs(n, 0.0, 10.0, 7);
    const double ds = s.triple_dot(r, y, z);
    const double dv = v.triple_dot(r, y, z);
    CHECK(std::memcmp(&ds, &dv, sizeof ds) == 0);

    for (int shape : {1, 2, 3, 5}) {
      InterferenceLaw il{2.5, shape, {0.0625, 0.1875, 0.1875, 0.5625}, {3.0, 0.03, 0.03, 3e-4}};
      s.nakagami_interference(r, il, a);
      v.nakagami_interference(r, il, b);
      CHECK(same_bits(a, b));
    }
  }
}

TEST_CASE("path gain follows the two-slope law") {
  const PathGainLaw law{std::log(2.0), 2.0, std::log(3.0), 4.0};
  const std::vector<double> r{10.0, 10.0};
  const std::vector<std::uint8_t> los{1, 0};
  std::vector<double> g(2);
  kernels(Isa::scalar).path_gain(r, los, law, g);
  CHECK(g[0] == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(3e-4).epsilon(1e-14));
}

TEST_CASE("nakagami interference kernel equals sum of F(N, s t^-alpha)") {
  const InterferenceLaw il{2.0, 3, {0.25, 0.25, 0.5, 0.0}, {1.0, 10.0, 0.1, 5.0}};
  const std::vector<double> t{0.5, 1.0, 7.0};
  std::vector<double> out(3);
  kernels(Isa::scalar).nakagami_interference(t, il, out);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double want = 0.0;
    for (int k = 0; k < 4; ++k) want += il.weight[k] * (1.0 - std::pow(1.0 + il.scale[k] / (t[i] * t[i]), -3));
    CHECK(out[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("dispatch") {
  CHECK(isa_supported(Isa::scalar));
  CHECK(isa_name(Isa::scalar) == "scalar");
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  std::vector<double> x{1.0}, y(1);
  exp(x, y);
  CHECK(y[0] == doctest::Approx(std::exp(1.0)));
  set_active_isa(before);
  if (!have_avx2()) CHECK_THROWS_AS(kernels(Isa::avx2), std::invalid_argument);
}
