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
#include <numbers>

#include "mmwcov/error.hpp"
#include "mmwcov/model.hpp"
#include "support/oracles.hpp"

using namespace mmwcov;
using std::numbers::pi;

TEST_CASE("LOS probability") {
  const auto e = LosModel::exponential(1.0 / 141.4);
  CHECK(e.probability(141.4) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(e.probability(0.0) == 1.0);
  CHECK_THROWS_AS(e.probability(-1.0), DomainError);

  const auto b = LosModel::ball(200.0);
  CHECK(b.probability(100.0) == 1.0);
  CHECK(b.probability(200.0) == 0.0);
  CHECK(b.probability(0.0) == 1.0);

  const auto t = LosModel::tabulated({{0.0, 1.0}, {100.0, 0.5}, {300.0, 0.1}});
  CHECK(t.probability(50.0) == doctest::Approx(0.75));
  CHECK(t.probability(200.0) == doctest::Approx(0.3));
  CHECK(t.probability(1e6) == doctest::Approx(0.1));

  SUBCASE("monotone on a grid") {
    for (const auto& m : {e, b, t}) {
      double prev = 2.0;
      for (double r = 0.0; r < 2000.0; r += 0.37) {
        const double p = m.probability(r);
        CHECK(p <= prev);
        CHECK(p >= 0.0);
        prev = p;
      }
    }
  }
  SUBCASE("batch form matches") {
    const std::vector<double> r{0.0, 10.0, 141.4, 1000.0};
    std::vector<double> out(r.size());
    e.probability(r, out);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(out[i] == e.probability(r[i]));
  }
  CHECK_THROWS_AS(LosModel::exponential(0.0), DomainError);
  CHECK_THROWS_AS(LosModel::ball(-1.0), DomainError);
  CHECK_THROWS_AS(LosModel::tabulated({{0.0, 0.5}, {10.0, 0.6}}), DomainError);
}

TEST_CASE("LOS moments agree with direct quadrature") {
  const auto e = LosModel::exponential(1.0 / 141.4);
  const auto t = LosModel::tabulated({{0.0, 1.0}, {100.0, 0.5}, {300.0, 0.1}, {400.0, 0.0}});
  for (double x : {0.3, 10.0, 75.0, 141.4, 333.0, 2500.0}) {
    CAPTURE(x);
    for (const auto& m : {e, t}) {
      const double los = oracle::simpson([&](double r) { return m.probability(r) * r; }, 0.0, x, 20000);
      CHECK(m.los_moment(x) == doctest::Approx(los).epsilon(1e-9));
      CHECK(m.nlos_moment(x) == doctest::Approx(0.5 * x * x - los).epsilon(1e-9));
    }
  }
  CHECK(e.los_moment_total() == doctest::Approx(141.4 * 141.4));
}

TEST_CASE("antenna gain") {
  const SectoredAntenna a{10.0, 0.1, pi / 2};
  CHECK(a.gain(0.0) == 10.0);
  CHECK(a.gain(pi) == 0.1);
  CHECK(a.gain(pi / 4) == 10.0);
  CHECK(a.gain(-pi / 4) == 10.0);
  CHECK(a.gain(pi / 4 + 1e-9) == 0.1);
  CHECK(a.gain(2 * pi) == 10.0);
  CHECK(a.front_back_ratio() == doctest::Approx(100.0));
}

TEST_CASE("directivity PMF") {
  const SectoredAntenna q{10.0, 0.1, pi / 2};
  const auto d = directivity_pmf(q, q);
  const double b[4] = {1.0 / 16, 3.0 / 16, 3.0 / 16, 9.0 / 16};
  const double a[4] = {100.0, 1.0, 1.0, 0.01};
  for (int k = 0; k < 4; ++k) {
    CHECK(d.b[k] == doctest::Approx(b[k]).epsilon(1e-14));
    CHECK(d.a[k] == doctest::Approx(a[k]).epsilon(1e-14));
    CHECK(d.e[k] == doctest::Approx(a[k] / 0.1).epsilon(1e-14));
  }
  CHECK(std::abs(d.b[0] + d.b[1] + d.b[2] + d.b[3] - 1.0) < 1e-12);

  const SectoredAntenna omni{1.0, 1.0, 2 * pi};
  const auto o = directivity_pmf(omni, omni);
  CHECK(o.b[0] == 1.0);
  CHECK(o.b[1] == 0.0);
  CHECK(o.b[2] == 0.0);
  CHECK(o.b[3] == 0.0);

  const SectoredAntenna flat_tx{5.0, 5.0, pi / 3};
  const auto f = directivity_pmf(flat_tx, q);
  CHECK(f.a[0] == f.a[1]);
  CHECK(f.a[2] == f.a[3]);
}

TEST_CASE("path loss") {
  PathLossParams pl;
  pl.intercept_los = 1.0;
  pl.intercept_nlos = 1.0;
  CHECK(path_loss(pl, 10.0, true) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(path_loss(pl, 10.0, false) == doctest::Approx(1e-4).epsilon(1e-15));
  pl.intercept_los = 3.5;
  pl.intercept_nlos = 0.25;
  CHECK(path_loss(pl, 1.0, true) == 3.5);
  CHECK(path_loss(pl, 1.0, false) == 0.25);
  CHECK_THROWS_AS(path_loss(pl, 0.0, true), DomainError);
  double prev_l = 1e300;
  double prev_n = 1e300;
  for (double r = 0.5; r < 1e4; r *= 1.1) {
    CHECK(path_loss(pl, r, true) < prev_l);
    CHECK(path_loss(pl, r, false) < prev_n);
    prev_l = path_loss(pl, r, true);
    prev_n = path_loss(pl, r, false);
  }
}

TEST_CASE("mean LOS count and equivalent ball") {
  const double lambda = 1.0 / (pi * 100.0 * 100.0);
  CHECK(mean_los_count(LosModel::ball(200.0), lambda) == pi * lambda * 200.0 * 200.0);
  const double beta = 1.0 / 141.4;
  CHECK(mean_los_count(LosModel::exponential(beta), lambda) == doctest::Approx(2 * pi * lambda / (beta * beta)).epsilon(1e-12));
  CHECK(mean_los_count(LosModel::exponential(beta), lambda) == doctest::Approx(4.0).epsilon(2e-3));

  CHECK(equivalent_ball_radius_mean(LosModel::exponential(beta)) == doctest::Approx(200.0).epsilon(0.01));
  CHECK(equivalent_ball_radius_mean(LosModel::exponential(beta)) == doctest::Approx(std::sqrt(2.0) / beta).epsilon(1e-12));
  CHECK(equivalent_ball_radius_mean(LosModel::ball(123.0)) == doctest::Approx(123.0).epsilon(1e-14));

  const auto never_blocked = LosModel::tabulated({{0.0, 1.0}, {10.0, 1.0}});
  CHECK_THROWS_AS(mean_los_count(never_blocked, lambda), InfiniteMeanCount);
  CHECK_THROWS_AS(equivalent_ball_radius_mean(never_blocked), InfiniteMeanCount);

  for (const auto& m : {LosModel::exponential(beta), LosModel::tabulated({{0.0, 1.0}, {50.0, 0.4}, {250.0, 0.0}})}) {
    const double r = equivalent_ball_radius_mean(m);
    for (double l : {1e-6, 3e-5, 1e-3}) {
      CHECK(mean_los_count(LosModel::ball(r), l) == doctest::Approx(mean_los_count(m, l)).epsilon(1e-9));
    }
  }
  CHECK(equivalent_ball_radius_from_assoc(1.0 - std::exp(-1.0), 1.0 / pi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(equivalent_ball_radius_from_assoc(1.0, 1e-5), DomainError);
}

TEST_CASE("cell radius helpers") {
  CHECK(avg_cell_radius(1.0 / (pi * 100.0 * 100.0)) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(density_from_cell_radius(100.0) == doctest::Approx(3.183e-5).epsilon(1e-3));
  CHECK(avg_cell_radius(4e-5) == doctest::Approx(0.5 * avg_cell_radius(1e-5)).epsilon(1e-14));
  CHECK_THROWS_AS(avg_cell_radius(0.0), DomainError);
}

TEST_CASE("link budget helpers") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(-10.0) == doctest::Approx(0.1));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
  const double fs_db = -20.0 * std::log10(4.0 * pi * 28e9 / 299792458.0);
  CHECK(linear_to_db(free_space_intercept(28e9)) == doctest::Approx(fs_db).epsilon(1e-12));
  // -174 dBm/Hz + 80 dB + 10 dB - 30 dBm = -114 dB.
  CHECK(linear_to_db(thermal_noise_norm(100e6, 10.0, 30.0)) == doctest::Approx(-114.0).epsilon(1e-12));
}

TEST_CASE("config validation collects every problem") {
  NetworkConfig c = NetworkConfig::reference();
  CHECK_NOTHROW(c.validate());
  c.bs_density = -1.0;
  c.fading.n_los = 0;
  c.tx_antenna.side_gain = 1000.0;
  try {
    c.validate();
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("density") != std::string::npos);
    CHECK(what.find("LOS Nakagami") != std::string::npos);
    CHECK(what.find("tx") != std::string::npos);
  }
}
