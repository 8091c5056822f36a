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

#include "mmwcov/analytic.hpp"
#include "mmwcov/error.hpp"
#include "support/oracles.hpp"

using namespace mmwcov;
using std::numbers::pi;

namespace {

NetworkConfig reference_at(double cell_radius) {
  NetworkConfig c = NetworkConfig::reference();
  c.bs_density = density_from_cell_radius(cell_radius);
  return c;
}

NetworkConfig ball_equal_intercepts(double radius, double cell_radius) {
  NetworkConfig c = reference_at(cell_radius);
  c.los = LosModel::ball(radius);
  c.pathloss.intercept_nlos = c.pathloss.intercept_los;
  return c;
}

double integral_of(const std::function<double(double)>& f, double scale) {
  return integrate_semi_infinite(f, 0.0, {1e-11, 1e-14, 4000, 1e-12}, scale);
}

}  // namespace

TEST_CASE("nearest-BS densities") {
  const NetworkConfig ball = ball_equal_intercepts(200.0, 100.0);
  const double l = ball.bs_density;
  for (double x : {1.0, 50.0, 150.0, 199.0}) {
    const double want = 2 * pi * l * x * std::exp(-l * pi * x * x) / (1.0 - std::exp(-l * pi * 200.0 * 200.0));
    CHECK(nearest_pdf(ball, Tier::los, x) == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(nearest_pdf(ball, Tier::los, 250.0) == 0.0);

  for (double rc : {50.0, 100.0, 300.0}) {
    const NetworkConfig c = reference_at(rc);
    for (Tier t : {Tier::los, Tier::nlos}) {
      CAPTURE(rc);
      CAPTURE(tier_name(t));
      CHECK(integral_of([&](double x) { return nearest_pdf(c, t, x); }, rc) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  NetworkConfig all_los = reference_at(100.0);
  all_los.los = LosModel::tabulated({{0.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(nearest_pdf(all_los, Tier::nlos, 10.0), DomainError);
  CHECK_THROWS_AS(nearest_pdf(reference_at(100.0), Tier::los, -1.0), DomainError);
}

TEST_CASE("association probabilities") {
  const NetworkConfig ball = ball_equal_intercepts(200.0, 100.0);
  const double l = ball.bs_density;
  CHECK(assoc_probabilities(ball).a_los == doctest::Approx(1.0 - std::exp(-l * pi * 200.0 * 200.0)).epsilon(1e-8));

  NetworkConfig all_los = reference_at(100.0);
  all_los.los = LosModel::tabulated({{0.0, 1.0}, {1.0, 1.0}});
  CHECK(assoc_probabilities(all_los).a_los == doctest::Approx(1.0).epsilon(1e-12));

  double prev = 2.0;
  for (double rc : {50.0, 100.0, 200.0, 300.0}) {
    const AssocReport a = assoc_probabilities(reference_at(rc));
    CHECK(std::abs(a.a_los + a.a_nlos - 1.0) < 1e-6);
    CHECK(a.a_los < prev);
    prev = a.a_los;
  }
  NetworkConfig tab = reference_at(150.0);
  tab.los = LosModel::tabulated({{0.0, 1.0}, {60.0, 0.7}, {180.0, 0.2}, {400.0, 0.0}});
  const AssocReport t = assoc_probabilities(tab);
  CHECK(std::abs(t.a_los + t.a_nlos - 1.0) < 1e-6);
}

TEST_CASE("serving-BS densities") {
  for (double rc : {50.0, 100.0, 200.0}) {
    const NetworkConfig c = reference_at(rc);
    for (Tier t : {Tier::los, Tier::nlos}) {
      CAPTURE(rc);
      CAPTURE(tier_name(t));
      CHECK(integral_of([&](double x) { return serving_pdf(c, t, x); }, rc) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("equal laws reduce to the nearest overall BS split by tier") {
    NetworkConfig c = reference_at(100.0);
    c.pathloss.alpha_nlos = c.pathloss.alpha_los;
    c.pathloss.intercept_nlos = c.pathloss.intercept_los;
    const GeneralNetwork g(c);
    const double l = c.bs_density;
    for (double x : {5.0, 60.0, 140.0, 400.0}) {
      const double p = c.los.probability(x);
      const double base = 2 * pi * l * x * std::exp(-pi * l * x * x);
      CHECK(g.serving_pdf(Tier::los, x) == doctest::Approx(base * p / g.assoc().a_los).epsilon(1e-9));
      CHECK(g.serving_pdf(Tier::nlos, x) == doctest::Approx(base * (1 - p) / g.assoc().a_nlos).epsilon(1e-9));
      CHECK(g.equal_loss_distance(Tier::los, x) == doctest::Approx(x).epsilon(1e-14));
    }
  }
}

TEST_CASE("equivalent ball radius from association") {
  const NetworkConfig ball = ball_equal_intercepts(180.0, 100.0);
  CHECK(equivalent_ball_radius_assoc(ball) == doctest::Approx(180.0).epsilon(1e-6));
  CHECK(equivalent_ball_radius_assoc(reference_at(100.0)) == doctest::Approx(200.0).epsilon(0.01));
}

TEST_CASE("general coverage limits and monotonicity") {
  const NetworkConfig c = reference_at(100.0);
  const GeneralNetwork g(c);
  CHECK(g.coverage(1e-6) > 0.999);
  NetworkConfig loud = c;
  loud.noise_norm = 1e3;
  const GeneralNetwork gl(loud);
  for (double t : {0.1, 1.0, 100.0}) CHECK(gl.coverage(t) < 1e-6);

  const auto grid = db_grid(-10.0, 40.0, 2.5);
  double prev = 1.0 + 1e-12;
  for (double t : grid) {
    const double p = g.coverage(t);
    CHECK(p <= prev + 1e-9);
    CHECK(p >= 0.0);
    prev = p;
  }
  NetworkConfig noisier = c;
  noisier.noise_norm *= 10.0;
  const GeneralNetwork gn(noisier);
  for (double t : {1.0, 100.0, 1e4}) CHECK(gn.coverage(t) <= g.coverage(t) + 1e-9);

  const double combined = g.assoc().a_los * g.coverage_given(Tier::los, 10.0) +
                          g.assoc().a_nlos * g.coverage_given(Tier::nlos, 10.0);
  CHECK(g.coverage(10.0) == doctest::Approx(combined).epsilon(1e-12));
  CHECK_THROWS_AS(g.coverage(0.0), DomainError);
}

TEST_CASE("antenna ordering of the general formula") {
  const auto grid = db_grid(-10.0, 40.0, 5.0);
  NetworkConfig strong = reference_at(100.0);
  NetworkConfig weak = strong;
  weak.tx_antenna.main_gain = 10.0;
  weak.tx_antenna.side_gain = 0.01;
  NetworkConfig wide = strong;
  wide.tx_antenna.beamwidth = pi / 2;
  const GeneralNetwork gs(strong), gw(weak), gb(wide);
  for (double t : grid) {
    CHECK(gs.coverage(t) >= gw.coverage(t) - 1e-9);
    CHECK(gs.coverage(t) >= gb.coverage(t) - 1e-9);
  }
}

TEST_CASE("failures name the offending term") {
  NetworkConfig c = reference_at(100.0);
  c.los = LosModel::tabulated({{0.0, 1.0}, {1.0, 1.0}});
  try {
    GeneralNetwork(c).coverage(10.0);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    const std::string what = e.what();
    CHECK(what.find("n=") != std::string::npos);
    CHECK(what.find("T=10") != std::string::npos);
  }
}

TEST_CASE("dense formula") {
  const SectoredAntenna a{10.0, 0.1, pi / 6};
  const DirectivityPmf pmf = directivity_pmf(a, a);
  CHECK(coverage_dense_point(1e-7, pmf, 2.0, 5, 100.0) < 1e-6);
  CHECK(coverage_dense_alpha2_point(1e-7, pmf, 5, 100.0) < 1e-6);

  const auto grid = db_grid(-10.0, 40.0, 2.5);
  for (double alpha : {2.0, 2.5, 4.0}) {
    const CoverageCurve d = coverage_dense(4.0, pmf, alpha, 5, grid);
    CHECK(d.provenance == Provenance::analytic_dense);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(d.probabilities[i] >= 0.0);
      CHECK(d.probabilities[i] <= 1.0);
      if (i) CHECK(d.probabilities[i] <= d.probabilities[i - 1] + 1e-9);
    }
  }

  SUBCASE("closed form for alpha = 2 tracks the integral form") {
    const CoverageCurve d = coverage_dense(4.0, pmf, 2.0, 5, grid);
    const CoverageCurve c = coverage_dense_alpha2(4.0, pmf, 5, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(d.probabilities[i] - c.probabilities[i]) <= 0.02);
      // The closed form rises by about 1e-4 below 0 dB; above it is non-increasing.
      if (i && grid[i] >= 1.0) CHECK(c.probabilities[i] <= c.probabilities[i - 1] + 1e-9);
      if (i) CHECK(c.probabilities[i] <= c.probabilities[i - 1] + 2e-4);
    }
  }

  SUBCASE("depends on density and ball only through rho") {
    const double l = 3e-5;
    const double r = 200.0;
    const double rho1 = mean_los_count(LosModel::ball(r), l);
    const double rho2 = mean_los_count(LosModel::ball(r / 2), 4 * l);
    CHECK(rho1 == doctest::Approx(rho2).epsilon(1e-14));
    CHECK(coverage_dense_point(rho1, pmf, 2.0, 5, 100.0) ==
          doctest::Approx(coverage_dense_point(rho2, pmf, 2.0, 5, 100.0)).epsilon(1e-12));
  }

  SUBCASE("more terms never lower the estimate") {
    for (double t : {1.0, 100.0, 1e4}) {
      const double p3 = coverage_dense_point(4.0, pmf, 2.0, 3, t);
      const double p5 = coverage_dense_point(4.0, pmf, 2.0, 5, t);
      const double p10 = coverage_dense_point(4.0, pmf, 2.0, 10, t);
      CHECK(p3 <= p5 + 1e-9);
      CHECK(p5 <= p10 + 1e-9);
    }
  }
  CHECK_THROWS_AS(coverage_dense_point(-1.0, pmf, 2.0, 5, 1.0), DomainError);
  CHECK_THROWS_AS(coverage_dense_point(1.0, pmf, 2.0, 0, 1.0), DomainError);
}

TEST_CASE("asymptotic bound") {
  CHECK(asymptotic_lower_bound(4.0, 10.0) == doctest::Approx(4.0 / std::sqrt(10.0) / (2 * pi)).epsilon(1e-14));
  CHECK(asymptotic_lower_bound(4.0, 10.0) == doctest::Approx(0.2013).epsilon(1e-3));
  CHECK(asymptotic_lower_bound(2.0, 5.0) == 0.0);
  CHECK(asymptotic_lower_bound(1.5, 50.0) == 0.0);
  CHECK(asymptotic_lower_bound(3.0, 1.0001) <= 1.0);
  CHECK_THROWS_AS(asymptotic_lower_bound(4.0, 1.0), DomainError);
}

TEST_CASE("rates") {
  const double w = 100e6;
  CHECK(avg_rate([](double) { return 1.0; }, w, 63.0) == doctest::Approx(w * 6.0).epsilon(1e-12));
  CHECK(avg_rate([](double) { return 0.0; }, w, 63.0) == 0.0);

  const auto grid = db_grid(-10.0, 17.0, 1.0);
  const CoverageCurve curve = coverage_general(reference_at(100.0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gamma = threshold_to_rate(grid[i], w);
    CHECK(rate_coverage(curve, gamma, w, 63.0) == curve.probabilities[i]);
  }
  CHECK(rate_coverage(curve, w, w, 63.0) == curve.at(1.0));
  double prev = 1.0;
  for (double g = 1e6; g < 5.9e8; g *= 1.3) {
    const double p = rate_coverage(curve, g, w, 63.0);
    CHECK(p <= prev);
    prev = p;
  }
  try {
    rate_coverage(curve, 7e8, w, 63.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("6e+08") != std::string::npos);
  }
  CHECK(rate_to_threshold(threshold_to_rate(5.0, w), w) == doctest::Approx(5.0).epsilon(1e-14));

  const NetworkConfig c = reference_at(100.0);
  CHECK(rate_coverage(c, w) == doctest::Approx(GeneralNetwork(c).coverage(1.0)).epsilon(1e-12));
  const double r = avg_rate(c);
  CHECK(r > 0.0);
  CHECK(r < w * 6.0);
}

TEST_CASE("coverage curve interpolation") {
  CoverageCurve c;
  c.thresholds = {1.0, 10.0, 100.0};
  c.probabilities = {0.9, 0.5, 0.1};
  CHECK(c.at(10.0) == 0.5);
  CHECK(c.at(std::sqrt(10.0)) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(c.at(0.01) == 0.9);
  CHECK(c.at(1e6) == 0.1);
  CHECK_NOTHROW(c.validate());
  c.probabilities.push_back(0.0);
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.probabilities = {0.9, 1.5, 0.1};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.probabilities = {0.9, 0.5, 0.1};
  c.thresholds = {1.0, 1.0, 2.0};
  CHECK_THROWS_AS(c.validate(), DomainError);
}
