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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "mmwcov/numerics.hpp"

namespace mmwcov {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double lo;
  double hi;
  bool tail;  // lo/hi are in u-space of the tail map
  double value;
  double error;
};

class Engine {
 public:
  Engine(const BatchFn& f, const QuadratureSettings& s, double tail_origin, double scale)
      : f_(f), s_(s), c_(tail_origin), scale_(scale) {}

  Panel eval(double lo, double hi, bool tail) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    std::array<double, 15> u;
    u[7] = mid;
    for (int j = 0; j < 7; ++j) {
      u[j] = mid - half * kXgk[j];
      u[14 - j] = mid + half * kXgk[j];
    }
    std::array<double, 15> t;
    std::array<double, 15> jac;
    for (int j = 0; j < 15; ++j) {
      if (tail) {
        const double om = 1.0 - u[j];
        t[j] = c_ + scale_ * u[j] / om;
        jac[j] = scale_ / (om * om);
      } else {
        t[j] = u[j];
        jac[j] = 1.0;
      }
    }
    std::array<double, 15> fv;
    f_(t, fv);
    for (int j = 0; j < 15; ++j) {
      double v = fv[j] * jac[j];
      // A non-finite product right at the mapped infinity is an artefact of
      // the map (inf * 0); treat it as the limit zero.
      if (!std::isfinite(v) && tail && 1.0 - u[j] < s_.tail_cutoff_eps) v = 0.0;
      fv[j] = v;
    }

    const double fc = fv[7];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1;
    std::array<double, 7> f2;
    for (int j = 0; j < 7; ++j) {
      f1[j] = fv[j];
      f2[j] = fv[14 - j];
    }
    for (int j = 0; j < 3; ++j) {
      const int jtw = 2 * j + 1;
      const double sum = f1[jtw] + f2[jtw];
      resg += kWg[j] * sum;
      resk += kWgk[jtw] * sum;
      resabs += kWgk[jtw] * (std::abs(f1[jtw]) + std::abs(f2[jtw]));
    }
    for (int j = 0; j < 4; ++j) {
      const int jtwm1 = 2 * j;
      const double sum = f1[jtwm1] + f2[jtwm1];
      resk += kWgk[jtwm1] * sum;
      resabs += kWgk[jtwm1] * (std::abs(f1[jtwm1]) + std::abs(f2[jtwm1]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(kEps * 50.0 * resabs, err);
    return Panel{lo, hi, tail, value, err};
  }

 private:
  const BatchFn& f_;
  const QuadratureSettings& s_;
  double c_;
  double scale_;
};

bool heap_less(const Panel& a, const Panel& b) { return a.error < b.error; }

}  // namespace

QuadResult integrate(const BatchFn& f, double a, double b, const QuadratureSettings& settings,
                     std::span<const double> breakpoints, double scale) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw DomainError("integrate: need a <= b");
  }
  if (std::isinf(a)) throw DomainError("integrate: lower limit must be finite");
  if (!(scale > 0.0)) throw DomainError("integrate: tail scale must be positive");
  if (a == b) return {};

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const bool infinite = std::isinf(b);
  if (!infinite) cuts.push_back(b);

  Engine engine(f, settings, cuts.back(), scale);
  std::vector<Panel> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push_back(engine.eval(cuts[i], cuts[i + 1], false));
  if (infinite) heap.push_back(engine.eval(0.0, 1.0, true));

  auto totals = [&heap]() {
    double v = 0.0;
    double e = 0.0;
    for (const Panel& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  std::make_heap(heap.begin(), heap.end(), heap_less);
  auto [value, error] = totals();
  int iterations = 0;
  while (error > std::max(settings.abs_tol, settings.rel_tol * std::abs(value))) {
    if (!std::isfinite(value) || !std::isfinite(error)) {
      throw DivergenceError("integrate: integrand produced a non-finite value");
    }
    if (static_cast<int>(heap.size()) >= settings.max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: no convergence after " << heap.size() << " subintervals (estimate "
          << value << ", error " << error << ")";
      throw ConvergenceError(msg.str(), value, error);
    }
    std::pop_heap(heap.begin(), heap.end(), heap_less);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        std::abs(worst.hi - worst.lo) <= 4.0 * kEps * std::max(std::abs(mid), kTiny)) {
      // Width exhausted at double precision; nothing left to refine.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), heap_less);
      std::ostringstream msg;
      msg << "integrate: roundoff limits accuracy (estimate " << value << ", error " << error << ")";
      throw ConvergenceError(msg.str(), value, error);
    }
    const Panel left = engine.eval(worst.lo, mid, worst.tail);
    const Panel right = engine.eval(mid, worst.hi, worst.tail);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), heap_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), heap_less);
    if (++iterations % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  if (!std::isfinite(value)) throw DivergenceError("integrate: integrand produced a non-finite value");
  return QuadResult{value, error, static_cast<int>(heap.size())};
}

namespace {

BatchFn lift(const ScalarFn& f) {
  return [&f](std::span<const double> t, std::span<double> out) {
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = f(t[i]);
  };
}

}  // namespace

double integrate_finite(const ScalarFn& f, double a, double b, const QuadratureSettings& settings) {
  if (std::isinf(b)) throw DomainError("integrate_finite: upper limit must be finite");
  return integrate(lift(f), a, b, settings).value;
}

double integrate_semi_infinite(const ScalarFn& f, double a, const QuadratureSettings& settings,
                               double scale) {
  try {
    return integrate(lift(f), a, std::numeric_limits<double>::infinity(), settings, {}, scale).value;
  } catch (const ConvergenceError& e) {
    // Decide whether the failure is an integral that does not exist: for a
    // convergent tail t*f(t) must shrink along a geometric sequence of probes.
    double prev = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    for (double k : {1e2, 1e4, 1e6, 1e8}) {
      const double t = a + scale * k;
      const double m = std::abs(t * f(t));
      if (!(m < 0.5 * prev) && m > 0.0) shrinking = false;
      prev = m;
    }
    if (!shrinking) {
      throw DivergenceError(std::string("integrate_semi_infinite: integrand does not decay; ") +
                            e.what());
    }
    throw;
  }
}

}  // namespace mmwcov
