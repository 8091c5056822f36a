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
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mmwcov/analytic.hpp"

namespace mmwcov {
namespace {

QuadratureSettings rate_settings() {
  QuadratureSettings s;
  s.rel_tol = 1e-8;
  s.abs_tol = 1e-12;
  return s;
}

void check_rate_args(double bandwidth, double sinr_cap) {
  if (!(bandwidth > 0.0)) throw DomainError("rate: bandwidth must be > 0");
  if (!(sinr_cap > 0.0)) throw DomainError("rate: SINR cap must be > 0");
}

}  // namespace

std::string_view provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::analytic_general:
      return "analytic-general";
    case Provenance::analytic_dense:
      return "analytic-dense";
    case Provenance::monte_carlo:
      return "monte-carlo";
  }
  return "unknown";
}

double CoverageCurve::at(double threshold) const {
  if (thresholds.empty()) throw DomainError("coverage curve is empty");
  if (!(threshold > 0.0)) throw DomainError("coverage curve: threshold must be > 0");
  if (threshold <= thresholds.front()) return probabilities.front();
  if (threshold >= thresholds.back()) return probabilities.back();
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), threshold);
  const std::size_t hi = static_cast<std::size_t>(it - thresholds.begin());
  if (*it == threshold) return probabilities[hi];
  const std::size_t lo = hi - 1;
  const double w = std::log(threshold / thresholds[lo]) / std::log(thresholds[hi] / thresholds[lo]);
  return probabilities[lo] + w * (probabilities[hi] - probabilities[lo]);
}

void CoverageCurve::validate() const {
  std::ostringstream bad;
  if (thresholds.size() != probabilities.size()) bad << " thresholds and probabilities differ in length;";
  if (!std_error.empty() && std_error.size() != thresholds.size()) bad << " std_error length mismatch;";
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0)) bad << " threshold[" << i << "] must be > 0;";
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) bad << " thresholds must increase at " << i << ";";
  }
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] >= 0.0 && probabilities[i] <= 1.0)) bad << " probability[" << i << "] outside [0, 1];";
  }
  if (!bad.str().empty()) throw DomainError("invalid coverage curve:" + bad.str());
}

double rate_to_threshold(double gamma, double bandwidth) {
  return std::expm1(gamma / bandwidth * std::numbers::ln2);
}

double threshold_to_rate(double threshold, double bandwidth) {
  return bandwidth * std::log1p(threshold) / std::numbers::ln2;
}

double avg_rate(const std::function<double(double)>& coverage, double bandwidth, double sinr_cap) {
  check_rate_args(bandwidth, sinr_cap);
  // u = ln(1 + T) turns dT / (1 + T) into du.
  auto f = [&coverage](std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = coverage(std::expm1(u[i]));
  };
  const double v = integrate(f, 0.0, std::log1p(sinr_cap), rate_settings()).value;
  return bandwidth / std::numbers::ln2 * v;
}

double avg_rate(const CoverageCurve& curve, double bandwidth, double sinr_cap) {
  check_rate_args(bandwidth, sinr_cap);
  curve.validate();
  std::vector<double> bp;
  for (double t : curve.thresholds) bp.push_back(std::log1p(t));
  auto f = [&curve](std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = curve.at(std::expm1(u[i]));
  };
  const double v = integrate(f, 0.0, std::log1p(sinr_cap), rate_settings(), bp).value;
  return bandwidth / std::numbers::ln2 * v;
}

double avg_rate(const NetworkConfig& config) {
  const GeneralNetwork net(config);
  return avg_rate([&net](double t) { return net.coverage(t); }, config.bandwidth, config.sinr_cap);
}

namespace {

void check_gamma(double gamma, double bandwidth, double sinr_cap) {
  check_rate_args(bandwidth, sinr_cap);
  const double cap = threshold_to_rate(sinr_cap, bandwidth);
  if (!(gamma > 0.0 && gamma < cap)) {
    std::ostringstream msg;
    msg << "rate coverage: rate " << gamma << " bit/s must lie in (0, " << cap
        << ") bit/s, the cap W log2(1 + T_max)";
    throw DomainError(msg.str());
  }
}

}  // namespace

double rate_coverage(const CoverageCurve& curve, double gamma, double bandwidth, double sinr_cap) {
  check_gamma(gamma, bandwidth, sinr_cap);
  double t = rate_to_threshold(gamma, bandwidth);
  // A rate computed from a grid threshold maps back to it up to rounding; snap
  // so the curve's own sample is returned.
  const auto it = std::lower_bound(curve.thresholds.begin(), curve.thresholds.end(), t);
  for (auto c : {it, it == curve.thresholds.begin() ? it : it - 1}) {
    if (c != curve.thresholds.end() && std::abs(*c - t) <= 16.0 * std::numeric_limits<double>::epsilon() * *c) {
      t = *c;
    }
  }
  return curve.at(t);
}

double rate_coverage(const NetworkConfig& config, double gamma) {
  check_gamma(gamma, config.bandwidth, config.sinr_cap);
  return GeneralNetwork(config).coverage(rate_to_threshold(gamma, config.bandwidth));
}

std::vector<double> db_grid(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db)) throw DomainError("threshold grid: need step > 0 and hi >= lo");
  const auto n = static_cast<long>(std::floor((hi_db - lo_db) / step_db + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(db_to_linear(lo_db + static_cast<double>(i) * step_db));
  return out;
}

}  // namespace mmwcov
