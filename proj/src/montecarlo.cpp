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

#include "mmwcov/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <variant>

#include "mmwcov/simd/kernels.hpp"

namespace mmwcov {
namespace {

constexpr std::uint64_t kBlock = 256;

// Runs trials in fixed blocks; block b always covers the same trial indices
// and results are returned in block order, so any reduction over them is
// independent of the thread count.
template <typename Acc, typename Make, typename Trial>
std::vector<Acc> run_blocks(std::uint64_t n_trials, unsigned threads, Make make, Trial trial) {
  const std::uint64_t n_blocks = (n_trials + kBlock - 1) / kBlock;
  std::vector<Acc> out;
  out.reserve(n_blocks);
  for (std::uint64_t b = 0; b < n_blocks; ++b) out.push_back(make());
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t b = next++; b < n_blocks; b = next++) {
      const std::uint64_t end = std::min(n_trials, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) trial(out[b], i);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      try {
        worker();
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        next = n_blocks;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void check_settings(const McSettings& s) {
  if (s.n_trials < 1) throw DomainError("Monte-Carlo: need at least one trial");
  if (!(s.window_radius >= 0.0) || !std::isfinite(s.window_radius)) {
    throw DomainError("Monte-Carlo: window radius must be > 0 (or 0 for the default)");
  }
}

// Config actually simulated: dense mode swaps in the ball and drops noise.
NetworkConfig effective_config(const NetworkConfig& config, bool dense) {
  config.validate();
  if (!dense) return config;
  NetworkConfig c = config;
  c.los = LosModel::ball(dense_ball_radius(config));
  c.noise_norm = 0.0;
  return c;
}

double window_for(const NetworkConfig& config, const McSettings& s) {
  return s.window_radius > 0.0 ? s.window_radius : default_window_radius(config, s.dense_mode);
}

simd::PathGainLaw gain_law(const PathLossParams& pl) {
  return simd::PathGainLaw{std::log(pl.intercept_los), pl.alpha_los, std::log(pl.intercept_nlos), pl.alpha_nlos};
}

void fill_directivity(const NetworkRealization& real, const NetworkConfig& config, std::vector<double>& d) {
  const double ct = config.tx_antenna.beamwidth / (2.0 * std::numbers::pi);
  const double cr = config.rx_antenna.beamwidth / (2.0 * std::numbers::pi);
  d.resize(real.size());
  for (std::size_t i = 0; i < real.size(); ++i) {
    const double gt = real.lobe_t[i] < ct ? config.tx_antenna.main_gain : config.tx_antenna.side_gain;
    const double gr = real.lobe_r[i] < cr ? config.rx_antenna.main_gain : config.rx_antenna.side_gain;
    d[i] = gt * gr;
  }
}

std::size_t argmax_gain(std::span<const double> gain) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < gain.size(); ++i) {
    // Radii ascend, so keeping the first maximum breaks ties by radius then index.
    if (gain[i] > gain[best]) best = i;
  }
  return best;
}

struct Scratch {
  std::vector<double> gain;
  std::vector<double> d;
};

double sinr_with(const NetworkRealization& real, const NetworkConfig& config, Scratch& s) {
  const std::size_t n = real.size();
  if (n == 0) return kNoCoverage;
  s.gain.resize(n);
  simd::path_gain(real.radius, real.is_los, gain_law(config.pathloss), s.gain);
  const std::size_t k = argmax_gain(s.gain);
  fill_directivity(real, config, s.d);
  s.d[k] = 0.0;
  const double interference = simd::triple_dot(real.fading, s.d, s.gain);
  const double signal = real.fading[k] * config.rx_antenna.main_gain * config.tx_antenna.main_gain * s.gain[k];
  const double noise = real.dense ? 0.0 : config.noise_norm;
  const double den = noise + interference;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return signal / den;
}

NetworkRealization sample_effective(const NetworkConfig& eff, double window, bool dense, std::uint64_t seed,
                                    std::uint64_t trial) {
  NetworkRealization real;
  real.stream = RandomStream{seed, trial};
  real.window_radius = window;
  real.dense = dense;
  // Marks use their own substream, so a larger window leaves the inner points untouched.
  Rng geometry(real.stream);
  Rng rng(RandomStream{seed, trial, 1});
  PolarPoints pts = sample_ppp_disk(eff.bs_density, window, geometry);
  const std::size_t n = pts.radius.size();
  real.radius = std::move(pts.radius);
  real.angle = std::move(pts.angle);
  real.is_los.resize(n);
  real.fading.resize(n);
  real.lobe_t.resize(n);
  real.lobe_r.resize(n);
  std::vector<double> p(n);
  eff.los.probability(real.radius, p);
  for (std::size_t i = 0; i < n; ++i) {
    const bool los = dense ? true : rng.uniform0() < p[i];
    real.is_los[i] = los ? 1 : 0;
    real.fading[i] = dense ? 1.0 : sample_gamma_normalized(eff.fading.shape(los ? Tier::los : Tier::nlos), rng);
    real.lobe_t[i] = rng.uniform0();
    real.lobe_r[i] = rng.uniform0();
  }
  fill_directivity(real, eff, real.directivity);
  return real;
}

double stderr_of(double sum, double sum_sq, double n) {
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean)) * n / (n - 1.0);
  return std::sqrt(var / n);
}

}  // namespace

double dense_ball_radius(const NetworkConfig& config) { return equivalent_ball_radius_mean(config.los); }

double default_window_radius(const NetworkConfig& config, bool dense_mode) {
  if (dense_mode) return dense_ball_radius(config);
  constexpr double kFloor = 2000.0;
  const auto& kind = config.los.kind();
  if (const auto* e = std::get_if<ExponentialLos>(&kind)) return std::max(10.0 / e->beta, kFloor);
  if (const auto* b = std::get_if<BallLos>(&kind)) return std::max(5.0 * b->radius, kFloor);
  const auto& tab = std::get<TabulatedLos>(kind);
  return std::max(5.0 * tab.radius.back(), kFloor);
}

NetworkRealization sample_realization(const NetworkConfig& config, const McSettings& settings,
                                      std::uint64_t trial_index) {
  check_settings(settings);
  const NetworkConfig eff = effective_config(config, settings.dense_mode);
  return sample_effective(eff, window_for(eff, settings), settings.dense_mode, settings.seed, trial_index);
}

std::size_t serving_index(const NetworkRealization& real, const NetworkConfig& config) {
  if (real.size() == 0) return 0;
  std::vector<double> gain(real.size());
  simd::path_gain(real.radius, real.is_los, gain_law(config.pathloss), gain);
  return argmax_gain(gain);
}

double sinr_sample(const NetworkRealization& real, const NetworkConfig& config) {
  Scratch s;
  return sinr_with(real, config, s);
}

McCoverage empirical_coverage(const NetworkConfig& config, const McSettings& settings,
                              std::span<const double> thresholds, bool keep_samples) {
  check_settings(settings);
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    if (!(thresholds[j] > 0.0) || (j > 0 && !(thresholds[j] > thresholds[j - 1]))) {
      throw DomainError("Monte-Carlo coverage: thresholds must be positive and increasing");
    }
  }
  const NetworkConfig eff = effective_config(config, settings.dense_mode);
  const double window = window_for(eff, settings);
  const std::size_t m = thresholds.size();
  const double cap = config.sinr_cap;

  struct Acc {
    std::vector<std::uint64_t> hist;  // hist[j]: trials whose SINR exceeds exactly j thresholds
    double se_sum = 0.0;
    double se_sq = 0.0;
  };
  std::vector<double> samples;
  if (keep_samples) samples.resize(settings.n_trials);
  auto blocks = run_blocks<Acc>(
      settings.n_trials, settings.threads, [m]() { return Acc{std::vector<std::uint64_t>(m + 1, 0)}; },
      [&](Acc& acc, std::uint64_t trial) {
        thread_local Scratch scratch;
        const NetworkRealization real = sample_effective(eff, window, settings.dense_mode, settings.seed, trial);
        const double sinr = sinr_with(real, eff, scratch);
        const auto above = std::lower_bound(thresholds.begin(), thresholds.end(), sinr) - thresholds.begin();
        ++acc.hist[static_cast<std::size_t>(above)];
        const double se = std::log2(1.0 + std::min(sinr, cap));
        acc.se_sum += se;
        acc.se_sq += se * se;
        if (keep_samples) samples[trial] = sinr;
      });

  std::vector<std::uint64_t> hist(m + 1, 0);
  double se_sum = 0.0;
  double se_sq = 0.0;
  for (const Acc& a : blocks) {
    for (std::size_t j = 0; j <= m; ++j) hist[j] += a.hist[j];
    se_sum += a.se_sum;
    se_sq += a.se_sq;
  }
  McCoverage out;
  out.curve.provenance = Provenance::monte_carlo;
  out.curve.thresholds.assign(thresholds.begin(), thresholds.end());
  const double n = static_cast<double>(settings.n_trials);
  std::uint64_t covered = 0;
  std::vector<double> prob(m);
  // SINR > T_j iff the trial exceeds more than j thresholds.
  for (std::size_t j = m; j-- > 0;) {
    covered += hist[j + 1];
    prob[j] = static_cast<double>(covered) / n;
  }
  out.curve.probabilities = prob;
  for (double p : prob) out.curve.std_error.push_back(std::sqrt(p * (1.0 - p) / n));
  out.mean_spectral_efficiency = se_sum / n;
  out.spectral_efficiency_se = stderr_of(se_sum, se_sq, n);
  out.samples = std::move(samples);
  return out;
}

AssocEstimate empirical_association(const NetworkConfig& config, const McSettings& settings,
                                    bool keep_distances) {
  check_settings(settings);
  const NetworkConfig eff = effective_config(config, settings.dense_mode);
  const double window = window_for(eff, settings);
  struct Acc {
    std::uint64_t los = 0, nlos = 0, none = 0, has_los = 0, has_nlos = 0;
    double count_sum = 0.0, count_sq = 0.0;
  };
  const std::uint64_t n = settings.n_trials;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> near_l, near_n, serv_l, serv_n;
  if (keep_distances) {
    near_l.assign(n, nan);
    near_n.assign(n, nan);
    serv_l.assign(n, nan);
    serv_n.assign(n, nan);
  }
  auto blocks = run_blocks<Acc>(
      n, settings.threads, []() { return Acc{}; },
      [&](Acc& acc, std::uint64_t trial) {
        const NetworkRealization real = sample_effective(eff, window, settings.dense_mode, settings.seed, trial);
        double count = 0.0;
        double first_l = nan;
        double first_n = nan;
        for (std::size_t i = 0; i < real.size(); ++i) {
          if (real.is_los[i]) {
            count += 1.0;
            if (std::isnan(first_l)) first_l = real.radius[i];
          } else if (std::isnan(first_n)) {
            first_n = real.radius[i];
          }
        }
        acc.count_sum += count;
        acc.count_sq += count * count;
        if (!std::isnan(first_l)) ++acc.has_los;
        if (!std::isnan(first_n)) ++acc.has_nlos;
        if (real.size() == 0) {
          ++acc.none;
          return;
        }
        const std::size_t k = serving_index(real, eff);
        const bool los = real.is_los[k] != 0;
        ++(los ? acc.los : acc.nlos);
        if (keep_distances) {
          near_l[trial] = first_l;
          near_n[trial] = first_n;
          (los ? serv_l : serv_n)[trial] = real.radius[k];
        }
      });
  Acc tot;
  for (const Acc& a : blocks) {
    tot.los += a.los;
    tot.nlos += a.nlos;
    tot.none += a.none;
    tot.has_los += a.has_los;
    tot.has_nlos += a.has_nlos;
    tot.count_sum += a.count_sum;
    tot.count_sq += a.count_sq;
  }
  const double nd = static_cast<double>(n);
  AssocEstimate est;
  est.n_trials = n;
  est.report.a_los = static_cast<double>(tot.los) / nd;
  est.report.a_nlos = static_cast<double>(tot.nlos) / nd;
  est.report.b_los = static_cast<double>(tot.has_los) / nd;
  est.report.b_nlos = static_cast<double>(tot.has_nlos) / nd;
  est.no_bs = static_cast<double>(tot.none) / nd;
  est.a_los_se = std::sqrt(est.report.a_los * (1.0 - est.report.a_los) / nd);
  est.mean_los_count = tot.count_sum / nd;
  est.mean_los_count_se = stderr_of(tot.count_sum, tot.count_sq, nd);
  auto compact = [](std::vector<double>& v) {
    std::erase_if(v, [](double x) { return std::isnan(x); });
  };
  compact(near_l);
  compact(near_n);
  compact(serv_l);
  compact(serv_n);
  est.nearest_los = std::move(near_l);
  est.nearest_nlos = std::move(near_n);
  est.serving_los = std::move(serv_l);
  est.serving_nlos = std::move(serv_n);
  return est;
}

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::a_dominates:
      return "a_dominates";
    case Verdict::b_dominates:
      return "b_dominates";
    case Verdict::crossing:
      return "crossing";
    case Verdict::indistinguishable:
      return "indistinguishable";
  }
  return "unknown";
}

DominanceResult dominance_check(const NetworkConfig& a, const NetworkConfig& b, const McSettings& settings,
                                std::span<const double> thresholds) {
  check_settings(settings);
  {
    NetworkConfig probe = b;
    probe.tx_antenna = a.tx_antenna;
    probe.rx_antenna = a.rx_antenna;
    if (!(probe == a)) throw UsageError("dominance check: configs may differ only in their antennas");
  }
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    if (!(thresholds[j] > 0.0) || (j > 0 && !(thresholds[j] > thresholds[j - 1]))) {
      throw DomainError("dominance check: thresholds must be positive and increasing");
    }
  }
  const NetworkConfig ea = effective_config(a, settings.dense_mode);
  const NetworkConfig eb = effective_config(b, settings.dense_mode);
  const double window = window_for(ea, settings);
  const std::size_t m = thresholds.size();
  struct Acc {
    std::vector<std::uint64_t> cov_a, cov_b, plus, minus;
    std::uint64_t not_worse = 0;
  };
  auto blocks = run_blocks<Acc>(
      settings.n_trials, settings.threads,
      [m]() {
        return Acc{std::vector<std::uint64_t>(m, 0), std::vector<std::uint64_t>(m, 0),
                   std::vector<std::uint64_t>(m, 0), std::vector<std::uint64_t>(m, 0)};
      },
      [&](Acc& acc, std::uint64_t trial) {
        thread_local Scratch scratch;
        const NetworkRealization real = sample_effective(ea, window, settings.dense_mode, settings.seed, trial);
        const double sa = sinr_with(real, ea, scratch);
        const double sb = sinr_with(real, eb, scratch);
        if (sa >= sb * (1.0 - 1e-12)) ++acc.not_worse;
        for (std::size_t j = 0; j < m; ++j) {
          const bool ca = sa > thresholds[j];
          const bool cb = sb > thresholds[j];
          acc.cov_a[j] += ca;
          acc.cov_b[j] += cb;
          acc.plus[j] += ca && !cb;
          acc.minus[j] += cb && !ca;
        }
      });
  Acc tot{std::vector<std::uint64_t>(m, 0), std::vector<std::uint64_t>(m, 0), std::vector<std::uint64_t>(m, 0),
          std::vector<std::uint64_t>(m, 0)};
  for (const Acc& x : blocks) {
    for (std::size_t j = 0; j < m; ++j) {
      tot.cov_a[j] += x.cov_a[j];
      tot.cov_b[j] += x.cov_b[j];
      tot.plus[j] += x.plus[j];
      tot.minus[j] += x.minus[j];
    }
    tot.not_worse += x.not_worse;
  }
  DominanceResult r;
  r.n_trials = settings.n_trials;
  r.trials_a_not_worse = tot.not_worse;
  const double n = static_cast<double>(settings.n_trials);
  for (CoverageCurve* c : {&r.a, &r.b}) {
    c->provenance = Provenance::monte_carlo;
    c->thresholds.assign(thresholds.begin(), thresholds.end());
  }
  bool pos = false;
  bool neg = false;
  for (std::size_t j = 0; j < m; ++j) {
    const double pa = static_cast<double>(tot.cov_a[j]) / n;
    const double pb = static_cast<double>(tot.cov_b[j]) / n;
    r.a.probabilities.push_back(pa);
    r.b.probabilities.push_back(pb);
    r.a.std_error.push_back(std::sqrt(pa * (1.0 - pa) / n));
    r.b.std_error.push_back(std::sqrt(pb * (1.0 - pb) / n));
    // Paired differences take values in {-1, 0, 1}.
    const double d = static_cast<double>(tot.plus[j]) / n - static_cast<double>(tot.minus[j]) / n;
    const double second = static_cast<double>(tot.plus[j] + tot.minus[j]) / n;
    const double se = n > 1 ? std::sqrt(std::max(0.0, second - d * d) / (n - 1.0)) : 0.0;
    r.difference.push_back(d);
    r.difference_se.push_back(se);
    if (d > 3.0 * se && d > 0.0) pos = true;
    if (d < -3.0 * se && d < 0.0) neg = true;
  }
  r.verdict = pos && neg ? Verdict::crossing
              : pos      ? Verdict::a_dominates
              : neg      ? Verdict::b_dominates
                         : Verdict::indistinguishable;
  return r;
}

}  // namespace mmwcov
