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

#include "mmwcov/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

#include "mmwcov/analytic.hpp"

namespace mmwcov {
namespace {

enum class Kind { gain, db, power, length, angle, freq, density, real, count, seed, boolean, text, rate_model,
                  gain_grid, real_grid, length_grid, table };

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Quantity {
  double value;
  std::string unit;
};

std::optional<Quantity> parse_quantity(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  const char* begin = t.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return Quantity{v, trim(std::string_view(end))};
}

// Converts a quantity of the given kind to internal units, or returns an error text.
std::variant<double, std::string> convert(Kind kind, const Quantity& q) {
  const std::string& u = q.unit;
  auto bad_unit = [&](std::string_view expects) -> std::string {
    return "unit '" + u + "' does not fit (expects " + std::string(expects) + ")";
  };
  switch (kind) {
    case Kind::gain:
      if (u.empty()) return q.value;
      if (u == "dB") return db_to_linear(q.value);
      return bad_unit("a linear ratio or dB");
    case Kind::db:
      if (u.empty() || u == "dB") return q.value;
      return bad_unit("dB");
    case Kind::power:
      if (u == "dBm") return q.value;
      if (u == "W" && q.value > 0.0) return 10.0 * std::log10(q.value) + 30.0;
      if (u == "mW" && q.value > 0.0) return 10.0 * std::log10(q.value);
      if (u == "W" || u == "mW") return std::string("power must be > 0");
      return bad_unit("dBm, W or mW");
    case Kind::length:
      if (u.empty() || u == "m") return q.value;
      if (u == "km") return q.value * 1e3;
      return bad_unit("m or km");
    case Kind::angle:
      if (u.empty() || u == "rad") return q.value;
      if (u == "deg") return q.value * std::numbers::pi / 180.0;
      return bad_unit("deg or rad");
    case Kind::freq:
      if (u.empty() || u == "Hz") return q.value;
      if (u == "kHz") return q.value * 1e3;
      if (u == "MHz") return q.value * 1e6;
      if (u == "GHz") return q.value * 1e9;
      return bad_unit("Hz, kHz, MHz or GHz");
    case Kind::density:
      if (u.empty() || u == "/m2" || u == "1/m2") return q.value;
      if (u == "/km2" || u == "1/km2") return q.value * 1e-6;
      return bad_unit("1/m2 or 1/km2");
    case Kind::real:
      if (u.empty()) return q.value;
      return bad_unit("a plain number");
    case Kind::count:
      if (!u.empty()) return bad_unit("a plain number");
      if (q.value != std::floor(q.value) || q.value < 0.0) return std::string("must be a non-negative integer");
      return q.value;
    default:
      return std::string("internal: not a scalar kind");
  }
}

struct Entry {
  std::string value;
  std::string where;  // "line N" or "--set"
};

class Resolver {
 public:
  explicit Resolver(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  std::vector<std::string> problems;

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  void problem(const std::string& key, const std::string& msg) {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? "scenario" : it->second.where;
    problems.push_back(where + ": " + key + ": " + msg);
  }

  // Marks a key as understood and returns its raw value.
  std::optional<std::string> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert({key, true});
    return it->second.value;
  }

  bool scalar(const std::string& key, Kind kind, double& out) {
    const auto raw = take(key);
    if (!raw) return false;
    const auto q = parse_quantity(*raw);
    if (!q) {
      problem(key, "'" + *raw + "' is not a number");
      return false;
    }
    const auto r = convert(kind, *q);
    if (const auto* err = std::get_if<std::string>(&r)) {
      problem(key, *err);
      return false;
    }
    out = std::get<double>(r);
    return true;
  }

  bool positive_int(const std::string& key, int& out) {
    double v = 0.0;
    if (!scalar(key, Kind::real, v)) return false;
    if (v != std::floor(v) || v < 1.0 || v > 1e6) {
      problem(key, "must be a positive integer");
      return false;
    }
    out = static_cast<int>(v);
    return true;
  }

  bool boolean(const std::string& key, bool& out) {
    const auto raw = take(key);
    if (!raw) return false;
    if (*raw == "true" || *raw == "yes" || *raw == "1") {
      out = true;
    } else if (*raw == "false" || *raw == "no" || *raw == "0") {
      out = false;
    } else {
      problem(key, "expects true or false");
      return false;
    }
    return true;
  }

  // a:b:step, a:b:logK or a comma list, with an optional trailing unit.
  bool grid(const std::string& key, Kind kind, std::vector<double>& out) {
    const auto raw = take(key);
    if (!raw) return false;
    std::string body = trim(*raw);
    std::string unit;
    const auto sp = body.find_last_of(" \t");
    if (sp != std::string::npos && !parse_quantity(body.substr(sp + 1))) {
      unit = trim(body.substr(sp + 1));
      body = trim(body.substr(0, sp));
    }
    auto to_internal = [&](double v) -> std::optional<double> {
      const auto r = convert(kind, Quantity{v, unit});
      if (const auto* err = std::get_if<std::string>(&r)) {
        problem(key, *err);
        return std::nullopt;
      }
      return std::get<double>(r);
    };
    std::vector<double> raw_values;
    if (body.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(body);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
      if (parts.size() != 3) {
        problem(key, "range must look like lo:hi:step or lo:hi:logN");
        return false;
      }
      const auto lo = parse_quantity(parts[0]);
      const auto hi = parse_quantity(parts[1]);
      if (!lo || !hi || !lo->unit.empty() || !hi->unit.empty() || hi->value < lo->value) {
        problem(key, "range bounds must be numbers with lo <= hi");
        return false;
      }
      if (parts[2].rfind("log", 0) == 0) {
        const auto n = parse_quantity(parts[2].substr(3));
        if (!n || !n->unit.empty() || n->value < 2 || n->value != std::floor(n->value) || lo->value <= 0.0) {
          problem(key, "logN needs an integer N >= 2 and lo > 0");
          return false;
        }
        const int count = static_cast<int>(n->value);
        const double a = std::log(lo->value);
        const double b = std::log(hi->value);
        for (int i = 0; i < count; ++i) raw_values.push_back(std::exp(a + (b - a) * i / (count - 1)));
      } else {
        const auto step = parse_quantity(parts[2]);
        if (!step || !step->unit.empty() || !(step->value > 0.0)) {
          problem(key, "range step must be a positive number");
          return false;
        }
        const auto n = static_cast<long>(std::floor((hi->value - lo->value) / step->value + 1e-9));
        if (n > 1000000) {
          problem(key, "range has too many points");
          return false;
        }
        for (long i = 0; i <= n; ++i) raw_values.push_back(lo->value + static_cast<double>(i) * step->value);
      }
    } else {
      std::stringstream ss(body);
      for (std::string p; std::getline(ss, p, ',');) {
        const auto q = parse_quantity(p);
        if (!q || !q->unit.empty()) {
          problem(key, "'" + trim(p) + "' is not a number");
          return false;
        }
        raw_values.push_back(q->value);
      }
    }
    if (raw_values.empty()) {
      problem(key, "grid is empty");
      return false;
    }
    std::vector<double> values;
    for (double v : raw_values) {
      const auto c = to_internal(v);
      if (!c) return false;
      values.push_back(*c);
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i] > values[i - 1])) {
        problem(key, "grid values must be strictly increasing");
        return false;
      }
    }
    out = std::move(values);
    return true;
  }

  void report_unknown() {
    for (const auto& [key, e] : entries_) {
      if (!used_.count(key)) problems.push_back(e.where + ": unknown key '" + key + "'");
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::map<std::string, bool> used_;
};

void antenna_keys(Resolver& r, const std::string& prefix, SectoredAntenna& ant) {
  r.scalar(prefix + ".main", Kind::gain, ant.main_gain);
  r.scalar(prefix + ".side", Kind::gain, ant.side_gain);
  r.scalar(prefix + ".beamwidth", Kind::angle, ant.beamwidth);
}

constexpr std::pair<Job, std::string_view> kJobs[] = {
    {Job::coverage, "coverage"}, {Job::rate, "rate"},           {Job::assoc, "assoc"},
    {Job::dense, "dense"},       {Job::sweep, "sweep"},         {Job::dominance, "dominance"},
    {Job::validate, "validate"}};

}  // namespace

std::string_view job_name(Job j) noexcept {
  for (const auto& [job, name] : kJobs) {
    if (job == j) return name;
  }
  return "unknown";
}

ParseError::ParseError(std::vector<std::string> problems)
    : std::invalid_argument([&problems] {
        std::string msg = "scenario has " + std::to_string(problems.size()) + " problem(s):";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides) {
  std::vector<std::string> problems;
  std::map<std::string, Entry> entries;
  std::map<std::string, std::string> first_line;

  auto add = [&](std::string_view line, const std::string& where, bool override) {
    std::string s(line);
    if (const auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    s = trim(s);
    if (s.empty()) return;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      problems.push_back(where + ": expected 'section.key = value'");
      return;
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) {
      problems.push_back(where + ": missing key before '='");
      return;
    }
    if (value.empty()) {
      problems.push_back(where + ": " + key + ": missing value");
      return;
    }
    if (!override && entries.count(key)) {
      problems.push_back(where + ": " + key + ": duplicate key (first set at " + entries[key].where + ")");
      return;
    }
    entries[key] = Entry{value, where};
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    add(text.substr(pos, end - pos), "line " + std::to_string(line_no), false);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  for (const auto& o : overrides) add(o, "--set " + o, true);

  Resolver r(std::move(entries));
  r.problems = std::move(problems);
  Scenario sc;
  NetworkConfig& net = sc.network;

  if (const auto job = r.take("job")) {
    bool found = false;
    for (const auto& [j, name] : kJobs) {
      if (*job == name) {
        sc.job = j;
        found = true;
      }
    }
    if (!found) r.problem("job", "unknown job '" + *job + "' (coverage, rate, assoc, dense, sweep, dominance, validate)");
  }
  if (const auto v = r.take("output.csv")) sc.csv_path = *v;
  if (const auto v = r.take("output.manifest")) sc.manifest_path = *v;

  // Network and link budget.
  r.scalar("network.carrier", Kind::freq, sc.carrier_hz);
  r.scalar("network.bandwidth", Kind::freq, net.bandwidth);
  r.scalar("network.tx_power", Kind::power, sc.tx_power_dbm);
  r.scalar("network.noise_figure", Kind::db, sc.noise_figure_db);
  r.scalar("network.blockage_fraction", Kind::real, net.blockage_fraction);
  r.scalar("network.sinr_cap", Kind::gain, net.sinr_cap);
  double density = 0.0;
  double cell_radius = 0.0;
  const bool has_density = r.scalar("network.density", Kind::density, density);
  const bool has_radius = r.scalar("network.cell_radius", Kind::length, cell_radius);
  if (has_density && has_radius) r.problem("network.cell_radius", "give either network.density or network.cell_radius");
  if (has_density) net.bs_density = density;
  if (has_radius) {
    if (cell_radius > 0.0) {
      net.bs_density = density_from_cell_radius(cell_radius);
    } else {
      r.problem("network.cell_radius", "must be > 0");
    }
  }
  net.tx_power = db_to_linear(sc.tx_power_dbm - 30.0);
  if (!(sc.carrier_hz > 0.0)) r.problem("network.carrier", "must be > 0");
  if (!(net.bandwidth > 0.0)) r.problem("network.bandwidth", "must be > 0");

  // LOS law.
  std::string model = "exp";
  if (const auto m = r.take("los.model")) model = *m;
  double beta = 0.0;
  double beta_inv = 0.0;
  double ball_radius = 0.0;
  const bool has_beta = r.scalar("los.beta", Kind::real, beta);
  const bool has_beta_inv = r.scalar("los.beta_inv", Kind::length, beta_inv);
  const bool has_ball = r.scalar("los.radius", Kind::length, ball_radius);
  const auto table = r.take("los.table");
  auto not_for = [&](bool present, const std::string& key) {
    if (present) r.problem(key, "does not apply to los.model = " + model);
  };
  try {
    if (model == "exp") {
      not_for(has_ball, "los.radius");
      not_for(table.has_value(), "los.table");
      if (has_beta && has_beta_inv) {
        r.problem("los.beta_inv", "give either los.beta or los.beta_inv");
      } else if (has_beta) {
        net.los = LosModel::exponential(beta);
      } else if (has_beta_inv) {
        if (beta_inv > 0.0) {
          net.los = LosModel::exponential(1.0 / beta_inv);
        } else {
          r.problem("los.beta_inv", "must be > 0");
        }
      }
    } else if (model == "ball") {
      not_for(has_beta, "los.beta");
      not_for(has_beta_inv, "los.beta_inv");
      not_for(table.has_value(), "los.table");
      if (!has_ball) {
        r.problem("los.model", "ball needs los.radius");
      } else {
        net.los = LosModel::ball(ball_radius);
      }
    } else if (model == "table") {
      not_for(has_beta, "los.beta");
      not_for(has_beta_inv, "los.beta_inv");
      not_for(has_ball, "los.radius");
      if (!table) {
        r.problem("los.model", "table needs los.table = r:p, r:p, ...");
      } else {
        std::vector<std::pair<double, double>> samples;
        std::stringstream ss(*table);
        bool ok = true;
        for (std::string item; std::getline(ss, item, ',');) {
          const auto colon = item.find(':');
          const auto rq = parse_quantity(item.substr(0, colon));
          const auto pq = colon == std::string::npos ? std::nullopt : parse_quantity(item.substr(colon + 1));
          if (!rq || !pq || !pq->unit.empty() || !(rq->unit.empty() || rq->unit == "m")) {
            r.problem("los.table", "entry '" + trim(item) + "' is not 'radius:prob'");
            ok = false;
            break;
          }
          samples.emplace_back(rq->value, pq->value);
        }
        if (ok) net.los = LosModel::tabulated(std::move(samples));
      }
    } else {
      r.problem("los.model", "unknown model '" + model + "' (exp, ball, table)");
    }
  } catch (const DomainError& e) {
    r.problem("los.model", e.what());
  }

  // Path loss, fading and antennas.
  r.scalar("pathloss.alpha_los", Kind::real, net.pathloss.alpha_los);
  r.scalar("pathloss.alpha_nlos", Kind::real, net.pathloss.alpha_nlos);
  const double fs = sc.carrier_hz > 0.0 ? free_space_intercept(sc.carrier_hz) : 1.0;
  net.pathloss.intercept_los = fs;
  net.pathloss.intercept_nlos = fs;
  r.scalar("pathloss.intercept_los", Kind::gain, net.pathloss.intercept_los);
  r.scalar("pathloss.intercept_nlos", Kind::gain, net.pathloss.intercept_nlos);
  r.positive_int("fading.n_los", net.fading.n_los);
  r.positive_int("fading.n_nlos", net.fading.n_nlos);
  antenna_keys(r, "antenna.tx", net.tx_antenna);
  antenna_keys(r, "antenna.rx", net.rx_antenna);

  if (net.bandwidth > 0.0) net.noise_norm = thermal_noise_norm(net.bandwidth, sc.noise_figure_db, sc.tx_power_dbm);
  r.scalar("network.noise", Kind::gain, net.noise_norm);

  // Job parameters.
  if (!r.grid("thresholds.grid", Kind::gain, sc.thresholds)) sc.thresholds = db_grid(-10.0, 40.0, 1.0);
  double trials = 0.0;
  if (r.scalar("mc.trials", Kind::count, trials)) sc.mc.n_trials = static_cast<std::uint64_t>(trials);
  if (const auto seed = r.take("mc.seed")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(seed->c_str(), &end, 10);
    if (end == seed->c_str() || *end != '\0' || errno == ERANGE || (*seed)[0] == '-') {
      r.problem("mc.seed", "must be an unsigned 64-bit integer");
    } else {
      sc.mc.seed = v;
    }
  }
  r.scalar("mc.window", Kind::length, sc.mc.window_radius);
  double threads = 1.0;
  if (r.scalar("mc.threads", Kind::count, threads)) sc.mc.threads = static_cast<unsigned>(threads);
  r.boolean("mc.dense", sc.mc.dense_mode);
  if (!(sc.mc.window_radius >= 0.0)) r.problem("mc.window", "must be >= 0 (0 selects the default)");

  r.grid("dense.rho", Kind::real, sc.rho);
  for (double v : sc.rho) {
    if (!(v > 0.0)) {
      r.problem("dense.rho", "values must be > 0");
      break;
    }
  }
  r.positive_int("dense.terms", sc.dense_terms);
  r.scalar("dense.alpha", Kind::real, sc.dense_alpha);
  r.scalar("dense.mu", Kind::real, sc.dense_mu);
  if (sc.dense_alpha < 0.0) r.problem("dense.alpha", "must be > 0 (or 0 for the LOS exponent)");
  if (sc.dense_mu < 0.0) r.problem("dense.mu", "must be > 0 (or 0 for the default)");

  if (const auto v = r.take("sweep.var")) {
    if (*v == "rho") {
      sc.sweep_var = SweepVar::rho;
    } else if (*v == "cell_radius") {
      sc.sweep_var = SweepVar::cell_radius;
    } else {
      r.problem("sweep.var", "unknown sweep variable '" + *v + "' (rho, cell_radius)");
    }
  }
  r.grid("sweep.grid", sc.sweep_var == SweepVar::cell_radius ? Kind::length : Kind::real, sc.sweep_grid);
  for (double v : sc.sweep_grid) {
    if (!(v > 0.0)) {
      r.problem("sweep.grid", "values must be > 0");
      break;
    }
  }
  r.scalar("sweep.threshold", Kind::gain, sc.sweep_threshold);
  if (!(sc.sweep_threshold > 0.0)) r.problem("sweep.threshold", "must be > 0");
  if (sc.job == Job::sweep && sc.sweep_grid.empty()) r.problem("sweep.grid", "the sweep job needs sweep.grid");

  if (const auto v = r.take("rate.model")) {
    if (*v == "dense") {
      sc.rate_dense = true;
    } else if (*v == "general") {
      sc.rate_dense = false;
    } else {
      r.problem("rate.model", "expects general or dense");
    }
  }

  sc.dominance_b_tx = net.tx_antenna;
  sc.dominance_b_rx = net.rx_antenna;
  antenna_keys(r, "dominance.b.antenna.tx", sc.dominance_b_tx);
  antenna_keys(r, "dominance.b.antenna.rx", sc.dominance_b_rx);

  r.report_unknown();
  try {
    net.validate();
  } catch (const DomainError& e) {
    r.problems.push_back(e.what());
  }
  {
    std::vector<std::string> ant;
    sc.dominance_b_tx.validate("dominance.b tx antenna", ant);
    sc.dominance_b_rx.validate("dominance.b rx antenna", ant);
    for (auto& a : ant) r.problems.push_back(a);
  }
  if (!r.problems.empty()) {
    auto line_of = [](const std::string& p) {
      return p.rfind("line ", 0) == 0 ? std::strtol(p.c_str() + 5, nullptr, 10) : 1L << 30;
    };
    std::stable_sort(r.problems.begin(), r.problems.end(),
                     [&](const std::string& a, const std::string& b) { return line_of(a) < line_of(b); });
    throw ParseError(std::move(r.problems));
  }
  return sc;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream o;
  const NetworkConfig& n = s.network;
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
    return out;
  };
  auto antenna = [&](const std::string& prefix, const SectoredAntenna& a) {
    o << prefix << ".main = " << fmt(a.main_gain) << "\n";
    o << prefix << ".side = " << fmt(a.side_gain) << "\n";
    o << prefix << ".beamwidth = " << fmt(a.beamwidth) << " rad\n";
  };
  o << "job = " << job_name(s.job) << "\n";
  if (!s.csv_path.empty()) o << "output.csv = " << s.csv_path << "\n";
  if (!s.manifest_path.empty()) o << "output.manifest = " << s.manifest_path << "\n";
  o << "network.density = " << fmt(n.bs_density) << " /m2\n";
  o << "network.blockage_fraction = " << fmt(n.blockage_fraction) << "\n";
  o << "network.carrier = " << fmt(s.carrier_hz) << " Hz\n";
  o << "network.bandwidth = " << fmt(n.bandwidth) << " Hz\n";
  o << "network.tx_power = " << fmt(s.tx_power_dbm) << " dBm\n";
  o << "network.noise_figure = " << fmt(s.noise_figure_db) << " dB\n";
  o << "network.noise = " << fmt(n.noise_norm) << "\n";
  o << "network.sinr_cap = " << fmt(n.sinr_cap) << "\n";
  if (const auto* e = std::get_if<ExponentialLos>(&n.los.kind())) {
    o << "los.model = exp\nlos.beta = " << fmt(e->beta) << "\n";
  } else if (const auto* b = std::get_if<BallLos>(&n.los.kind())) {
    o << "los.model = ball\nlos.radius = " << fmt(b->radius) << " m\n";
  } else {
    const auto& t = std::get<TabulatedLos>(n.los.kind());
    o << "los.model = table\nlos.table = ";
    for (std::size_t i = 0; i < t.radius.size(); ++i) o << (i ? ", " : "") << fmt(t.radius[i]) << ":" << fmt(t.prob[i]);
    o << "\n";
  }
  o << "pathloss.alpha_los = " << fmt(n.pathloss.alpha_los) << "\n";
  o << "pathloss.alpha_nlos = " << fmt(n.pathloss.alpha_nlos) << "\n";
  o << "pathloss.intercept_los = " << fmt(n.pathloss.intercept_los) << "\n";
  o << "pathloss.intercept_nlos = " << fmt(n.pathloss.intercept_nlos) << "\n";
  o << "fading.n_los = " << n.fading.n_los << "\n";
  o << "fading.n_nlos = " << n.fading.n_nlos << "\n";
  antenna("antenna.tx", n.tx_antenna);
  antenna("antenna.rx", n.rx_antenna);
  o << "thresholds.grid = " << list(s.thresholds) << "\n";
  o << "mc.trials = " << s.mc.n_trials << "\n";
  o << "mc.seed = " << s.mc.seed << "\n";
  o << "mc.window = " << fmt(s.mc.window_radius) << " m\n";
  o << "mc.threads = " << s.mc.threads << "\n";
  o << "mc.dense = " << (s.mc.dense_mode ? "true" : "false") << "\n";
  if (!s.rho.empty()) o << "dense.rho = " << list(s.rho) << "\n";
  o << "dense.terms = " << s.dense_terms << "\n";
  o << "dense.alpha = " << fmt(s.dense_alpha) << "\n";
  o << "dense.mu = " << fmt(s.dense_mu) << "\n";
  o << "sweep.var = " << (s.sweep_var == SweepVar::rho ? "rho" : "cell_radius") << "\n";
  if (!s.sweep_grid.empty()) o << "sweep.grid = " << list(s.sweep_grid) << "\n";
  o << "sweep.threshold = " << fmt(s.sweep_threshold) << "\n";
  o << "rate.model = " << (s.rate_dense ? "dense" : "general") << "\n";
  antenna("dominance.b.antenna.tx", s.dominance_b_tx);
  antenna("dominance.b.antenna.rx", s.dominance_b_rx);
  return o.str();
}

}  // namespace mmwcov
