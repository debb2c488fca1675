#include "qwalk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <thread>

#include "qwalk/errors.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/times.hpp"

namespace qwalk {

namespace {

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// Callers write results into slot i, so output order never depends on
// scheduling.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const char* command) {
  if (!j.is_object()) throw ConfigError(std::string(command) + ": configuration must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) {
      throw ConfigError(std::string(command) + ": unknown configuration key '" + it.key() + "'");
    }
  }
}

double read_angle(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ConfigError(std::string("'") + key + "' must be a number or an angle expression like pi/4");
}

double read_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t pos = 0;
      const double d = std::stod(v.get<std::string>(), &pos);
      if (pos == v.get<std::string>().size()) return d;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(std::string("'") + key + "' must be a number");
}

std::int64_t read_int(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d) return static_cast<std::int64_t>(d);
  }
  throw ConfigError(std::string("'") + key + "' must be an integer");
}

std::vector<double> read_epsilons(const Json& j, const std::vector<double>& fallback) {
  if (!j.contains("epsilon")) return fallback;
  const Json& v = j.at("epsilon");
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError("'epsilon' entries must be numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw ConfigError("'epsilon' must be a number or an array of numbers");
  }
  return out;
}

void check_epsilons(const std::vector<double>& eps) {
  if (eps.empty()) throw ConfigError("at least one epsilon is required");
  for (double e : eps) {
    if (!(e > 0.0)) throw ConfigError("epsilon must be positive, got " + format_number(e));
  }
}

void check_t_max(std::int64_t t_max, std::int64_t lo) {
  if (t_max < lo || t_max > kDefaultMaxSteps) {
    throw ConfigError("t-max must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(kDefaultMaxSteps) + "], got " + std::to_string(t_max));
  }
}

// Wraps library domain errors so the CLI reports them as validation errors.
template <class F>
void as_config_error(F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

// T/T_0 from inverse temperatures; infinite T maps to inf.
double temperature_ratio(double beta, double beta0) {
  if (std::isnan(beta0)) return std::nan("");
  if (beta == 0.0) return std::numeric_limits<double>::infinity();
  return beta0 / beta;
}

double characteristic_beta_or_nan(std::int64_t n, double theta, double e0) {
  if (theta <= 0.0 || theta >= kPi / 2) return std::nan("");
  try {
    return beta_from_chi(characteristic_chi(n, theta), e0);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

const char* convention_name(TemperatureConvention c) {
  return c == TemperatureConvention::kCanonical ? "canonical" : "literal";
}

}  // namespace

double parse_angle(const std::string& text) {
  static const std::regex number(R"(^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$)");
  static const std::regex pi_expr(
      R"(^\s*([+-]?)\s*(\d+\.?\d*|\.\d+)?\s*\*?\s*pi\s*(/\s*(\d+\.?\d*|\.\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, number)) return std::stod(text);
  if (std::regex_match(text, m, pi_expr)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[4].matched) {
      const double d = std::stod(m[4].str());
      if (d == 0.0) throw ConfigError("angle '" + text + "' divides by zero");
      v /= d;
    }
    if (m[1].str() == "-") v = -v;
    return v;
  }
  throw ConfigError("cannot parse angle '" + text + "' (use a number or forms like pi/4, 3pi/4)");
}

std::vector<std::int64_t> parse_n_range(const std::string& text) {
  static const std::regex range(R"(^\s*(\d+)\s*:\s*(\d+)\s*(:\s*(\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, range)) {
    throw ConfigError("cannot parse n-range '" + text + "' (expected a:b or a:b:step)");
  }
  const std::int64_t lo = std::stoll(m[1].str());
  const std::int64_t hi = std::stoll(m[2].str());
  const std::int64_t stride = m[4].matched ? std::stoll(m[4].str()) : 1;
  if (stride <= 0) throw ConfigError("n-range step must be positive");
  if (hi < lo) throw ConfigError("n-range '" + text + "' is empty");
  std::vector<std::int64_t> out;
  for (std::int64_t n = lo; n <= hi; n += stride) out.push_back(n);
  return out;
}

double isotherm_band(double ratio) {
  double band = 0.0;
  for (double level : kIsothermLevels) {
    if (ratio >= level) band = level;
  }
  return band;
}

// ---------------------------------------------------------------- simulate

SimulateConfig SimulateConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"n", "theta", "gamma", "phi", "e0", "t-max", "temperature-convention"},
                      "simulate");
  SimulateConfig c;
  c.n = read_int(j, "n", c.n);
  c.theta = read_angle(j, "theta", c.theta);
  c.gamma = read_angle(j, "gamma", c.gamma);
  c.phi = read_angle(j, "phi", c.phi);
  c.e0 = read_number(j, "e0", c.e0);
  c.t_max = read_int(j, "t-max", c.t_max);
  if (j.contains("temperature-convention")) {
    const std::string conv = j.at("temperature-convention").get<std::string>();
    if (conv == "canonical") {
      c.convention = TemperatureConvention::kCanonical;
    } else if (conv == "literal") {
      c.convention = TemperatureConvention::kLiteralTransient;
    } else {
      throw ConfigError("temperature-convention must be 'canonical' or 'literal'");
    }
  }
  return c;
}

Json SimulateConfig::to_json() const {
  return Json{{"n", n},         {"theta", theta}, {"gamma", gamma},
              {"phi", phi},     {"e0", e0},       {"t-max", t_max},
              {"temperature-convention", convention_name(convention)}};
}

void SimulateConfig::validate() const {
  as_config_error([&] {
    WalkParams{n, theta, gamma, wrap_phase(phi), e0}.validate();
  });
  check_t_max(t_max, 0);
}

Dataset run_simulate(const SimulateConfig& cfg) {
  cfg.validate();
  const WalkParams params{cfg.n, cfg.theta, cfg.gamma, wrap_phase(cfg.phi), cfg.e0};

  Dataset ds;
  ds.command = "simulate";
  ds.config = cfg.to_json();
  ds.columns = {"t", "P_L", "P_R", "Re_Q", "Im_Q", "S", "Lambda_plus_avg", "T_over_T0"};

  const double beta0 = characteristic_beta_or_nan(cfg.n, cfg.theta, cfg.e0);
  if (std::isnan(beta0)) {
    ds.summary.push_back("T_0 is undefined for theta=" + format_number(cfg.theta) +
                         "; T_over_T0 column is nan");
  } else {
    ds.summary.push_back("T_0=" + format_number(beta0 > 0 ? 1.0 / beta0 : INFINITY));
  }

  WalkState cur = localized_initial_state(params);
  WalkState next = WalkState::zeros(cfg.n);
  double sum_pl = 0.0, sum_pr = 0.0;
  cplx sum_q{};
  ds.rows.reserve(static_cast<std::size_t>(cfg.t_max) + 1);
  for (std::int64_t t = 0; t <= cfg.t_max; ++t) {
    const CoinDensity rho = coin_density(cur);
    sum_pl += rho.p_left;
    sum_pr += rho.p_right;
    sum_q += rho.q;
    const double inv = 1.0 / static_cast<double>(t + 1);
    const CoinDensity avg{sum_pl * inv, sum_pr * inv, sum_q * inv};
    const ThermoState th = transient_temperature(avg, cfg.e0, cfg.convention);
    ds.rows.push_back({t, rho.p_left, rho.p_right, rho.q.real(), rho.q.imag(),
                       entanglement_entropy(rho), th.lambda_plus,
                       temperature_ratio(th.beta, beta0)});
    if (t < cfg.t_max) {
      step_into(cur, cfg.theta, next);
      std::swap(cur, next);
    }
  }
  return ds;
}

// ---------------------------------------------------------------- isotherms

IsothermConfig IsothermConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"n", "theta", "e0", "grid"}, "isotherms");
  IsothermConfig c;
  c.n = read_int(j, "n", c.n);
  c.theta = read_angle(j, "theta", c.theta);
  c.e0 = read_number(j, "e0", c.e0);
  c.grid = read_int(j, "grid", c.grid);
  return c;
}

Json IsothermConfig::to_json() const {
  return Json{{"n", n}, {"theta", theta}, {"e0", e0}, {"grid", grid}};
}

void IsothermConfig::validate() const {
  if (n < 3) throw ConfigError("n must be >= 3, got " + std::to_string(n));
  if (!(theta > 0.0 && theta < kPi / 2)) {
    throw ConfigError("isotherms need theta in (0, pi/2), got " + format_number(theta));
  }
  as_config_error([&] { validate_energy_scale(e0); });
  if (grid < 2 || grid > 4001) {
    throw ConfigError("grid must lie in [2, 4001], got " + std::to_string(grid));
  }
}

Dataset run_isotherms(const IsothermConfig& cfg) {
  cfg.validate();
  Dataset ds;
  ds.command = "isotherms";
  ds.config = cfg.to_json();
  ds.columns = {"gamma", "phi", "chi", "T_over_T0", "level_band"};

  const double beta0 = beta_from_chi(characteristic_chi(cfg.n, cfg.theta), cfg.e0);
  const auto g = static_cast<std::size_t>(cfg.grid);
  const double denom = static_cast<double>(cfg.grid - 1);
  std::vector<std::vector<std::vector<Cell>>> blocks(g);
  parallel_for(g, [&](std::size_t i) {
    const double gamma = kPi * static_cast<double>(i) / denom;
    auto& block = blocks[i];
    block.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
      const double phi = -kPi / 2 + kPi * static_cast<double>(k) / denom;
      const WalkParams p{cfg.n, cfg.theta, gamma, wrap_phase(phi), cfg.e0};
      const double chi = std::clamp(chi_isotherm(p), 0.0, 0.25);
      const double ratio = temperature_ratio(beta_from_chi(chi, cfg.e0), beta0);
      block.push_back({gamma, phi, chi, ratio, isotherm_band(ratio)});
    }
  });
  for (auto& block : blocks) {
    for (auto& row : block) ds.rows.push_back(std::move(row));
  }

  std::string levels = "contour levels T/T0:";
  for (double l : kIsothermLevels) levels += " " + format_number(l);
  ds.summary.push_back(levels);
  ds.summary.push_back("T_0=" + format_number(1.0 / beta0));
  return ds;
}

// ---------------------------------------------------------------- mixing sweep

MixingSweepConfig MixingSweepConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"n", "n-range", "theta", "gamma", "phi", "e0", "epsilon", "t-max"},
                      "mixing-sweep");
  MixingSweepConfig c;
  if (j.contains("n-range") && j.contains("n")) {
    throw ConfigError("mixing-sweep: give either n or n-range, not both");
  }
  if (j.contains("n-range")) {
    c.n_values = parse_n_range(j.at("n-range").get<std::string>());
  } else if (j.contains("n")) {
    const Json& v = j.at("n");
    c.n_values.clear();
    if (v.is_array()) {
      for (const auto& e : v) c.n_values.push_back(e.get<std::int64_t>());
    } else {
      c.n_values.push_back(read_int(j, "n", 3));
    }
  }
  c.theta = read_angle(j, "theta", c.theta);
  c.gamma = read_angle(j, "gamma", c.gamma);
  c.phi = read_angle(j, "phi", c.phi);
  c.e0 = read_number(j, "e0", c.e0);
  c.epsilons = read_epsilons(j, c.epsilons);
  c.t_max = read_int(j, "t-max", c.t_max);
  return c;
}

Json MixingSweepConfig::to_json() const {
  return Json{{"n", n_values}, {"theta", theta}, {"gamma", gamma},   {"phi", phi},
              {"e0", e0},      {"epsilon", epsilons}, {"t-max", t_max}};
}

void MixingSweepConfig::validate() const {
  if (n_values.empty()) throw ConfigError("mixing-sweep: the N list is empty");
  for (std::int64_t n : n_values) {
    as_config_error([&] { WalkParams{n, theta, gamma, wrap_phase(phi), e0}.validate(); });
  }
  check_epsilons(epsilons);
  check_t_max(t_max, 1);
}

Dataset run_mixing_sweep(const MixingSweepConfig& cfg) {
  cfg.validate();
  Dataset ds;
  ds.command = "mixing-sweep";
  ds.config = cfg.to_json();
  ds.columns = {"N",           "epsilon",          "tau_mix",          "tau_thermal", "c",
                "tau_thermal_c_eps", "mix_satisfied", "thermal_satisfied", "thermal_c_eps_satisfied"};

  const std::size_t ne = cfg.epsilons.size();
  std::vector<ConvergenceScan> scans(cfg.n_values.size());
  parallel_for(cfg.n_values.size(), [&](std::size_t i) {
    const WalkParams p{cfg.n_values[i], cfg.theta, cfg.gamma, wrap_phase(cfg.phi), cfg.e0};
    AveragedDensitySeries series(decompose(localized_initial_state(p), p.theta));
    const CoinDensity limit = series.asymptotic();
    const double beta_inf = beta_from_chi(chi_of_density(limit), p.energy_scale);
    std::vector<double> thermal;
    if (std::isfinite(beta_inf)) {
      const double c = linearization_constant(beta_inf, p.energy_scale);
      thermal = cfg.epsilons;
      for (double e : cfg.epsilons) thermal.push_back(c * e);
    }
    scans[i] = scan_convergence([&series](std::int64_t) { return series.next(); }, limit,
                                p.energy_scale, cfg.epsilons, thermal, cfg.t_max);
  });

  const double nan = std::nan("");
  for (std::size_t i = 0; i < scans.size(); ++i) {
    const auto& s = scans[i];
    const bool has_thermal = !s.thermalization.empty();
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& mix = s.mixing[e];
      std::vector<Cell> row{cfg.n_values[i], cfg.epsilons[e], mix.tau};
      if (has_thermal) {
        const auto& th = s.thermalization[e];
        const auto& thc = s.thermalization[ne + e];
        row.insert(row.end(), {th.tau, s.c_constant, thc.tau,
                               std::int64_t{mix.satisfied}, std::int64_t{th.satisfied},
                               std::int64_t{thc.satisfied}});
        if (!th.satisfied || !thc.satisfied) {
          ds.summary.push_back("thermalization horizon t_max=" + std::to_string(cfg.t_max) +
                               " reached unsatisfied for N=" + std::to_string(cfg.n_values[i]) +
                               ", epsilon=" + format_number(cfg.epsilons[e]));
          ds.exit_code = 2;
        }
      } else {
        row.insert(row.end(), {nan, s.c_constant, nan, std::int64_t{mix.satisfied},
                               std::int64_t{0}, std::int64_t{0}});
        ds.summary.push_back("N=" + std::to_string(cfg.n_values[i]) +
                             ": asymptotic coin is pure, thermalization time undefined");
      }
      if (!mix.satisfied) {
        ds.summary.push_back("mixing horizon t_max=" + std::to_string(cfg.t_max) +
                             " reached unsatisfied for N=" + std::to_string(cfg.n_values[i]) +
                             ", epsilon=" + format_number(cfg.epsilons[e]));
        ds.exit_code = 2;
      }
      ds.rows.push_back(std::move(row));
    }
  }
  return ds;
}

// ---------------------------------------------------------------- markov

MarkovConfig MarkovConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"theta", "p-left", "e0", "epsilon", "t-max"}, "markov");
  MarkovConfig c;
  c.theta = read_angle(j, "theta", c.theta);
  c.p_left = read_number(j, "p-left", c.p_left);
  c.e0 = read_number(j, "e0", c.e0);
  c.epsilons = read_epsilons(j, c.epsilons);
  c.t_max = read_int(j, "t-max", c.t_max);
  return c;
}

Json MarkovConfig::to_json() const {
  return Json{{"theta", theta}, {"p-left", p_left}, {"e0", e0}, {"epsilon", epsilons},
              {"t-max", t_max}};
}

void MarkovConfig::validate() const {
  as_config_error([&] {
    validate_theta(theta);
    validate_energy_scale(e0);
  });
  if (!(p_left >= 0.0 && p_left <= 1.0)) {
    throw ConfigError("p-left must lie in [0, 1], got " + format_number(p_left));
  }
  check_epsilons(epsilons);
  check_t_max(t_max, 0);
}

Dataset run_markov(const MarkovConfig& cfg) {
  cfg.validate();
  Dataset ds;
  ds.command = "markov";
  ds.config = cfg.to_json();
  ds.columns = {"t", "P_mL", "P_mR", "beta_m"};

  const MarkovState initial{cfg.p_left, 1.0 - cfg.p_left, 0};
  for (std::int64_t t = 0; t <= cfg.t_max; ++t) {
    const MarkovState s = markov_solution(initial, cfg.theta, t);
    double beta = 0.0;
    try {
      beta = markov_beta(initial, cfg.theta, t, cfg.e0);
    } catch (const InfiniteBetaError&) {
      const double x = std::pow(std::cos(2 * cfg.theta), static_cast<double>(t)) *
                       (initial.p_left - initial.p_right);
      beta = std::copysign(std::numeric_limits<double>::infinity(), x);
    }
    ds.rows.push_back({t, s.p_left, s.p_right, beta});
  }

  for (double eps : cfg.epsilons) {
    const std::string tag = "epsilon=" + format_number(eps) + ": ";
    try {
      const auto r = markov_thermalization_time(initial, cfg.theta, eps, cfg.e0);
      ds.summary.push_back(tag + "thermalized at t=" + std::to_string(r.empirical) +
                           " (formula " + format_number(r.formula) + ")");
    } catch (const NonThermalizingError&) {
      if (cfg.theta == 0.0) {
        ds.summary.push_back(tag + "non-thermalizing (constant)");
      } else if (std::cos(2 * cfg.theta) <= -1.0) {
        ds.summary.push_back(tag + "non-thermalizing (flip-flop)");
      } else {
        ds.summary.push_back(tag + "not thermalized within the scan horizon");
      }
    } catch (const DomainError&) {
      ds.summary.push_back(tag + "already at equilibrium (P_mL(0) = P_mR(0))");
    }
  }
  return ds;
}

}  // namespace qwalk
