#pragma once

// Drivers behind the CLI subcommands. Each command has a config struct that
// is filled from a JSON object (config file merged with command-line flags),
// validated, echoed back into the dataset header, and run.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/dataset.hpp"
#include "qwalk/params.hpp"
#include "qwalk/thermo.hpp"

namespace qwalk {

/// Bad or inconsistent configuration. The CLI maps this to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parses "0.785", "pi", "pi/4", "3pi/4", "2*pi/3", "-pi/2".
double parse_angle(const std::string& text);

/// Parses "a:b" or "a:b:step" (inclusive) into a list of cycle sizes.
std::vector<std::int64_t> parse_n_range(const std::string& text);

/// Isotherm levels (T/T_0) drawn in the reference contour plot.
inline constexpr std::array<double, 12> kIsothermLevels = {
    0.66, 0.68, 0.7, 0.8, 0.9, 1.0, 1.06, 1.3, 1.6, 2.2, 3.2, 6.5};

/// Largest level <= ratio, or 0 below the lowest level.
double isotherm_band(double ratio);

struct SimulateConfig {
  std::int64_t n = 3;
  double theta = kPi / 4;
  double gamma = 0.0;
  double phi = 0.0;
  double e0 = 1.0;
  std::int64_t t_max = 1000;
  TemperatureConvention convention = TemperatureConvention::kCanonical;

  static SimulateConfig from_json(const Json& j);
  Json to_json() const;
  void validate() const;
};

struct IsothermConfig {
  std::int64_t n = 3;
  double theta = kPi / 4;
  double e0 = 1.0;
  std::int64_t grid = 181;

  static IsothermConfig from_json(const Json& j);
  Json to_json() const;
  void validate() const;
};

struct MixingSweepConfig {
  std::vector<std::int64_t> n_values = {10, 20, 50, 100, 200};
  double theta = kPi / 4;
  double gamma = kPi / 3;
  double phi = kPi / 6;
  double e0 = 1.0;
  std::vector<double> epsilons = {1e-2, 1e-3, 1e-4};
  std::int64_t t_max = kDefaultMaxSteps;

  static MixingSweepConfig from_json(const Json& j);
  Json to_json() const;
  void validate() const;
};

struct MarkovConfig {
  double theta = kPi / 3;
  double p_left = 1.0;
  double e0 = 1.0;
  std::vector<double> epsilons = {1e-4};
  std::int64_t t_max = 100;

  static MarkovConfig from_json(const Json& j);
  Json to_json() const;
  void validate() const;
};

/// Rows t, P_L, P_R, Re Q, Im Q, S, Lambda+ of the average over steps 0..t,
/// and T/T_0 from that average. t_max + 1 rows.
Dataset run_simulate(const SimulateConfig& cfg);

/// grid x grid rows over gamma in [0, pi], phi in [-pi/2, pi/2]:
/// gamma, phi, chi, T/T_0, and the contour level band.
Dataset run_isotherms(const IsothermConfig& cfg);

/// One row per (N, epsilon): mixing time, thermalization time, c, and the
/// thermalization time at threshold c * epsilon. exit_code is 2 when any
/// scan ends unsatisfied at t_max.
Dataset run_mixing_sweep(const MixingSweepConfig& cfg);

/// Rows t, P_mL, P_mR, beta_m for t = 0..t_max, summary of the
/// thermalization time per epsilon.
Dataset run_markov(const MarkovConfig& cfg);

struct SelftestCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Randomized oracle-equivalence checks (spectral vs direct, closed vs
/// numeric averages, closed localized limit vs spectral limit, SIMD vs
/// scalar kernels, Markov closed form vs iteration).
std::vector<SelftestCheck> run_selftest(std::uint64_t seed);

}  // namespace qwalk
