// qwalk: command-line driver for coined quantum walks on N-cycles.
//
//   qwalk simulate     --n 3 --theta pi/4 --gamma 1.33 --phi 0 --t-max 1000
//   qwalk isotherms    --n 100 --theta pi/4 --grid 181
//   qwalk mixing-sweep --n-range 10:200:10 --epsilon 1e-2 --epsilon 1e-3
//   qwalk markov       --theta pi/3 --p-left 1 --epsilon 1e-4
//   qwalk selftest     --seed 7
//
// Exit codes: 0 success, 1 validation error, 2 unsatisfied convergence horizon.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/simd/kernels.hpp"
#include "qwalk/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitHorizon = 2;

struct Flags {
  std::optional<std::int64_t> n;
  std::optional<std::string> n_range;
  std::optional<std::string> theta, gamma, phi;
  std::vector<double> epsilon;
  std::optional<std::int64_t> t_max;
  std::optional<double> e0;
  std::optional<std::int64_t> grid;
  std::optional<double> p_left;
  std::optional<std::string> convention;
  std::uint64_t seed = 12345;
  std::string format = "csv";
  std::string out;
  std::string config_path;
};

qwalk::Json load_config(const std::string& path) {
  if (path.empty()) return qwalk::Json::object();
  std::ifstream in(path);
  if (!in) throw qwalk::ConfigError("cannot open config file '" + path + "'");
  try {
    return qwalk::Json::parse(in);
  } catch (const qwalk::Json::parse_error& e) {
    throw qwalk::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

// Config-file values first, explicitly given flags on top.
qwalk::Json merged_config(const Flags& f) {
  qwalk::Json j = load_config(f.config_path);
  if (!j.is_object()) throw qwalk::ConfigError("config file must hold a JSON object");
  if (f.n) j["n"] = *f.n;
  if (f.n_range) j["n-range"] = *f.n_range;
  if (f.theta) j["theta"] = *f.theta;
  if (f.gamma) j["gamma"] = *f.gamma;
  if (f.phi) j["phi"] = *f.phi;
  if (!f.epsilon.empty()) j["epsilon"] = f.epsilon;
  if (f.t_max) j["t-max"] = *f.t_max;
  if (f.e0) j["e0"] = *f.e0;
  if (f.grid) j["grid"] = *f.grid;
  if (f.p_left) j["p-left"] = *f.p_left;
  if (f.convention) j["temperature-convention"] = *f.convention;
  if (j.contains("n") && j.contains("n-range") && f.n_range && !f.n) j.erase("n");
  if (j.contains("n") && j.contains("n-range") && f.n && !f.n_range) j.erase("n-range");
  return j;
}

int emit(const qwalk::Dataset& ds, const Flags& f) {
  const std::string text = f.format == "json" ? qwalk::to_json(ds) : qwalk::to_csv(ds);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw qwalk::ConfigError("cannot write output file '" + f.out + "'");
    os << text;
  }
  for (const auto& line : ds.summary) std::cerr << ds.command << ": " << line << "\n";
  return ds.exit_code == 2 ? kExitHorizon : kExitOk;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--e0", f.e0, "Energy scale E0 (default 1.0)");
}

void add_angles(CLI::App* cmd, Flags& f, bool with_bloch) {
  cmd->add_option("--theta", f.theta, "Coin bias in radians or as pi/4, 3pi/8, ...");
  if (with_bloch) {
    cmd->add_option("--gamma", f.gamma, "Initial Bloch polar angle in [0, pi]");
    cmd->add_option("--phi", f.phi, "Initial Bloch azimuth");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coined quantum walks on N-cycles: entanglement temperature and mixing times"};
  app.set_version_flag("--version", std::string(qwalk::kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "Direct time evolution with coin observables per step");
  sim->add_option("--n", f.n, "Cycle size N >= 3");
  add_angles(sim, f, true);
  sim->add_option("--t-max", f.t_max, "Last time step (rows = t-max + 1)");
  sim->add_option("--temperature-convention", f.convention, "canonical | literal")
      ->check(CLI::IsMember({"canonical", "literal"}));
  add_common(sim, f);

  auto* iso = app.add_subcommand("isotherms", "Asymptotic T/T0 over the (gamma, phi) grid");
  iso->add_option("--n", f.n, "Cycle size N >= 3");
  add_angles(iso, f, false);
  iso->add_option("--grid", f.grid, "Grid points per axis (default 181)");
  add_common(iso, f);

  auto* mix = app.add_subcommand("mixing-sweep", "Mixing and thermalization times versus N");
  mix->add_option("--n", f.n, "Single cycle size");
  mix->add_option("--n-range", f.n_range, "Cycle sizes a:b or a:b:step");
  add_angles(mix, f, true);
  mix->add_option("--epsilon", f.epsilon, "Threshold (repeatable)")->take_all();
  mix->add_option("--t-max", f.t_max, "Scan horizon (default 1e6)");
  add_common(mix, f);

  auto* mkv = app.add_subcommand("markov", "Classical chirality chain and its thermalization");
  add_angles(mkv, f, false);
  mkv->add_option("--p-left", f.p_left, "Initial left probability P_mL(0) (default 1)");
  mkv->add_option("--epsilon", f.epsilon, "Threshold (repeatable)")->take_all();
  mkv->add_option("--t-max", f.t_max, "Last time step (default 100)");
  add_common(mkv, f);

  auto* self = app.add_subcommand("selftest", "Randomized oracle-equivalence checks");
  self->add_option("--seed", f.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (self->parsed()) {
      std::cout << "qwalk " << qwalk::kVersion << " selftest, seed " << f.seed << ", kernels "
                << qwalk::simd::active().name << "\n";
      bool ok = true;
      for (const auto& c : qwalk::run_selftest(f.seed)) {
        std::printf("%s  %-48s max error %.3e (tolerance %.0e)\n", c.passed ? "PASS" : "FAIL",
                    c.name.c_str(), c.max_error, c.tolerance);
        ok = ok && c.passed;
      }
      return ok ? kExitOk : kExitValidation;
    }
    const qwalk::Json cfg = merged_config(f);
    if (sim->parsed()) return emit(qwalk::run_simulate(qwalk::SimulateConfig::from_json(cfg)), f);
    if (iso->parsed()) return emit(qwalk::run_isotherms(qwalk::IsothermConfig::from_json(cfg)), f);
    if (mix->parsed()) {
      return emit(qwalk::run_mixing_sweep(qwalk::MixingSweepConfig::from_json(cfg)), f);
    }
    if (mkv->parsed()) return emit(qwalk::run_markov(qwalk::MarkovConfig::from_json(cfg)), f);
  } catch (const qwalk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qwalk::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qwalk::DegenerateSpectrumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qwalk::Json::exception& e) {
    std::cerr << "error: bad configuration value: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
