// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/thermo.hpp"
#include "qwalk/times.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

const double kThetas[] = {kPi / 6, kPi / 4, kPi / 3, 1.3};

std::vector<WalkParams> bloch_sample(std::mt19937_64& rng, std::int64_t n, double theta, int count) {
  std::uniform_real_distribution<double> u(0.0, 1.0), ph(0.0, 2 * kPi);
  std::vector<WalkParams> out;
  for (int i = 0; i < count; ++i) {
    // Uniform on the sphere: cos(gamma) uniform in [-1, 1].
    out.push_back({n, theta, std::acos(1 - 2 * u(rng)), ph(rng), 1.0});
  }
  return out;
}

double state_diff(const WalkState& a, const WalkState& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.left().size(); ++k) {
    d = std::max({d, std::abs(a.left()[k] - b.left()[k]), std::abs(a.right()[k] - b.right()[k])});
  }
  return d;
}

double density_diff(const CoinDensity& a, const CoinDensity& b) {
  return std::max({std::abs(a.p_left - b.p_left), std::abs(a.p_right - b.p_right),
                   std::abs(a.q - b.q)});
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome spectral_equivalence() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (std::int64_t n = 3; n <= 16; ++n) {
    for (double theta : kThetas) {
      for (const auto& p : bloch_sample(rng, n, theta, 20)) {
        WalkState s = localized_initial_state(p);
        const auto d = decompose(s, theta);
        for (std::int64_t t = 0; t <= 500; ++t) {
          worst = std::max(worst, state_diff(amplitudes_at(d, t), s));
          s = step(s, theta);
        }
      }
    }
  }
  return {worst < 1e-10, "max deviation " + fmt("%.2e", worst)};
}

Outcome closed_average() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (std::int64_t n = 3; n <= 16; ++n) {
    for (double theta : kThetas) {
      for (const auto& p : bloch_sample(rng, n, theta, 20)) {
        const WalkState s0 = localized_initial_state(p);
        const auto d = decompose(s0, theta);
        for (std::int64_t t = 1; t <= 200; ++t) {
          worst = std::max(worst, density_diff(averaged_density_closed(d, t),
                                               averaged_density_numeric(s0, theta, t)));
        }
      }
    }
  }
  return {worst < 1e-10, "max deviation " + fmt("%.2e", worst)};
}

Outcome f_values() {
  const double e3 = std::max(std::abs(f_sum(3, kPi / 4) - 1.4), std::abs(f_hadamard_closed(3) - 1.4));
  const double e4 = std::max(std::abs(f_sum(4, kPi / 4) - 1.5), std::abs(f_hadamard_closed(4) - 1.5));
  const double einf = std::abs(f_sum(10000, kPi / 4) - std::sqrt(2.0));
  return {e3 < 1e-12 && e4 < 1e-12 && einf < 1e-6,
          "f(3) err " + fmt("%.1e", e3) + ", f(4) err " + fmt("%.1e", e4) + ", f(1e4)-sqrt2 " +
              fmt("%.1e", einf)};
}

Outcome localized_asymptotics() {
  double worst = 0.0;
  for (std::int64_t n : {3, 5, 8, 100}) {
    for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 5; ++j) {
          const WalkParams p{n, theta, kPi * (i + 0.5) / 4, 2 * kPi * j / 5, 1.0};
          const CoinDensity spectral = asymptotic_density(decompose(localized_initial_state(p), theta));
          worst = std::max(worst, density_diff(spectral, asymptotic_density_localized(p)));
        }
      }
    }
  }
  return {worst < 1e-10, "max deviation " + fmt("%.2e", worst)};
}

Outcome characteristic_values() {
  const double chi_exact = (3 - 2 * std::sqrt(2.0)) / 4;
  const double t_exact = 2 / std::log((1 + 2 * std::sqrt(chi_exact)) / (1 - 2 * std::sqrt(chi_exact)));
  double chi_err = 0.0, t_err = 0.0;
  for (std::int64_t n : {100, 101, 400, 1000}) {
    for (double e0 : {1.0, 1.7}) {
      const WalkParams p{n, kPi / 4, kPi, 0.0, e0};
      const double chi = chi_of_density(asymptotic_density(decompose(localized_initial_state(p), p.theta)));
      chi_err = std::max(chi_err, std::abs(chi - chi_exact));
      t_err = std::max(t_err, std::abs(temperature_from_chi(chi, e0) / e0 - t_exact));
      t_err = std::max(t_err, std::abs(characteristic_temperature(n, p.theta, e0) / e0 - t_exact));
    }
  }
  return {chi_err < 1e-6 && t_err < 1e-4,
          "chi0 err " + fmt("%.1e", chi_err) + ", T0/E0 = " + fmt("%.6f", t_exact) + " err " +
              fmt("%.1e", t_err)};
}

// Bloch angles at N=3, theta=pi/4, phi=0 whose asymptotic T/T0 are 0.8, 1, 1.1.
Outcome transient_temperature_check() {
  const double t0 = characteristic_temperature(3, kPi / 4, 1.0);
  std::string detail;
  bool ok = true;
  for (double gamma : {1.33228, kPi, 1.64878}) {
    const WalkParams p{3, kPi / 4, gamma, 0.0, 1.0};
    const double target = temperature_from_chi(chi_isotherm(p), 1.0) / t0;
    AveragedDensitySeries series(decompose(localized_initial_state(p), p.theta));
    double worst = 0.0;
    for (std::int64_t t = 1; t <= 2000; ++t) {
      const ThermoState st = transient_temperature(series.next(), 1.0);
      if (t >= 200) worst = std::max(worst, std::abs(st.temperature / t0 - target) / target);
    }
    ok = ok && worst < 0.02;
    detail += fmt("T/T0 -> %.3f", target) + fmt(" (dev %.2e) ", worst);
  }
  return {ok, detail + "for t in [200, 2000]"};
}

Outcome mixing_scaling() {
  const double eps[] = {1e-2, 1e-3, 1e-4};
  std::vector<ConvergenceScan> scans;
  std::vector<double> c_eps;
  for (std::int64_t n : {50, 100, 200}) {
    scans.push_back(scan_convergence({n, kPi / 4, kPi / 3, kPi / 6, 1.0}, eps, {}, 400000));
  }
  bool ok = true;
  for (const auto& s : scans)
    for (const auto& r : s.mixing) ok = ok && r.satisfied;

  const auto& n100 = scans[1].mixing;
  const double ratio = double(n100[1].tau) / double(n100[0].tau);
  const bool a = ratio >= 5 && ratio <= 20;
  const double plateau = std::abs(double(scans[2].mixing[0].tau - scans[0].mixing[0].tau)) /
                         double(scans[0].mixing[0].tau);
  const bool b = plateau < 0.1;

  bool c = true;
  std::int64_t worst_gap = 0;
  std::size_t idx = 0;
  for (std::int64_t n : {50, 100, 200}) {
    const auto& scan = scans[idx++];
    std::vector<double> th;
    for (double e : eps) th.push_back(scan.c_constant * e);
    const auto thermal = scan_convergence({n, kPi / 4, kPi / 3, kPi / 6, 1.0}, {}, th, 400000);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::int64_t gap = std::abs(scan.mixing[i].tau - thermal.thermalization[i].tau);
      worst_gap = std::max(worst_gap, gap);
      c = c && double(gap) <= std::max(3.0, 0.05 * double(scan.mixing[i].tau));
    }
  }
  return {ok && a && b && c,
          fmt("(a) tau ratio %.2f", ratio) + fmt(", (b) plateau at eps=1e-2 %.3f", plateau) +
              ", (c) max |tau - tau~(c eps)| = " + std::to_string(worst_gap) + " steps"};
}

Outcome linearization() {
  const WalkParams p{100, kPi / 4, kPi / 3, kPi / 6, 1.0};
  const auto dev = deviation_series(p, 100000);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 999; i < dev.beta.size(); ++i) {
    const double x = p.energy_scale / dev.c_constant * dev.beta[i];
    sxx += x * x;
    sxy += x * dev.lambda_plus[i];
  }
  const double slope = sxy / sxx;
  return {std::abs(slope - 1) < 0.05, fmt("slope %.5f", slope) + fmt(", c = %.4f", dev.c_constant)};
}

Outcome markov_suite() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0), th(0.0, kPi / 2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double pl = u(rng), theta = th(rng);
    MarkovState it{pl, 1 - pl, 0};
    for (std::int64_t t = 1; t <= 1000; ++t) {
      it = markov_step(it, theta);
      const MarkovState cl = markov_solution({pl, 1 - pl, 0}, theta, t);
      worst = std::max({worst, std::abs(it.p_left - cl.p_left), std::abs(it.p_right - cl.p_right)});
    }
  }
  const MarkovState h = markov_step({1.0, 0.0, 0}, kPi / 4);
  const bool hadamard = std::abs(h.p_left - 0.5) < 1e-15 &&
                        markov_thermalization_time({1.0, 0.0, 0}, kPi / 4, 1e-6).empirical == 1;
  bool flagged = false;
  try {
    markov_thermalization_time({1.0, 0.0, 0}, kPi / 2, 1e-3);
  } catch (const NonThermalizingError&) {
    flagged = true;
  }
  double worst_gap = 0.0;
  for (double theta : {0.1, 0.3, kPi / 3, 1.0, 1.4}) {
    for (double eps : {1e-3, 1e-4, 1e-6, 1e-9}) {
      for (double pl : {1.0, 0.8, 0.1}) {
        const auto r = markov_thermalization_time({pl, 1 - pl, 0}, theta, eps, 1.0, 100000000);
        worst_gap = std::max(worst_gap, std::abs(double(r.empirical) - r.formula));
      }
    }
  }
  return {worst < 1e-14 && hadamard && flagged && worst_gap <= 1.0,
          "closed vs iterated " + fmt("%.1e", worst) + ", max |formula - scan| " +
              fmt("%.3f", worst_gap) + " steps"};
}

Outcome antipodal_symmetry() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ga(0.0, kPi), ph(0.0, 2 * kPi), th(0.05, kPi / 2 - 0.05);
  std::uniform_int_distribution<std::int64_t> nn(3, 40);
  double worst_beta = 0.0, worst_t = 0.0;
  for (int i = 0; i < 100; ++i) {
    const WalkParams p{nn(rng), th(rng), ga(rng), ph(rng), 1.0};
    WalkParams q = p;
    q.gamma = kPi - p.gamma;
    q.phi = wrap_phase(p.phi + kPi);
    const ThermoState a = transient_temperature(asymptotic_density_localized(p), 1.0);
    const ThermoState b = transient_temperature(asymptotic_density_localized(q), 1.0);
    worst_beta = std::max(worst_beta, std::abs(a.beta - b.beta));
    worst_t = std::max(worst_t, std::abs(a.temperature - b.temperature) / a.temperature);
  }
  return {worst_beta < 1e-12 && worst_t < 1e-12,
          "max |d beta| " + fmt("%.1e", worst_beta) + ", max rel dT " + fmt("%.1e", worst_t)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"spectral solution equals direct iteration", 30, spectral_equivalence},
      {"closed-form time average equals numeric average", 30, closed_average},
      {"f(N, pi/4) sum, closed form and large-N limit", 1, f_values},
      {"localized asymptotic density equals spectral limit", 10, localized_asymptotics},
      {"chi_0 and T_0 for theta = pi/4, N >= 100", 10, characteristic_values},
      {"transient temperature settles within 2% by t = 200", 10, transient_temperature_check},
      {"mixing time scaling, plateau and thermalization relation", 120, mixing_scaling},
      {"Lambda+/beta linearization slope", 60, linearization},
      {"Markov chain suite", 5, markov_suite},
      {"antipodal symmetry of the asymptotic temperature", 10, antipodal_symmetry},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool pass = out.passed && in_time;
    if (!pass) ++failures;
    std::printf("%s  %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.name.c_str(),
                out.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", too slow");
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures;
}
